#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qtrap::csv {

/// Shortest decimal that round-trips to the same double; empty for NaN.
std::string format(double v);
std::string format(std::optional<double> v);
std::string format(bool v);
std::string format(std::size_t v);

/// Header plus rows, written with ',' separators and '\n' line endings.
class Table {
public:
    explicit Table(std::vector<std::string> header);

    /// Starts a new row; cells are appended with add().
    Table& row();
    Table& add(std::string cell);
    template <class T>
    Table& add(const T& v) { return add(format(v)); }

    const std::vector<std::string>& header() const { return header_; }
    std::size_t size() const { return rows_.size(); }

    /// Throws std::logic_error if a row's width differs from the header.
    void write(std::ostream& out) const;
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Splits CSV text into rows of fields (no quoting); used by tests and tools.
std::vector<std::vector<std::string>> parse(std::string_view text);

} // namespace qtrap::csv
