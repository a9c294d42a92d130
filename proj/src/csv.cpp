#include "qtrap/csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qtrap::csv {

std::string format(double v) {
    if (std::isnan(v)) return {};
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format(std::optional<double> v) { return v ? format(*v) : std::string{}; }

std::string format(bool v) { return v ? "1" : "0"; }

std::string format(std::size_t v) { return std::to_string(v); }

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {}

Table& Table::row() {
    rows_.emplace_back();
    rows_.back().reserve(header_.size());
    return *this;
}

Table& Table::add(std::string cell) {
    if (rows_.empty()) throw std::logic_error("csv: add() before row()");
    rows_.back().push_back(std::move(cell));
    return *this;
}

void Table::write(std::ostream& out) const {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    line(header_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].size() != header_.size())
            throw std::logic_error("csv: row " + std::to_string(r) + " has " +
                                   std::to_string(rows_[r].size()) + " cells, header has " +
                                   std::to_string(header_.size()));
        line(rows_[r]);
    }
}

std::string Table::str() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

std::vector<std::vector<std::string>> parse(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        std::vector<std::string> cells;
        std::size_t c = 0;
        while (true) {
            const std::size_t comma = line.find(',', c);
            cells.emplace_back(line.substr(c, comma == std::string_view::npos ? line.size() - c : comma - c));
            if (comma == std::string_view::npos) break;
            c = comma + 1;
        }
        rows.push_back(std::move(cells));
        pos = end + 1;
    }
    return rows;
}

} // namespace qtrap::csv
