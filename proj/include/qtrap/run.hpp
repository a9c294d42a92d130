#pragma once

#include "qtrap/config.hpp"
#include "qtrap/csv.hpp"

#include <ostream>
#include <string>

namespace qtrap {

/// Reads a 4x4 pair density matrix: four lines of eight numbers, "re im" per entry.
Eigen::Matrix4cd read_pair_matrix(const std::string& path);

/// Builds the output table for the configured command. Throws on failure.
csv::Table execute(const RunConfig& c);

/// Executes and writes the table to c.output ("-" for `out`). Returns the exit status:
/// 0 success, 2 configuration or domain error, 3 numeric error. Diagnostics go to `err`.
int run(const RunConfig& c, std::ostream& out, std::ostream& err);

} // namespace qtrap
