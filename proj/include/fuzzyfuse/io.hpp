#pragma once

#include "fuzzyfuse/ensemble.hpp"
#include "fuzzyfuse/matrix.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzyfuse {

/// Parses comma-separated numeric rows. A first line that does not parse as
/// numbers is treated as a header and skipped; blank lines are ignored.
/// Errors name `source` and the 1-based line and column.
Matrix parse_matrix(std::string_view text, std::string_view source);

/// Reads a CSV matrix from disk; see parse_matrix.
Matrix load_matrix(const std::filesystem::path& path);

/// Reads an (M + 1) x C matrix; the last row is the bias.
LinearHead load_head(const std::filesystem::path& path);

/// Reads a single column of non-negative integer class indices.
std::vector<std::size_t> load_labels(const std::filesystem::path& path);

/// Shortest decimal that parses back to exactly `value`.
std::string format_number(double value);

/// `value` with `digits` significant digits, e.g. for printing lambda.
std::string format_significant(double value, int digits);

/// One CSV line per row, cells via format_number.
std::string format_matrix(const Matrix& m);

void write_matrix(const std::filesystem::path& path, const Matrix& m);

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace fuzzyfuse
