#include "fuzzyfuse/io.hpp"

#include "fuzzyfuse/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace fuzzyfuse {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_cell(std::string_view cell) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || end != cell.data() + cell.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string where(std::string_view source, std::size_t line, std::size_t column = 0) {
  std::string s(source);
  s += ": line " + std::to_string(line);
  if (column) s += ", column " + std::to_string(column);
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

Matrix parse_matrix(std::string_view text, std::string_view source) {
  std::vector<double> cells;
  std::size_t cols = 0;
  std::size_t rows = 0;
  bool first_content_line = true;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (trim(line).empty()) continue;

    const auto fields = split(line);
    std::vector<double> parsed;
    parsed.reserve(fields.size());
    std::optional<std::size_t> bad_column;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_cell(fields[c]);
      if (!v) {
        bad_column = c + 1;
        break;
      }
      parsed.push_back(*v);
    }

    const bool header_candidate = first_content_line;
    first_content_line = false;
    if (bad_column) {
      if (header_candidate) continue;
      throw Error(ErrorCode::NonNumericCell,
                  where(source, line_no, *bad_column) + ": '" +
                      std::string(trim(fields[*bad_column - 1])) + "' is not a finite number");
    }
    if (rows == 0) {
      cols = parsed.size();
    } else if (parsed.size() != cols) {
      throw Error(ErrorCode::RaggedRows, where(source, line_no) + ": " +
                                             std::to_string(parsed.size()) + " cells, expected " +
                                             std::to_string(cols));
    }
    cells.insert(cells.end(), parsed.begin(), parsed.end());
    ++rows;
  }
  if (rows == 0) throw Error(ErrorCode::EmptyFile, std::string(source) + ": no numeric rows");

  Matrix m(rows, cols);
  std::copy(cells.begin(), cells.end(), m.data().begin());
  return m;
}

Matrix load_matrix(const std::filesystem::path& path) {
  return parse_matrix(read_file(path), path.string());
}

LinearHead load_head(const std::filesystem::path& path) {
  const Matrix raw = load_matrix(path);
  if (raw.rows() < 2) {
    throw Error(ErrorCode::TooFewRows, path.string() + ": head needs at least one weight row and a bias row, got " +
                                           std::to_string(raw.rows()) + " row(s)");
  }
  Matrix weights(raw.rows() - 1, raw.cols());
  for (std::size_t r = 0; r + 1 < raw.rows(); ++r) {
    for (std::size_t c = 0; c < raw.cols(); ++c) weights(r, c) = raw(r, c);
  }
  const auto last = raw.row(raw.rows() - 1);
  try {
    return LinearHead(std::move(weights), std::vector<double>(last.begin(), last.end()));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<std::size_t> load_labels(const std::filesystem::path& path) {
  const Matrix raw = load_matrix(path);
  if (raw.cols() != 1) {
    throw Error(ErrorCode::RaggedRows, path.string() + ": labels must be a single column, got " +
                                           std::to_string(raw.cols()));
  }
  std::vector<std::size_t> labels(raw.rows());
  for (std::size_t r = 0; r < raw.rows(); ++r) {
    const double v = raw(r, 0);
    if (v < 0.0 || v != std::floor(v) || v > 1e15) {
      throw Error(ErrorCode::NonNumericCell, path.string() + ": data row " + std::to_string(r + 1) +
                                                 " is not a non-negative integer label");
    }
    labels[r] = static_cast<std::size_t>(v);
  }
  return labels;
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

std::string format_significant(double value, int digits) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%#.*g", digits, value);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

std::string format_matrix(const Matrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_number(m(r, c));
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::FileNotFound, path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw Error(ErrorCode::FileNotFound, path.string() + ": write failed");
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  write_text(path, format_matrix(m));
}

}  // namespace fuzzyfuse
