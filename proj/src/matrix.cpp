#include "fuzzyfuse/matrix.hpp"

#include "fuzzyfuse/error.hpp"

#include <string>

namespace fuzzyfuse {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) {
      throw Error(ErrorCode::ShapeMismatch, "row " + std::to_string(r) + " has " +
                                                std::to_string(rows[r].size()) + " entries, expected " +
                                                std::to_string(m.cols_));
    }
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

}  // namespace fuzzyfuse
