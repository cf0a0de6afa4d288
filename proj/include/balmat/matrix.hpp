#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "balmat/errors.hpp"

namespace balmat {

// Dense 0/1 matrix, row-major.
struct Matrix01 {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> a;

  Matrix01() = default;
  Matrix01(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {
    if (r <= 0 || c <= 0) throw invalid_parameter("matrix dimensions must be positive");
  }

  std::uint8_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  std::uint8_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  bool operator==(const Matrix01& o) const = default;

  static Matrix01 from_rows(const std::vector<std::string>& row_strings) {
    if (row_strings.empty()) throw invalid_parameter("matrix needs at least one row");
    Matrix01 m(static_cast<int>(row_strings.size()), static_cast<int>(row_strings[0].size()));
    for (int r = 0; r < m.rows; ++r) {
      if (static_cast<int>(row_strings[r].size()) != m.cols)
        throw invalid_parameter("ragged rows in matrix literal");
      for (int c = 0; c < m.cols; ++c) {
        char ch = row_strings[r][c];
        if (ch != '0' && ch != '1') throw invalid_parameter("matrix entries must be 0 or 1");
        m.at(r, c) = static_cast<std::uint8_t>(ch - '0');
      }
    }
    return m;
  }

  std::vector<std::string> to_rows() const {
    std::vector<std::string> out(rows);
    for (int r = 0; r < rows; ++r) {
      out[r].resize(cols);
      for (int c = 0; c < cols; ++c) out[r][c] = static_cast<char>('0' + at(r, c));
    }
    return out;
  }

  std::string row_word(int r) const {
    std::string w(cols, '0');
    for (int c = 0; c < cols; ++c) w[c] = static_cast<char>('0' + at(r, c));
    return w;
  }

  std::string col_word(int c) const {
    std::string w(rows, '0');
    for (int r = 0; r < rows; ++r) w[r] = static_cast<char>('0' + at(r, c));
    return w;
  }
};

}  // namespace balmat
