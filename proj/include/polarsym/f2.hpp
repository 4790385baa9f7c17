#pragma once
// Small dense linear algebra over F2 with 64-bit packed rows.

#include <cstdint>
#include <vector>

namespace polarsym::f2 {

// Row-major binary matrix; each row packed into ceil(cols/64) words.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool v);
  void xor_rows(std::size_t dst, std::size_t src);

  // Reduces in place to row echelon form; returns the rank.
  std::size_t echelonize();

 private:
  std::size_t rows_, cols_, words_;
  std::vector<std::uint64_t> data_;

  friend class RowSpace;
};

// Row space of a matrix, for repeated membership queries.
class RowSpace {
 public:
  explicit RowSpace(Matrix m);

  std::size_t rank() const { return pivots_.size(); }
  bool contains(const std::vector<std::uint8_t>& word) const;

 private:
  Matrix m_;
  std::vector<std::size_t> pivots_;  // pivot column of each echelon row
};

// True if the n x n matrix given as column bitmasks (bit r of cols[c] is
// the entry at row r, column c) is invertible; n <= 32.
bool invertible(const std::vector<std::uint32_t>& cols, int n);

}  // namespace polarsym::f2
