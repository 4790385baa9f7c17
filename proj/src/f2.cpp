#include "polarsym/f2.hpp"

#include <stdexcept>

namespace polarsym::f2 {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

bool Matrix::get(std::size_t r, std::size_t c) const {
  return (data_[r * words_ + c / 64] >> (c % 64)) & 1u;
}

void Matrix::set(std::size_t r, std::size_t c, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (c % 64);
  if (v) {
    data_[r * words_ + c / 64] |= mask;
  } else {
    data_[r * words_ + c / 64] &= ~mask;
  }
}

void Matrix::xor_rows(std::size_t dst, std::size_t src) {
  for (std::size_t w = 0; w < words_; ++w) {
    data_[dst * words_ + w] ^= data_[src * words_ + w];
  }
}

std::size_t Matrix::echelonize() {
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols_ && pivot_row < rows_; ++c) {
    std::size_t r = pivot_row;
    while (r < rows_ && !get(r, c)) ++r;
    if (r == rows_) continue;
    if (r != pivot_row) {
      for (std::size_t w = 0; w < words_; ++w) {
        std::swap(data_[r * words_ + w], data_[pivot_row * words_ + w]);
      }
    }
    for (std::size_t k = 0; k < rows_; ++k) {
      if (k != pivot_row && get(k, c)) xor_rows(k, pivot_row);
    }
    ++pivot_row;
  }
  return pivot_row;
}

RowSpace::RowSpace(Matrix m) : m_(std::move(m)) {
  const std::size_t rank = m_.echelonize();
  pivots_.reserve(rank);
  for (std::size_t r = 0; r < rank; ++r) {
    std::size_t c = 0;
    while (c < m_.cols() && !m_.get(r, c)) ++c;
    pivots_.push_back(c);
  }
}

bool RowSpace::contains(const std::vector<std::uint8_t>& word) const {
  if (word.size() != m_.cols()) throw std::invalid_argument("RowSpace: word length mismatch");
  std::vector<std::uint64_t> residue(m_.words_, 0);
  for (std::size_t c = 0; c < word.size(); ++c) {
    if (word[c]) residue[c / 64] ^= std::uint64_t{1} << (c % 64);
  }
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    const std::size_t c = pivots_[r];
    if ((residue[c / 64] >> (c % 64)) & 1u) {
      for (std::size_t w = 0; w < m_.words_; ++w) {
        residue[w] ^= m_.data_[r * m_.words_ + w];
      }
    }
  }
  for (std::uint64_t w : residue) {
    if (w != 0) return false;
  }
  return true;
}

bool invertible(const std::vector<std::uint32_t>& cols, int n) {
  std::vector<std::uint32_t> work = cols;
  std::uint32_t used_rows = 0;
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = 0; r < n; ++r) {
      if (!((used_rows >> r) & 1u) && ((work[static_cast<std::size_t>(c)] >> r) & 1u)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return false;
    used_rows |= 1u << pivot;
    for (int c2 = c + 1; c2 < n; ++c2) {
      if ((work[static_cast<std::size_t>(c2)] >> pivot) & 1u) {
        work[static_cast<std::size_t>(c2)] ^= work[static_cast<std::size_t>(c)];
      }
    }
  }
  return true;
}

}  // namespace polarsym::f2
