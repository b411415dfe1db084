#pragma once

#include <map>
#include <vector>

#include "opforge/errors.hpp"
#include "opforge/rational.hpp"

namespace opforge {

/// Sparse matrix with exact rational entries. Row-major sparse storage.
/// Rank and solving use fraction-free (Bareiss-style) elimination after
/// clearing row denominators, so every pivot decision is exact.
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational at(int r, int c) const {
    auto it = data_[r].find(c);
    return it == data_[r].end() ? Rational() : it->second;
  }
  void set(int r, int c, const Rational& v) {
    if (v.is_zero())
      data_[r].erase(c);
    else
      data_[r][c] = v;
  }
  void add(int r, int c, const Rational& v) {
    if (v.is_zero()) return;
    auto it = data_[r].find(c);
    if (it == data_[r].end()) {
      data_[r][c] = v;
    } else {
      it->second += v;
      if (it->second.is_zero()) data_[r].erase(it);
    }
  }
  const std::map<int, Rational>& row(int r) const { return data_[r]; }
  size_t nnz() const {
    size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }
  bool is_zero() const { return nnz() == 0; }

  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix transposed() const;

  long rank() const;
  mpz_class det() const;  // square only
  ExactMatrix inverted() const;

  // One solution x of A x = b, if any; empty optional-like flag otherwise.
  bool solve(const std::vector<Rational>& b, std::vector<Rational>& x) const;

  // Basis of the right kernel, one column vector per element.
  std::vector<std::vector<Rational>> kernel_basis() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::map<int, Rational>> data_;
};

}  // namespace opforge
