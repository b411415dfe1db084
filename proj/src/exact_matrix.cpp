#include "opforge/exact_matrix.hpp"

#include <algorithm>

namespace opforge {

namespace {

// Dense integer row echelon working set for fraction-free elimination.
// Rows are kept as mpz vectors; the Bareiss division keeps entries small.
struct FractionFreeEliminator {
  int cols;
  std::vector<std::vector<mpz_class>> pivot_rows;  // echelonized
  std::vector<int> pivot_cols;
  std::vector<mpz_class> pivots;  // pivot value of each stored row

  explicit FractionFreeEliminator(int c) : cols(c) {}

  // Reduces `row` against the stored pivots (fraction-free); returns true and
  // stores it if a new pivot emerges.
  bool absorb(std::vector<mpz_class> row) {
    mpz_class prev(1);
    for (size_t k = 0; k < pivot_rows.size(); ++k) {
      const mpz_class& p = pivots[k];
      int pc = pivot_cols[k];
      if (row[pc] == 0) continue;
      mpz_class f = row[pc];
      for (int c = 0; c < cols; ++c) {
        row[c] = p * row[c] - f * pivot_rows[k][c];
      }
    }
    int pc = -1;
    for (int c = 0; c < cols; ++c)
      if (row[c] != 0) {
        pc = c;
        break;
      }
    if (pc < 0) return false;
    // Normalize by gcd to keep growth in check.
    mpz_class g = row[pc];
    for (int c = pc; c < cols; ++c)
      if (row[c] != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), row[c].get_mpz_t());
    if (g != 0)
      for (int c = pc; c < cols; ++c) row[c] /= g;
    if (row[pc] < 0)
      for (int c = pc; c < cols; ++c) row[c] = -row[c];
    pivots.push_back(row[pc]);
    pivot_cols.push_back(pc);
    pivot_rows.push_back(std::move(row));
    return true;
  }
};

std::vector<mpz_class> cleared_row(const std::map<int, Rational>& row, int cols) {
  mpz_class lcm(1);
  for (const auto& [c, v] : row)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.denominator().get_mpz_t());
  std::vector<mpz_class> out(cols, 0);
  for (const auto& [c, v] : row) out[c] = v.numerator() * (lcm / v.denominator());
  return out;
}

}  // namespace

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) throw ShapeError("ExactMatrix: dimension mismatch in *");
  ExactMatrix out(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [k, a] : data_[r])
      for (const auto& [c, b] : o.data_[k]) out.add(r, c, a * b);
  return out;
}

ExactMatrix ExactMatrix::transposed() const {
  ExactMatrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) out.set(c, r, v);
  return out;
}

long ExactMatrix::rank() const {
  FractionFreeEliminator elim(cols_);
  long rank = 0;
  // Sparsest rows first tends to keep the echelon rows small.
  std::vector<int> order(rows_);
  for (int r = 0; r < rows_; ++r) order[r] = r;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (data_[a].size() != data_[b].size()) return data_[a].size() < data_[b].size();
    return a < b;
  });
  for (int r : order) {
    if (data_[r].empty()) continue;
    if (elim.absorb(cleared_row(data_[r], cols_))) ++rank;
    if (rank == std::min(rows_, cols_)) break;
  }
  return rank;
}

mpz_class ExactMatrix::det() const {
  if (rows_ != cols_) throw ShapeError("ExactMatrix: det of non-square");
  // Plain Bareiss on a dense copy (used only for small matrices).
  int n = rows_;
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n, 0));
  for (int r = 0; r < n; ++r)
    for (const auto& [c, v] : data_[r]) a[r][c] = v.raw();
  mpq_class det(1);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int r = k; r < n; ++r)
      if (a[r][k] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (int r = k + 1; r < n; ++r) {
      if (a[r][k] == 0) continue;
      mpq_class f = a[r][k] / a[k][k];
      for (int c = k; c < n; ++c) a[r][c] -= f * a[k][c];
    }
  }
  if (det.get_den() != 1) throw std::logic_error("det: non-integer (unexpected)");
  return det.get_num();
}

ExactMatrix ExactMatrix::inverted() const {
  if (rows_ != cols_) throw ShapeError("ExactMatrix: inverse of non-square");
  int n = rows_;
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n, 0));
  for (int r = 0; r < n; ++r) {
    for (const auto& [c, v] : data_[r]) a[r][c] = v.raw();
    a[r][n + r] = 1;
  }
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int r = k; r < n; ++r)
      if (a[r][k] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw ShapeError("ExactMatrix: singular matrix");
    std::swap(a[piv], a[k]);
    mpq_class p = a[k][k];
    for (int c = 0; c < 2 * n; ++c) a[k][c] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == k || a[r][k] == 0) continue;
      mpq_class f = a[r][k];
      for (int c = 0; c < 2 * n; ++c) a[r][c] -= f * a[k][c];
    }
  }
  ExactMatrix out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (a[r][n + c] != 0) out.set(r, c, Rational(a[r][n + c]));
  return out;
}

bool ExactMatrix::solve(const std::vector<Rational>& b, std::vector<Rational>& x) const {
  if (static_cast<int>(b.size()) != rows_) throw ShapeError("solve: rhs size mismatch");
  // Gauss-Jordan over Q on the augmented system (desk-scale sizes).
  int n = rows_, m = cols_;
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(m + 1, 0));
  for (int r = 0; r < n; ++r) {
    for (const auto& [c, v] : data_[r]) a[r][c] = v.raw();
    a[r][m] = b[r].raw();
  }
  std::vector<int> pivot_col_of_row;
  int prow = 0;
  for (int c = 0; c < m && prow < n; ++c) {
    int piv = -1;
    for (int r = prow; r < n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[prow]);
    mpq_class p = a[prow][c];
    for (int k = c; k <= m; ++k) a[prow][k] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == prow || a[r][c] == 0) continue;
      mpq_class f = a[r][c];
      for (int k = c; k <= m; ++k) a[r][k] -= f * a[prow][k];
    }
    pivot_col_of_row.push_back(c);
    ++prow;
  }
  for (int r = prow; r < n; ++r)
    if (a[r][m] != 0) return false;  // inconsistent
  x.assign(m, Rational());
  for (int r = 0; r < prow; ++r) x[pivot_col_of_row[r]] = Rational(a[r][m]);
  return true;
}

std::vector<std::vector<Rational>> ExactMatrix::kernel_basis() const {
  int n = rows_, m = cols_;
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(m, 0));
  for (int r = 0; r < n; ++r)
    for (const auto& [c, v] : data_[r]) a[r][c] = v.raw();
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(m, false);
  int prow = 0;
  for (int c = 0; c < m && prow < n; ++c) {
    int piv = -1;
    for (int r = prow; r < n; ++r)
      if (a[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[prow]);
    mpq_class p = a[prow][c];
    for (int k = c; k < m; ++k) a[prow][k] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == prow || a[r][c] == 0) continue;
      mpq_class f = a[r][c];
      for (int k = c; k < m; ++k) a[r][k] -= f * a[prow][k];
    }
    pivot_col_of_row.push_back(c);
    is_pivot[c] = true;
    ++prow;
  }
  std::vector<std::vector<Rational>> basis;
  for (int c = 0; c < m; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> v(m);
    v[c] = rat(1);
    for (int r = 0; r < prow; ++r)
      if (a[r][c] != 0) v[pivot_col_of_row[r]] = Rational(mpq_class(-a[r][c]));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace opforge
