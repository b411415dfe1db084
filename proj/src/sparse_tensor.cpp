#include "opforge/sparse_tensor.hpp"

#include <algorithm>

#include "opforge/exact_matrix.hpp"

namespace opforge {

void SparseTensor::check_bounds(const Index& idx) const {
  if (idx.size() != dims_.size()) throw ShapeError("SparseTensor: index rank mismatch");
  for (size_t k = 0; k < idx.size(); ++k)
    if (idx[k] < 1 || idx[k] > dims_[k])
      throw ShapeError("SparseTensor: index out of bounds");
}

void SparseTensor::add(const Index& idx, const Rational& c) {
  if (c.is_zero()) return;
  check_bounds(idx);
  auto it = entries_.find(idx);
  if (it == entries_.end()) {
    entries_.emplace(idx, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

void SparseTensor::set(const Index& idx, const Rational& c) {
  check_bounds(idx);
  if (c.is_zero())
    entries_.erase(idx);
  else
    entries_[idx] = c;
}

SparseTensor& SparseTensor::operator+=(const SparseTensor& o) {
  if (dims_ != o.dims_) throw ShapeError("SparseTensor: shape mismatch in +");
  for (const auto& [idx, c] : o.entries_) add(idx, c);
  return *this;
}

SparseTensor& SparseTensor::operator-=(const SparseTensor& o) {
  if (dims_ != o.dims_) throw ShapeError("SparseTensor: shape mismatch in -");
  for (const auto& [idx, c] : o.entries_) add(idx, -c);
  return *this;
}

SparseTensor& SparseTensor::operator*=(const Rational& c) {
  if (c.is_zero()) {
    entries_.clear();
    return *this;
  }
  for (auto& [idx, v] : entries_) v *= c;
  return *this;
}

SparseTensor SparseTensor::tensor(const SparseTensor& o) const {
  std::vector<int> dims = dims_;
  dims.insert(dims.end(), o.dims_.begin(), o.dims_.end());
  SparseTensor out(dims);
  for (const auto& [ia, ca] : entries_)
    for (const auto& [ib, cb] : o.entries_) {
      Index idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add(idx, ca * cb);
    }
  return out;
}

SparseTensor permute_slots(const SparseTensor& t, const Permutation& sigma,
                           const std::vector<int>& parities) {
  int n = t.rank();
  if (sigma.size() != n) throw ArityError("permute_slots: sigma length mismatch");
  if (static_cast<int>(parities.size()) != n)
    throw ArityError("permute_slots: parities length mismatch");

  // Slot j of the result is slot sigma^{-1}(j) of the input; equivalently the
  // content of slot i moves to position sigma(i). Koszul sign: product of
  // (-1)^{p_a p_b} over inversions created by the move.
  int koszul = 0;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (sigma(a) > sigma(b)) koszul += parities[a - 1] * parities[b - 1];
  Rational sign = (koszul % 2 == 0) ? rat(1) : rat(-1);

  std::vector<int> dims(n);
  for (int i = 1; i <= n; ++i) dims[sigma(i) - 1] = t.dims()[i - 1];
  SparseTensor out(dims);
  for (const auto& [idx, c] : t.entries()) {
    Index jdx(n);
    for (int i = 1; i <= n; ++i) jdx[sigma(i) - 1] = idx[i - 1];
    out.add(jdx, sign * c);
  }
  return out;
}

SparseTensor contract_slots(const SparseTensor& t, const BilinearForm& form, int i, int j) {
  int n = t.rank();
  if (i == j || i < 1 || j < 1 || i > n || j > n)
    throw ShapeError("contract_slots: bad slot pair");
  if (t.dims()[i - 1] != form.dim() || t.dims()[j - 1] != form.dim())
    throw ShapeError("contract_slots: slot dimension does not match form");

  std::vector<int> dims;
  for (int k = 1; k <= n; ++k)
    if (k != i && k != j) dims.push_back(t.dims()[k - 1]);
  SparseTensor out(dims);
  for (const auto& [idx, c] : t.entries()) {
    Rational f = form.at(idx[i - 1], idx[j - 1]);
    if (f.is_zero()) continue;
    Index rest;
    rest.reserve(n - 2);
    for (int k = 1; k <= n; ++k)
      if (k != i && k != j) rest.push_back(idx[k - 1]);
    out.add(rest, c * f);
  }
  return out;
}

SparseTensor contract_pair(const SparseTensor& a, int i, const SparseTensor& b, int j) {
  if (a.dims()[i - 1] != b.dims()[j - 1])
    throw ShapeError("contract_pair: slot dimension mismatch");
  std::vector<int> dims;
  for (int k = 1; k <= a.rank(); ++k)
    if (k != i) dims.push_back(a.dims()[k - 1]);
  for (int k = 1; k <= b.rank(); ++k)
    if (k != j) dims.push_back(b.dims()[k - 1]);
  SparseTensor out(dims);
  for (const auto& [ia, ca] : a.entries())
    for (const auto& [ib, cb] : b.entries()) {
      if (ia[i - 1] != ib[j - 1]) continue;
      Index idx;
      idx.reserve(dims.size());
      for (int k = 1; k <= a.rank(); ++k)
        if (k != i) idx.push_back(ia[k - 1]);
      for (int k = 1; k <= b.rank(); ++k)
        if (k != j) idx.push_back(ib[k - 1]);
      out.add(idx, ca * cb);
    }
  return out;
}

SparseTensor symmetrize(const SparseTensor& t, const std::vector<int>& slots,
                        SymmetrizeMode mode) {
  int d = slots.empty() ? 0 : t.dims()[slots[0] - 1];
  for (int s : slots)
    if (t.dims()[s - 1] != d) throw ShapeError("symmetrize: slot dims differ");

  int k = static_cast<int>(slots.size());
  SparseTensor out(t.dims());
  long order = 1;
  for (int i = 2; i <= k; ++i) order *= i;
  Rational norm(1, order);

  Permutation::for_each(k, [&](const Permutation& p) {
    Rational coeff = norm;
    if (mode == SymmetrizeMode::alt && p.sign() < 0) coeff = -coeff;
    for (const auto& [idx, c] : t.entries()) {
      Index jdx = idx;
      for (int a = 1; a <= k; ++a) jdx[slots[p(a) - 1] - 1] = idx[slots[a - 1] - 1];
      out.add(jdx, coeff * c);
    }
  });
  return out;
}

BilinearForm::BilinearForm(SparseTensor matrix, Kind kind)
    : matrix_(std::move(matrix)), kind_(kind) {
  if (matrix_.rank() != 2 || matrix_.dims()[0] != matrix_.dims()[1])
    throw ShapeError("BilinearForm: matrix must have two equal slots");
  dim_ = matrix_.dims()[0];
  for (const auto& [idx, c] : matrix_.entries()) {
    Rational mirror = matrix_.at({idx[1], idx[0]});
    Rational want = (kind_ == Kind::symmetric) ? c : -c;
    if (mirror != want) throw ShapeError("BilinearForm: declared symmetry violated");
  }
  ExactMatrix m(dim_, dim_);
  for (const auto& [idx, c] : matrix_.entries()) m.set(idx[0] - 1, idx[1] - 1, c);
  if (m.rank() != dim_) throw ShapeError("BilinearForm: degenerate form rejected");
}

BilinearForm BilinearForm::from_dense(const std::vector<std::vector<Rational>>& m,
                                      Kind kind) {
  int n = static_cast<int>(m.size());
  SparseTensor t({n, n});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.add({i + 1, j + 1}, m[i][j]);
  return BilinearForm(std::move(t), kind);
}

BilinearForm BilinearForm::inverse() const {
  ExactMatrix m(dim_, dim_);
  for (const auto& [idx, c] : matrix_.entries()) m.set(idx[0] - 1, idx[1] - 1, c);
  ExactMatrix inv = m.inverted();
  SparseTensor t({dim_, dim_});
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) t.add({i + 1, j + 1}, inv.at(i, j));
  return BilinearForm(std::move(t), kind_);
}

BilinearForm BilinearForm::scaled(const Rational& c) const {
  SparseTensor t = matrix_;
  t *= c;
  return BilinearForm(std::move(t), kind_);
}

}  // namespace opforge
