#pragma once

#include <map>
#include <vector>

#include "opforge/errors.hpp"
#include "opforge/permutation.hpp"
#include "opforge/rational.hpp"

namespace opforge {

using Index = std::vector<int>;  // 1-based, one entry per slot

/// Sparse multilinear tensor over finite-dimensional slot spaces.
/// No zero entries are ever stored; every stored index is within bounds.
class SparseTensor {
 public:
  SparseTensor() = default;
  explicit SparseTensor(std::vector<int> slot_dims) : dims_(std::move(slot_dims)) {
    for (int d : dims_)
      if (d <= 0) throw ShapeError("SparseTensor: slot dims must be positive");
  }

  int rank() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  const std::map<Index, Rational>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  size_t nnz() const { return entries_.size(); }

  Rational at(const Index& idx) const {
    auto it = entries_.find(idx);
    return it == entries_.end() ? Rational() : it->second;
  }

  void add(const Index& idx, const Rational& c);
  void set(const Index& idx, const Rational& c);

  SparseTensor& operator+=(const SparseTensor& o);
  SparseTensor& operator-=(const SparseTensor& o);
  SparseTensor& operator*=(const Rational& c);
  friend SparseTensor operator+(SparseTensor a, const SparseTensor& b) { return a += b; }
  friend SparseTensor operator-(SparseTensor a, const SparseTensor& b) { return a -= b; }
  friend SparseTensor operator*(const Rational& c, SparseTensor t) { return t *= c; }
  friend bool operator==(const SparseTensor& a, const SparseTensor& b) {
    return a.dims_ == b.dims_ && a.entries_ == b.entries_;
  }

  SparseTensor tensor(const SparseTensor& o) const;

 private:
  std::vector<int> dims_;
  std::map<Index, Rational> entries_;

  void check_bounds(const Index& idx) const;
};

/// Nondegenerate symmetric or antisymmetric pairing on a single slot space.
/// Symmetry and invertibility are verified eagerly on construction.
class BilinearForm {
 public:
  enum class Kind { symmetric, antisymmetric };

  BilinearForm(SparseTensor matrix, Kind kind);

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  const SparseTensor& matrix() const { return matrix_; }
  Rational at(int i, int j) const { return matrix_.at({i, j}); }

  BilinearForm inverse() const;
  BilinearForm scaled(const Rational& c) const;

  static BilinearForm from_dense(const std::vector<std::vector<Rational>>& m, Kind kind);

 private:
  SparseTensor matrix_;
  Kind kind_;
  int dim_ = 0;
};

// Reorders slots by sigma (slot i of the result is slot sigma(i) of the
// input... see implementation note) with the Koszul sign computed from the
// slot parities (0 = even, 1 = odd).
SparseTensor permute_slots(const SparseTensor& t, const Permutation& sigma,
                           const std::vector<int>& parities);

// Contracts slots i and j (1-based) of t against the form: slot i feeds the
// first form argument, slot j the second. Remaining slots keep their order.
SparseTensor contract_slots(const SparseTensor& t, const BilinearForm& form, int i, int j);

// Contracts slot i of a with slot j of b directly (Hom-composition pairing,
// no form): sum over the matched index.
SparseTensor contract_pair(const SparseTensor& a, int i, const SparseTensor& b, int j);

enum class SymmetrizeMode { sym, alt };

// Group average over permutations of the chosen slots (signs in alt mode).
SparseTensor symmetrize(const SparseTensor& t, const std::vector<int>& slots,
                        SymmetrizeMode mode);

}  // namespace opforge
