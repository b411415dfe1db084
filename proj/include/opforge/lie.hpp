#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "opforge/errors.hpp"
#include "opforge/rational.hpp"

namespace opforge {

/// Binary bracket expression over leaf variables x1..xn, each used once.
struct BracketExpr {
  int var = 0;  // > 0 for a leaf
  std::unique_ptr<BracketExpr> left, right;

  BracketExpr() = default;
  explicit BracketExpr(int v) : var(v) {}
  BracketExpr(BracketExpr l, BracketExpr r)
      : left(std::make_unique<BracketExpr>(std::move(l))),
        right(std::make_unique<BracketExpr>(std::move(r))) {}

  bool is_leaf() const { return var > 0; }
  BracketExpr clone() const;
  std::string str() const;

  // Parses nested bracket syntax: "[x1,[x2,x3]]".
  static BracketExpr parse(const std::string& text);
};

/// Element of the free Lie operad in the right-normed basis. A key
/// (a1,...,ak) stands for [x_{a1},[x_{a2},...,[x_{a_{k-1}},x_{a_k}]...]]
/// with a_k the highest variable in play (the anchor).
class LieElement {
 public:
  LieElement() = default;
  explicit LieElement(int arity) : arity_(arity) {}

  int arity() const { return arity_; }
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const std::vector<int>& mono, const Rational& c);
  LieElement& operator+=(const LieElement& o);
  LieElement& operator*=(const Rational& c);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator*(const Rational& c, LieElement e) { return e *= c; }
  LieElement operator-() const;
  friend bool operator==(const LieElement& a, const LieElement& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  static LieElement basis_monomial(const std::vector<int>& seq);
  static LieElement unit();  // arity-1 identity x1

 private:
  int arity_ = 0;
  std::map<std::vector<int>, Rational> terms_;
};

// Expansion in the right-normed basis via antisymmetry and Jacobi rewriting.
// Throws ParseError if a variable repeats or is missing.
LieElement lie_normal_form(const BracketExpr& e);
LieElement lie_normal_form(const std::vector<std::pair<BracketExpr, Rational>>& combo);

// Operadic substitution p o_i q followed by normalization.
LieElement lie_compose(const LieElement& p, const LieElement& q, int i);

// Action of sigma on arguments: (p sigma)(x_1..x_n) = p(x_{sigma(1)},...).
LieElement lie_act(const LieElement& p, const std::vector<int>& sigma);

// Rank of the span of all S_n-permuted right-normed words; equals (n-1)!.
long lie_dim(int n);

}  // namespace opforge
