#pragma once

#include <map>
#include <vector>

#include "opforge/lie.hpp"

namespace opforge {

/// Element of the trace module LIE(n,0). A key (s1,...,sn) stands for the
/// trace word kappa_n precomposed with slot j -> variable s_j; keys are kept
/// at their lexicographically least cyclic rotation.
class TraceElement {
 public:
  TraceElement() = default;
  explicit TraceElement(int arity) : arity_(arity) {}

  int arity() const { return arity_; }
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Adds kappa-word w (any rotation) with coefficient c.
  void add_word(const std::vector<int>& w, const Rational& c);

  TraceElement& operator+=(const TraceElement& o);
  TraceElement& operator*=(const Rational& c);
  TraceElement operator-() const;
  friend bool operator==(const TraceElement& a, const TraceElement& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  static std::vector<int> canonical_rotation(const std::vector<int>& w);

 private:
  int arity_ = 0;
  std::map<std::vector<int>, Rational> terms_;
};

// tr(p) for p in Lie(n+1), reduced to the kappa-word basis.
TraceElement trace_of(const LieElement& p);

// tr-module composition (T o_i q), via lifting T to Lie(a+1), composing and
// re-tracing; the relation tr(p) o_i q = tr(p o_i q) holds by construction.
TraceElement trace_compose(const TraceElement& t, const LieElement& q, int i);

// Argument permutation: (T sigma)(x_1..x_n) = T(x_{sigma(1)},...).
TraceElement trace_act(const TraceElement& t, const std::vector<int>& sigma);

// Number of Z_n-cosets = dimension of the kappa-word span = (n-1)!.
long trace_dim(int n);

}  // namespace opforge
