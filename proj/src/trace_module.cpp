#include "opforge/trace_module.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace opforge {

std::vector<int> TraceElement::canonical_rotation(const std::vector<int>& w) {
  std::vector<int> best = w;
  std::vector<int> cur = w;
  for (size_t k = 1; k < w.size(); ++k) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

void TraceElement::add_word(const std::vector<int>& w, const Rational& c) {
  if (c.is_zero()) return;
  std::vector<int> key = canonical_rotation(w);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TraceElement& TraceElement::operator+=(const TraceElement& o) {
  if (arity_ != o.arity_) throw ArityError("TraceElement: arity mismatch");
  for (const auto& [w, c] : o.terms_) add_word(w, c);
  return *this;
}

TraceElement& TraceElement::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

TraceElement TraceElement::operator-() const {
  TraceElement out(arity_);
  for (const auto& [w, c] : terms_) out.terms_.emplace(w, -c);
  return out;
}

TraceElement trace_of(const LieElement& p) {
  int n = p.arity() - 1;
  if (n < 1) throw ArityError("trace_of: need arity >= 2");
  TraceElement out(n);
  // Basis monomials are anchored at x_{n+1}; tr of (a1,...,an,n+1) is the
  // kappa-word (a1,...,an).
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> w(m.begin(), m.end() - 1);
    out.add_word(w, c);
  }
  return out;
}

TraceElement trace_compose(const TraceElement& t, const LieElement& q, int i) {
  int a = t.arity(), b = q.arity();
  if (i < 1 || i > a) throw ArityError("trace_compose: slot out of range");
  TraceElement out(a + b - 1);
  for (const auto& [w, c] : t.terms()) {
    // Lift the word to the Lie(a+1) monomial (w1,...,wa, a+1), compose at
    // slot i, keep the auxiliary variable maximal, and trace again.
    std::vector<int> lift = w;
    lift.push_back(a + 1);
    LieElement p = LieElement::basis_monomial(lift);
    LieElement composed = lie_compose(p, q, i);  // aux var now at i<= ... shifted
    // After composition the aux variable a+1 became a+b (indices above i
    // shifted by b-1) since a+1 > i always.
    TraceElement piece = trace_of(composed);
    piece *= c;
    out += piece;
  }
  return out;
}

TraceElement trace_act(const TraceElement& t, const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != t.arity())
    throw ArityError("trace_act: permutation size mismatch");
  TraceElement out(t.arity());
  for (const auto& [w, c] : t.terms()) {
    std::vector<int> nw(w.size());
    for (size_t j = 0; j < w.size(); ++j) nw[j] = sigma[w[j] - 1];
    out.add_word(nw, c);
  }
  return out;
}

long trace_dim(int n) {
  std::set<std::vector<int>> reps;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    reps.insert(TraceElement::canonical_rotation(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<long>(reps.size());
}

}  // namespace opforge
