#include "opforge/lie.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "opforge/exact_matrix.hpp"
#include "opforge/permutation.hpp"

namespace opforge {

BracketExpr BracketExpr::clone() const {
  if (is_leaf()) return BracketExpr(var);
  return BracketExpr(left->clone(), right->clone());
}

std::string BracketExpr::str() const {
  if (is_leaf()) return "x" + std::to_string(var);
  return "[" + left->str() + "," + right->str() + "]";
}

BracketExpr BracketExpr::parse(const std::string& text) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  std::function<BracketExpr()> parse_expr = [&]() -> BracketExpr {
    skip_ws();
    if (pos >= text.size()) throw ParseError("bracket expression: unexpected end");
    if (text[pos] == '[') {
      ++pos;
      BracketExpr l = parse_expr();
      skip_ws();
      if (pos >= text.size() || text[pos] != ',')
        throw ParseError("bracket expression: expected ','");
      ++pos;
      BracketExpr r = parse_expr();
      skip_ws();
      if (pos >= text.size() || text[pos] != ']')
        throw ParseError("bracket expression: expected ']'");
      ++pos;
      return BracketExpr(std::move(l), std::move(r));
    }
    if (text[pos] == 'x') {
      ++pos;
      size_t start = pos;
      while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (start == pos) throw ParseError("bracket expression: expected variable index");
      return BracketExpr(std::stoi(text.substr(start, pos - start)));
    }
    throw ParseError("bracket expression: unexpected character");
  };
  BracketExpr e = parse_expr();
  skip_ws();
  if (pos != text.size()) throw ParseError("bracket expression: trailing input");
  return e;
}

void LieElement::add_term(const std::vector<int>& mono, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(mono, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& o) {
  if (arity_ != o.arity_) throw ArityError("LieElement: arity mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

LieElement& LieElement::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

LieElement LieElement::operator-() const {
  LieElement out(arity_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

LieElement LieElement::basis_monomial(const std::vector<int>& seq) {
  LieElement out(static_cast<int>(seq.size()));
  out.add_term(seq, rat(1));
  return out;
}

LieElement LieElement::unit() { return basis_monomial({1}); }

namespace {

// Linear combination of right-normed monomials over an arbitrary variable set
// (keys anchored at the set's maximum).
using Combo = std::map<std::vector<int>, Rational>;

void combo_add(Combo& a, const std::vector<int>& m, const Rational& c) {
  if (c.is_zero()) return;
  auto it = a.find(m);
  if (it == a.end()) {
    a.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) a.erase(it);
  }
}

struct Normalizer {
  std::map<std::pair<std::vector<int>, std::vector<int>>, Combo> memo;

  // Normal form of the bracket [M, N] of two right-normed monomials over
  // disjoint variable sets.
  const Combo& bracket(const std::vector<int>& M, const std::vector<int>& N) {
    auto key = std::make_pair(M, N);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    Combo out;
    int maxM = *std::max_element(M.begin(), M.end());
    int maxN = *std::max_element(N.begin(), N.end());
    if (maxM > maxN) {
      for (const auto& [m, c] : bracket(N, M)) combo_add(out, m, -c);
    } else if (M.size() == 1) {
      std::vector<int> m;
      m.reserve(N.size() + 1);
      m.push_back(M[0]);
      m.insert(m.end(), N.begin(), N.end());
      combo_add(out, m, rat(1));
    } else {
      // [[m1,M'],N] = [m1,[M',N]] - [M',[m1,N]]  (Jacobi)
      std::vector<int> head{M[0]};
      std::vector<int> tail(M.begin() + 1, M.end());
      for (const auto& [m, c] : bracket(tail, N))
        for (const auto& [m2, c2] : bracket(head, m)) combo_add(out, m2, c * c2);
      for (const auto& [m, c] : bracket(head, N))
        for (const auto& [m2, c2] : bracket(tail, m)) combo_add(out, m2, -(c * c2));
    }
    return memo.emplace(std::move(key), std::move(out)).first->second;
  }

  Combo expr(const BracketExpr& e) {
    if (e.is_leaf()) {
      Combo out;
      out.emplace(std::vector<int>{e.var}, rat(1));
      return out;
    }
    Combo l = expr(*e.left), r = expr(*e.right), out;
    for (const auto& [lm, lc] : l)
      for (const auto& [rm, rc] : r)
        for (const auto& [m, c] : bracket(lm, rm)) combo_add(out, m, lc * rc * c);
    return out;
  }
};

Normalizer& shared_normalizer() {
  // Memo table is only grown, never mutated in place; guarded for reuse.
  thread_local Normalizer n;
  return n;
}

void collect_vars(const BracketExpr& e, std::multiset<int>& vars) {
  if (e.is_leaf()) {
    vars.insert(e.var);
    return;
  }
  collect_vars(*e.left, vars);
  collect_vars(*e.right, vars);
}

void check_well_formed(const BracketExpr& e) {
  std::multiset<int> vars;
  collect_vars(e, vars);
  int n = static_cast<int>(vars.size());
  for (int i = 1; i <= n; ++i)
    if (vars.count(i) != 1)
      throw ParseError("bracket expression: each of x1..xn must appear exactly once");
}

}  // namespace

LieElement lie_normal_form(const BracketExpr& e) {
  check_well_formed(e);
  std::multiset<int> vars;
  collect_vars(e, vars);
  LieElement out(static_cast<int>(vars.size()));
  for (const auto& [m, c] : shared_normalizer().expr(e)) out.add_term(m, c);
  return out;
}

LieElement lie_normal_form(const std::vector<std::pair<BracketExpr, Rational>>& combo) {
  if (combo.empty()) return LieElement();
  LieElement out = lie_normal_form(combo[0].first);
  out *= combo[0].second;
  for (size_t i = 1; i < combo.size(); ++i) {
    LieElement t = lie_normal_form(combo[i].first);
    t *= combo[i].second;
    out += t;
  }
  return out;
}

namespace {

// Right-normed monomial sequence -> expression tree, with leaf relabeling.
BracketExpr monomial_expr(const std::vector<int>& seq,
                          const std::function<BracketExpr(int)>& leaf) {
  BracketExpr e = leaf(seq.back());
  for (int k = static_cast<int>(seq.size()) - 2; k >= 0; --k)
    e = BracketExpr(leaf(seq[k]), std::move(e));
  return e;
}

}  // namespace

LieElement lie_compose(const LieElement& p, const LieElement& q, int i) {
  int m = p.arity(), n = q.arity();
  if (i < 1 || i > m) throw ArityError("lie_compose: slot out of range");
  LieElement out(m + n - 1);
  for (const auto& [pm, pc] : p.terms()) {
    for (const auto& [qm, qc] : q.terms()) {
      BracketExpr qe = monomial_expr(
          qm, [&](int v) { return BracketExpr(v + i - 1); });
      BracketExpr full = monomial_expr(pm, [&](int v) -> BracketExpr {
        if (v < i) return BracketExpr(v);
        if (v == i) return qe.clone();
        return BracketExpr(v + n - 1);
      });
      LieElement nf = lie_normal_form(full);
      nf *= pc * qc;
      out += nf;
    }
  }
  return out;
}

LieElement lie_act(const LieElement& p, const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != p.arity())
    throw ArityError("lie_act: permutation size mismatch");
  LieElement out(p.arity());
  for (const auto& [pm, pc] : p.terms()) {
    BracketExpr e = monomial_expr(pm, [&](int v) { return BracketExpr(sigma[v - 1]); });
    LieElement nf = lie_normal_form(e);
    nf *= pc;
    out += nf;
  }
  return out;
}

long lie_dim(int n) {
  if (n < 1) throw ArityError("lie_dim: n must be >= 1");
  if (n == 1) return 1;
  // Column index per right-normed basis word.
  std::map<std::vector<int>, int> col;
  std::vector<int> word(n - 1);
  std::iota(word.begin(), word.end(), 1);
  do {
    std::vector<int> full = word;
    full.push_back(n);
    int c = static_cast<int>(col.size());
    col.emplace(full, c);
  } while (std::next_permutation(word.begin(), word.end()));

  ExactMatrix rows(0, 0);
  std::vector<std::map<int, Rational>> sparse_rows;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    LieElement nf = lie_act(LieElement::basis_monomial([&] {
                              std::vector<int> id(n);
                              std::iota(id.begin(), id.end(), 1);
                              return id;
                            }()),
                            perm);
    std::map<int, Rational> row;
    for (const auto& [m, c] : nf.terms()) row[col.at(m)] = c;
    sparse_rows.push_back(std::move(row));
  } while (std::next_permutation(perm.begin(), perm.end()));

  ExactMatrix mat(static_cast<int>(sparse_rows.size()), static_cast<int>(col.size()));
  for (size_t r = 0; r < sparse_rows.size(); ++r)
    for (const auto& [c, v] : sparse_rows[r]) mat.set(static_cast<int>(r), c, v);
  return mat.rank();
}

}  // namespace opforge
