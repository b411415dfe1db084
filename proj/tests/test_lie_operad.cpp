#include <doctest.h>

#include <numeric>
#include <set>

#include "opforge/lie.hpp"
#include "opforge/trace_module.hpp"
#include "oracles.hpp"

using namespace opforge;

namespace {

// Faithful-evaluation oracle: evaluation on sl2 (+) sl2 separates arity-3
// elements of the free Lie operad.
oracle::PlainAlgebra sl2_plus_sl2() {
  oracle::PlainAlgebra s = oracle::PlainAlgebra::sl2();
  oracle::PlainAlgebra g;
  g.dim = 6;
  g.c.assign(6, std::vector<std::vector<Rational>>(6, std::vector<Rational>(6)));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int k = 0; k < 3; ++k) {
        g.c[a][b][k] = s.c[a][b][k];
        g.c[a + 3][b + 3][k + 3] = s.c[a][b][k];
      }
  g.form = std::vector<std::vector<Rational>>(6, std::vector<Rational>(6));
  for (int i = 0; i < 6; ++i) g.form[i][i] = rat(1);
  return g;
}

// evaluate a LieElement on the oracle algebra by expanding each basis word
std::map<std::vector<int>, std::vector<Rational>> eval_element(
    const oracle::PlainAlgebra& g, const LieElement& e) {
  std::map<std::vector<int>, std::vector<Rational>> acc;
  for (const auto& [mono, coeff] : e.terms()) {
    std::string s = "x" + std::to_string(mono.back());
    for (int i = static_cast<int>(mono.size()) - 2; i >= 0; --i)
      s = "[x" + std::to_string(mono[i]) + "," + s + "]";
    auto val = oracle::eval_bracket_word(g, s, e.arity());
    for (auto& [idx, vec] : val) {
      auto& slot = acc[idx];
      slot.resize(g.dim);
      for (int k = 0; k < g.dim; ++k) slot[k] += coeff * vec[k];
    }
  }
  for (auto it = acc.begin(); it != acc.end();) {
    bool nz = false;
    for (auto& x : it->second) nz = nz || !x.is_zero();
    it = nz ? std::next(it) : acc.erase(it);
  }
  return acc;
}

}  // namespace

TEST_CASE("normal form basics: basis elements, antisymmetry") {
  LieElement e = lie_normal_form(BracketExpr::parse("[x1,[x2,x3]]"));
  REQUIRE(e.terms().size() == 1);
  CHECK(e.terms().begin()->first == std::vector<int>{1, 2, 3});
  CHECK(e.terms().begin()->second == rat(1));

  LieElement f = lie_normal_form(BracketExpr::parse("[x2,x1]"));
  REQUIRE(f.terms().size() == 1);
  CHECK(f.terms().begin()->first == std::vector<int>{1, 2});
  CHECK(f.terms().begin()->second == rat(-1));

  CHECK_THROWS_AS(lie_normal_form(BracketExpr::parse("[x1,x1]")), ParseError);
  CHECK_THROWS_AS(lie_normal_form(BracketExpr::parse("[x1,x3]")), ParseError);
}

TEST_CASE("normal form of [x3,[x1,x2]] is evaluation-faithful on sl2+sl2") {
  LieElement e = lie_normal_form(BracketExpr::parse("[x3,[x1,x2]]"));
  REQUIRE(e.terms().size() == 2);
  for (const auto& [m, c] : e.terms()) CHECK((c == rat(1) || c == rat(-1)));

  oracle::PlainAlgebra g = sl2_plus_sl2();
  auto raw = oracle::eval_bracket_word(g, "[x3,[x1,x2]]", 3);
  auto nf = eval_element(g, e);
  CHECK(raw == nf);
}

TEST_CASE("Jacobi: the paper's three Lie(3) monomials sum to zero") {
  std::vector<std::pair<BracketExpr, Rational>> paper;
  paper.emplace_back(BracketExpr::parse("[x1,[x2,x3]]"), rat(1));
  paper.emplace_back(BracketExpr::parse("[x2,[x3,x1]]"), rat(1));
  paper.emplace_back(BracketExpr::parse("[x3,[x1,x2]]"), rat(1));
  CHECK(lie_normal_form(paper).is_zero());
}

TEST_CASE("lie_dim equals (n-1)! for n = 2..6") {
  long fact = 1;
  for (int n = 2; n <= 6; ++n) {
    fact *= (n - 1);
    CHECK(lie_dim(n) == fact);
  }
}

TEST_CASE("compose: definition, unit law, associativity") {
  LieElement b2 = LieElement::basis_monomial({1, 2});

  LieElement left = lie_compose(b2, b2, 1);
  LieElement expect = lie_normal_form(BracketExpr::parse("[[x1,x2],x3]"));
  CHECK(left == expect);

  CHECK(lie_compose(b2, LieElement::unit(), 1) == b2);
  CHECK(lie_compose(b2, LieElement::unit(), 2) == b2);
  CHECK(lie_compose(LieElement::unit(), b2, 1) == b2);

  LieElement p = b2, q = b2, r = b2;
  CHECK(lie_compose(lie_compose(p, q, 1), r, 1) ==
        lie_compose(p, lie_compose(q, r, 1), 1));
  CHECK(lie_compose(lie_compose(p, q, 2), r, 1) ==
        lie_compose(lie_compose(p, r, 1), q, 3));
}

TEST_CASE("S_n images of one monomial hit exactly the (n-1)! basis words") {
  for (int n = 3; n <= 5; ++n) {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 1);
    LieElement base = LieElement::basis_monomial(id);
    std::set<std::vector<int>> seen;
    std::vector<int> perm = id;
    do {
      LieElement img = lie_act(base, perm);
      for (const auto& [m, c] : img.terms()) seen.insert(m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    long fact = 1;
    for (int k = 2; k < n; ++k) fact *= k;
    CHECK(static_cast<long>(seen.size()) == fact);
  }
}

TEST_CASE("trace_of: kappa words and cyclic symmetry") {
  LieElement m = LieElement::basis_monomial({1, 2, 3, 4});
  TraceElement k3 = trace_of(m);
  REQUIRE(k3.terms().size() == 1);
  CHECK(k3.terms().begin()->first == std::vector<int>{1, 2, 3});

  std::vector<int> cyc{2, 3, 1};
  CHECK(trace_act(k3, cyc) == k3);
}

TEST_CASE("trace dimension (n-1)!; adjoint evaluation has the reversal symmetry") {
  long fact = 1;
  for (int n = 2; n <= 5; ++n) {
    fact *= (n - 1);
    CHECK(trace_dim(n) == fact);
  }

  // The abstract words kappa_3.(123) and kappa_3.(132) are distinct basis
  // elements, but every adjoint evaluation identifies them up to sign:
  // ad is Killing-antisymmetric, so tr(ad x ad y ad z) = -tr(ad z ad y ad x).
  // Assert the evaluation-level identity on sl2 and gl2.
  for (auto g : {oracle::PlainAlgebra::sl2(), oracle::PlainAlgebra::gl2()}) {
    for (int a = 0; a < g.dim; ++a)
      for (int b = 0; b < g.dim; ++b)
        for (int c = 0; c < g.dim; ++c)
          CHECK(oracle::trace_word(g, {a, b, c}) ==
                -oracle::trace_word(g, {c, b, a}));
  }
}

TEST_CASE("trace cyclic composition rule and sl2 matrix-trace cross-check") {
  LieElement p = LieElement::basis_monomial({1, 2});
  LieElement q = LieElement::basis_monomial({1, 2});
  TraceElement lhs = trace_of(lie_compose(p, q, 2));
  TraceElement rhs0 = trace_of(lie_compose(q, p, 2));
  TraceElement rhs = trace_act(rhs0, {2, 1});
  CHECK(lhs == rhs);

  oracle::PlainAlgebra sl2 = oracle::PlainAlgebra::sl2();
  LieElement rnd = lie_normal_form(BracketExpr::parse("[[x1,x3],[x2,x4]]"));
  TraceElement reduced = trace_of(rnd);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        Rational direct;
        {
          auto vals = eval_element(sl2, rnd);
          for (int d = 0; d < 3; ++d) {
            auto it = vals.find({a, b, c, d});
            if (it == vals.end()) continue;
            direct += it->second[d];
          }
        }
        Rational via_kappa;
        for (const auto& [w, coeff] : reduced.terms()) {
          std::vector<int> args{a, b, c};
          std::vector<int> word0;
          for (int v : w) word0.push_back(args[v - 1]);
          via_kappa += coeff * oracle::trace_word(sl2, word0);
        }
        CHECK(direct == via_kappa);
      }
}

TEST_CASE("trace composition against the tree-relation tr(p) o_i q") {
  LieElement p3 = lie_normal_form(BracketExpr::parse("[x1,[x2,x3]]"));
  TraceElement t = trace_of(p3);  // arity 2
  LieElement q = LieElement::basis_monomial({1, 2});
  TraceElement composed = trace_compose(t, q, 1);
  CHECK(composed.arity() == 3);
  // relation : tr(p) o_1 q = tr(p o_1 q)
  CHECK(composed == trace_of(lie_compose(p3, q, 1)));
}
