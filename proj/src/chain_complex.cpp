#include "opforge/chain_complex.hpp"

#include <algorithm>

namespace opforge {

std::vector<int> ChainBasis::degrees() const {
  std::vector<int> out;
  for (const auto& [d, v] : by_degree) out.push_back(d);
  return out;
}

ChainBasis chain_space(const GraphClassSpec& spec) {
  ChainBasis basis;
  basis.spec = spec;
  basis.convention = default_convention(spec.family);
  for (CanonicalForm& cf : enumerate_graphs(spec)) {
    if (cf.zero_class) {
      basis.zero_classes.push_back(std::move(cf));
      continue;
    }
    int idx = static_cast<int>(basis.graphs.size());
    basis.index.emplace(cf.key, idx);
    basis.by_degree[cf.graph.degree()].push_back(idx);
    basis.graphs.push_back(std::move(cf));
  }
  return basis;
}

ExactMatrix differential_matrix(const ChainBasis& basis, int k) {
  const std::vector<int>* rows_idx = nullptr;
  const std::vector<int>* cols_idx = nullptr;
  auto itr = basis.by_degree.find(k + 1);
  auto itc = basis.by_degree.find(k);
  static const std::vector<int> empty;
  rows_idx = (itr == basis.by_degree.end()) ? &empty : &itr->second;
  cols_idx = (itc == basis.by_degree.end()) ? &empty : &itc->second;

  std::map<int, int> col_of;
  for (size_t i = 0; i < cols_idx->size(); ++i) col_of[(*cols_idx)[i]] = static_cast<int>(i);
  std::map<int, int> row_of;
  for (size_t i = 0; i < rows_idx->size(); ++i) row_of[(*rows_idx)[i]] = static_cast<int>(i);

  ExactMatrix m(static_cast<int>(rows_idx->size()), static_cast<int>(cols_idx->size()));
  for (size_t r = 0; r < rows_idx->size(); ++r) {
    const OrientedGraph& g = basis.graphs[(*rows_idx)[r]].graph;
    for (int e = 0; e < g.num_edges(); ++e) {
      if (g.is_self_loop(e)) continue;
      auto [contracted, s1] = contract_edge(g, e);
      CanonicalForm cf = canonical_form(contracted, basis.convention);
      auto it = basis.index.find(cf.key);
      if (it == basis.index.end()) continue;  // zero class or out of basis
      auto jt = col_of.find(it->second);
      if (jt == col_of.end()) continue;
      m.add(static_cast<int>(r), jt->second, rat(s1 * cf.sign));
    }
  }
  return m;
}

std::vector<DegreeRank> cohomology_ranks(const ChainBasis& basis) {
  std::vector<DegreeRank> out;
  std::map<int, long> rank_out;
  for (int d : basis.degrees()) rank_out[d] = differential_matrix(basis, d).rank();
  for (int d : basis.degrees()) {
    DegreeRank r;
    r.degree = d;
    r.dim = basis.dim(d);
    r.rank_d = rank_out[d];
    long rank_in = rank_out.count(d - 1) ? rank_out[d - 1] : 0;
    r.betti = r.dim - r.rank_d - rank_in;
    out.push_back(r);
  }
  return out;
}

bool d_squared_is_zero(const ChainBasis& basis) {
  std::vector<int> degs = basis.degrees();
  for (int d : degs) {
    ExactMatrix a = differential_matrix(basis, d);
    ExactMatrix b = differential_matrix(basis, d + 1);
    if (a.rows() == 0 || b.rows() == 0) continue;
    if (!(b * a).is_zero()) return false;
  }
  return true;
}

void GraphChain::add(const CanonicalForm& cf, const Rational& c) {
  if (c.is_zero() || cf.zero_class) return;
  auto it = terms.find(cf.key);
  if (it == terms.end()) {
    terms.emplace(cf.key, std::make_pair(cf, c));
  } else {
    it->second.second += c;
    if (it->second.second.is_zero()) terms.erase(it);
  }
}

void GraphChain::add_graph(const OrientedGraph& g, const Rational& c) {
  CanonicalForm cf = canonical_form(g);
  Rational signed_c = (cf.sign < 0) ? -c : c;
  family = g.family;
  add(cf, signed_c);
}

GraphChain& GraphChain::operator+=(const GraphChain& o) {
  for (const auto& [k, term] : o.terms) add(term.first, term.second);
  return *this;
}

GraphChain& GraphChain::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms.clear();
    return *this;
  }
  for (auto& [k, term] : terms) term.second *= c;
  return *this;
}

bool operator==(const GraphChain& a, const GraphChain& b) {
  if (a.terms.size() != b.terms.size()) return false;
  for (const auto& [k, term] : a.terms) {
    auto it = b.terms.find(k);
    if (it == b.terms.end() || !(it->second.second == term.second)) return false;
  }
  return true;
}

GraphChain graft_chain(const GraphChain& a, const GraphChain& b,
                       const std::vector<LegMatch>& matching) {
  GraphChain out;
  for (const auto& [ka, ta] : a.terms)
    for (const auto& [kb, tb] : b.terms) {
      OrientedGraph grafted = graft(ta.first.graph, tb.first.graph, matching);
      out.family = grafted.family;
      out.add_graph(grafted, ta.second * tb.second);
    }
  return out;
}

GraphChain apply_differential(const ChainBasis& basis, const GraphChain& chain) {
  // d(G) = sum over expansions G' with a marked edge contracting back to G.
  // Computed by scanning the basis one degree up and contracting.
  GraphChain out;
  out.family = chain.family;
  for (const auto& [key, term] : chain.terms) {
    auto it = basis.index.find(key);
    if (it == basis.index.end())
      throw GraphError("apply_differential: chain term outside basis");
    int deg = basis.graphs[it->second].graph.degree();
    auto up = basis.by_degree.find(deg + 1);
    if (up == basis.by_degree.end()) continue;
    for (int gi : up->second) {
      const OrientedGraph& g = basis.graphs[gi].graph;
      for (int e = 0; e < g.num_edges(); ++e) {
        if (g.is_self_loop(e)) continue;
        auto [contracted, s1] = contract_edge(g, e);
        CanonicalForm cf = canonical_form(contracted, basis.convention);
        if (cf.key != key) continue;
        Rational c = term.second * rat(s1 * cf.sign);
        out.add(basis.graphs[gi], c);
      }
    }
  }
  return out;
}

}  // namespace opforge
