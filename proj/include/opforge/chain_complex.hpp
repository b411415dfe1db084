#pragma once

#include <map>
#include <string>
#include <vector>

#include "opforge/exact_matrix.hpp"
#include "opforge/graph_enumerate.hpp"

namespace opforge {

/// Graph basis of one family/parameter choice, grouped by degree.
/// Zero-classes are excluded from the basis but reported alongside.
struct ChainBasis {
  GraphClassSpec spec;
  Convention convention = Convention::inset;
  std::vector<CanonicalForm> graphs;        // canonical order
  std::vector<CanonicalForm> zero_classes;
  std::map<std::string, int> index;         // canonical key -> basis position
  std::map<int, std::vector<int>> by_degree;

  int dim(int degree) const {
    auto it = by_degree.find(degree);
    return it == by_degree.end() ? 0 : static_cast<int>(it->second.size());
  }
  std::vector<int> degrees() const;
};

ChainBasis chain_space(const GraphClassSpec& spec);

// Matrix of d restricted to degree k -> k+1. d is the transpose of the
// single-edge contraction map: rows are indexed by the degree-(k+1) basis,
// columns by the degree-k basis.
ExactMatrix differential_matrix(const ChainBasis& basis, int k);

struct DegreeRank {
  int degree = 0;
  long dim = 0;
  long rank_d = 0;   // rank of d out of this degree
  long betti = 0;
};

std::vector<DegreeRank> cohomology_ranks(const ChainBasis& basis);

// True iff d composed with itself vanishes in every adjacent degree pair.
bool d_squared_is_zero(const ChainBasis& basis);

/// Rational combination of basis graphs (self-describing: keeps the graphs).
struct GraphChain {
  GraphFamily family = GraphFamily::tree;
  std::map<std::string, std::pair<CanonicalForm, Rational>> terms;

  void add(const CanonicalForm& cf, const Rational& c);
  void add_graph(const OrientedGraph& g, const Rational& c);  // canonicalizes
  bool is_zero() const { return terms.empty(); }
  GraphChain& operator+=(const GraphChain& o);
  GraphChain& operator*=(const Rational& c);
  friend bool operator==(const GraphChain& a, const GraphChain& b);
};

// Bilinear extension of graph grafting with orientation signs.
GraphChain graft_chain(const GraphChain& a, const GraphChain& b,
                       const std::vector<LegMatch>& matching);

// d applied to a chain, computed inside the given basis (all expansion
// graphs must belong to it).
GraphChain apply_differential(const ChainBasis& basis, const GraphChain& chain);

}  // namespace opforge
