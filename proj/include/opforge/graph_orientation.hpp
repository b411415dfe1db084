#pragma once

#include <vector>

#include "opforge/graph.hpp"

namespace opforge {

/// Flag-level isomorphism between two graphs (or an automorphism when the
/// graphs coincide). flag_map[f] is the image flag; derived vertex/edge maps
/// are filled in by the search.
struct GraphIso {
  std::vector<int> flag_map;
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
};

// Sign of the stored orientation data relative to the ambient reference
// (everything ascending), evaluated through the hub identifications of the
// det-line comparison lemma. inset is only comparable with itself.
int orientation_sign_to_hub(const OrientedGraph& g, Convention c);

// Sign of the natural isomorphism between the two orientation lines
// evaluated on the stored ordering data. Conversions involving the flag
// convention require a graph without self-loops.
int transport_orientation(const OrientedGraph& g, Convention from, Convention to);

// Torsion sign of the chain complex 0 -> H1 -> C1 -> C0 -> H0 -> 0 with
// ambient bases on every term.
int torsion_sign(const OrientedGraph& g);

// Sign of the automorphism/isomorphism iso: g -> h induced on the
// orientation line of the given convention (stored data pushed through iso,
// compared against h's stored data).
int iso_orientation_sign(const OrientedGraph& g, const OrientedGraph& h,
                         const GraphIso& iso, Convention c);

// det (+-1) of the H1 pushforward used by non-loop edge contraction.
int h1_contraction_sign(const OrientedGraph& g, int contracted_edge,
                        const OrientedGraph& out, const std::vector<int>& edge_map);

// Canonical fundamental cycle basis (ambient edge directions, Kruskal forest).
// Each cycle is a vector of edge coefficients.
std::vector<std::vector<int>> cycle_basis(const OrientedGraph& g);

}  // namespace opforge
