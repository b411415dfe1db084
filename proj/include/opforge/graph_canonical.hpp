#pragma once

#include <string>
#include <vector>

#include "opforge/graph.hpp"
#include "opforge/graph_orientation.hpp"

namespace opforge {

struct CanonicalForm {
  OrientedGraph graph;   // canonical representative, reference orientation
  int sign = 1;          // orientation of input vs canonical reference
  bool zero_class = false;
  std::string key;       // canonical encoding; total order on classes
};

// Deterministic canonical labeling (exhaustive search with color refinement
// pruning) and the orientation comparison sign in the given convention.
// Graphs whose strict automorphism group reverses orientation are flagged as
// zero classes (their sign is only defined up to that reversal).
CanonicalForm canonical_form(const OrientedGraph& g, Convention c);
CanonicalForm canonical_form(const OrientedGraph& g);  // family default

Convention default_convention(GraphFamily f);

struct Automorphism {
  GraphIso iso;
  int sign = 1;  // in the requested convention
};

// Full flag-level automorphism group; strict = fixing each leg.
std::vector<Automorphism> automorphisms(const OrientedGraph& g, bool strict,
                                        Convention c);
std::vector<Automorphism> automorphisms(const OrientedGraph& g, bool strict);

// Isomorphisms g -> h fixing legs (empty if none); used by the enumeration
// oracle and the differential assembly.
std::vector<GraphIso> strict_isomorphisms(const OrientedGraph& g, const OrientedGraph& h);

}  // namespace opforge
