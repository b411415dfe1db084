#pragma once

#include <vector>

#include "opforge/graph.hpp"
#include "opforge/graph_canonical.hpp"

namespace opforge {

// Exhaustive, duplicate-free list of canonical representatives in canonical
// (lexicographic key) order, each with a fixed reference orientation and its
// zero-class status. Throws GuardError when the class exceeds the guard.
std::vector<CanonicalForm> enumerate_graphs(const GraphClassSpec& spec);

}  // namespace opforge
