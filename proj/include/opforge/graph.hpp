#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opforge/errors.hpp"

namespace opforge {

enum class GraphFamily { tree, prop_graph, stable_modular, trivalent_closed };

std::string family_name(GraphFamily f);
GraphFamily family_from_name(const std::string& s);

enum class Convention { inset, edgecycle, vertedge, flag };

std::string convention_name(Convention c);
Convention convention_from_name(const std::string& s);

/// Flag = half-edge. Either paired with a partner flag (forming an edge) or
/// carrying a leg label. In directed families each vertex designates exactly
/// one outgoing flag.
struct Flag {
  int vertex = -1;
  int partner = -1;   // flag id, or -1 for a leg
  int leg_in = 0;     // input leg label (1-based), 0 if none
  int leg_out = 0;    // output leg label (1-based), 0 if none
  bool is_leg() const { return partner < 0; }
};

struct Vertex {
  int genus = 0;
  int out_flag = -1;  // directed families only
  std::vector<int> flags;  // ascending flag ids
};

struct Edge {
  int a = -1, b = -1;  // the two flags; stored order is the OR(e) data
};

/// Legged multigraph with genus labels and explicit orientation data.
/// Orientation is always stored as ordering data, never as a bare sign:
///  - edge_order: ordering of edge ids (det Ed / edgecycle data)
///  - per-edge flag order inside Edge (OR(e) data)
///  - in_word: global ordering of all "in" flags (inset data, directed families)
///  - vertex_order: ordering of vertex ids (det Vert / vertedge data)
///  - flag_orders: per-vertex flag orderings (flag-convention data)
struct OrientedGraph {
  GraphFamily family = GraphFamily::tree;
  bool directed = false;
  int n_in = 0, n_out = 0;

  std::vector<Vertex> vertices;
  std::vector<Flag> flags;
  std::vector<Edge> edges;
  // Identity components of PROP graphs: an input wired straight to an output,
  // no vertices. Pairs (in label, out label).
  std::vector<std::pair<int, int>> bare_edges;

  std::vector<int> edge_order;                 // permutation of edge ids
  std::vector<int> in_word;                    // all in-flag ids, ordered
  std::vector<int> vertex_order;               // permutation of vertex ids
  std::vector<std::vector<int>> flag_orders;   // per vertex

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  int num_flags() const { return static_cast<int>(flags.size()); }

  bool is_self_loop(int e) const {
    return flags[edges[e].a].vertex == flags[edges[e].b].vertex;
  }
  bool is_out_flag(int f) const {
    return directed && vertices[flags[f].vertex].out_flag == f;
  }
  // In(v): for directed graphs all flags but the outgoing one; for undirected
  // graphs the full flag set.
  std::vector<int> in_flags(int v) const;
  int in_valency(int v) const;
  int valency(int v) const { return static_cast<int>(vertices[v].flags.size()); }
  int edge_of_flag(int f) const;

  int num_components() const;
  int h1_dim() const;  // E - V + components
  int total_genus() const { return h1_dim() + genus_sum(); }
  int genus_sum() const;

  // deg = sum_v (2 - |In(v)|) for directed families, |Vert| for modular ones.
  int degree() const;

  void validate() const;
  void reset_reference_orientation();  // everything ascending

  // 0-based leg lookup: flag id carrying input label i / output label j.
  int in_leg_flag(int label) const;
  int out_leg_flag(int label) const;

  std::string encode() const;  // canonical structural encoding (labels as-is)
};

struct GraphClassSpec {
  GraphFamily family = GraphFamily::tree;
  int legs_in = 0, legs_out = 0;
  int genus = 0;
  int max_vertices = 8;
  bool allow_self_loops = true;
  bool allow_parallel_edges = true;
  bool zero_genus_labels = false;  // restrict stable graphs to g(v) = 0
  long class_size_guard = 2000000;

  void check() const;
};

// ---- construction helpers ----

/// Incremental builder used by enumeration, grafting and contraction.
struct GraphBuilder {
  GraphFamily family;
  bool directed;
  int n_in = 0, n_out = 0;
  std::vector<Vertex> vertices;
  std::vector<Flag> flags;

  explicit GraphBuilder(GraphFamily f);

  int add_vertex(int genus = 0);
  int add_flag(int v);
  void pair_flags(int f1, int f2);       // f1 first in OR(e) order
  void set_in_leg(int f, int label);
  void set_out_leg(int f, int label);
  void set_out_flag(int v, int f);

  OrientedGraph build() const;  // reference orientation
};

// Grafting: creates edges from matched leg pairs (host out-leg to scion
// in-leg when directed, leg to leg otherwise); orientation data concatenated
// host-first. An empty matching is disjoint juxtaposition.
struct LegMatch {
  int host_leg;   // output label (directed) or input label (undirected)
  int scion_leg;  // input label
};
OrientedGraph graft(const OrientedGraph& host, const OrientedGraph& scion,
                    const std::vector<LegMatch>& matching);

// Self-gluing of two input legs of one modular graph.
OrientedGraph self_glue(const OrientedGraph& g, int leg_a, int leg_b);

// Edge contraction; e must not be a self-loop. Returns the contracted graph
// together with the orientation sign of the contraction map evaluated on the
// stored orientation data (convention appropriate to the family).
std::pair<OrientedGraph, int> contract_edge(const OrientedGraph& g, int e);

}  // namespace opforge
