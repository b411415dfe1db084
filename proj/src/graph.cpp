#include "opforge/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "opforge/graph_orientation.hpp"

namespace opforge {

std::string family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::tree: return "tree";
    case GraphFamily::prop_graph: return "prop_graph";
    case GraphFamily::stable_modular: return "stable_modular";
    case GraphFamily::trivalent_closed: return "trivalent_closed";
  }
  return "?";
}

GraphFamily family_from_name(const std::string& s) {
  if (s == "tree") return GraphFamily::tree;
  if (s == "prop_graph") return GraphFamily::prop_graph;
  if (s == "stable_modular") return GraphFamily::stable_modular;
  if (s == "trivalent_closed") return GraphFamily::trivalent_closed;
  throw ParseError("unknown graph family: " + s);
}

std::string convention_name(Convention c) {
  switch (c) {
    case Convention::inset: return "inset";
    case Convention::edgecycle: return "edgecycle";
    case Convention::vertedge: return "vertedge";
    case Convention::flag: return "flag";
  }
  return "?";
}

Convention convention_from_name(const std::string& s) {
  if (s == "inset") return Convention::inset;
  if (s == "edgecycle") return Convention::edgecycle;
  if (s == "vertedge") return Convention::vertedge;
  if (s == "flag") return Convention::flag;
  throw ParseError("unknown orientation convention: " + s);
}

std::vector<int> OrientedGraph::in_flags(int v) const {
  std::vector<int> out;
  for (int f : vertices[v].flags)
    if (!directed || vertices[v].out_flag != f) out.push_back(f);
  return out;
}

int OrientedGraph::in_valency(int v) const {
  return valency(v) - (directed ? 1 : 0);
}

int OrientedGraph::edge_of_flag(int f) const {
  for (int e = 0; e < num_edges(); ++e)
    if (edges[e].a == f || edges[e].b == f) return e;
  return -1;
}

namespace {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};
}  // namespace

int OrientedGraph::num_components() const {
  if (num_vertices() == 0) return 0;
  UnionFind uf(num_vertices());
  for (const Edge& e : edges) uf.unite(flags[e.a].vertex, flags[e.b].vertex);
  int c = 0;
  for (int v = 0; v < num_vertices(); ++v)
    if (uf.find(v) == v) ++c;
  return c;
}

int OrientedGraph::h1_dim() const {
  if (num_vertices() == 0) return 0;
  return num_edges() - num_vertices() + num_components();
}

int OrientedGraph::genus_sum() const {
  int s = 0;
  for (const Vertex& v : vertices) s += v.genus;
  return s;
}

int OrientedGraph::degree() const {
  if (directed) {
    int d = 0;
    for (int v = 0; v < num_vertices(); ++v) d += 2 - in_valency(v);
    return d;
  }
  return num_vertices();
}

int OrientedGraph::in_leg_flag(int label) const {
  for (int f = 0; f < num_flags(); ++f)
    if (flags[f].is_leg() && flags[f].leg_in == label) return f;
  throw GraphError("no input leg with that label");
}

int OrientedGraph::out_leg_flag(int label) const {
  for (int f = 0; f < num_flags(); ++f)
    if (flags[f].is_leg() && flags[f].leg_out == label) return f;
  throw GraphError("no output leg with that label");
}

void OrientedGraph::validate() const {
  for (int f = 0; f < num_flags(); ++f) {
    const Flag& fl = flags[f];
    if (fl.vertex < 0 || fl.vertex >= num_vertices())
      throw GraphError("flag with bad vertex");
    if (fl.partner >= 0) {
      if (fl.partner == f || flags[fl.partner].partner != f)
        throw GraphError("flag pairing is not a fixed-point-free involution");
      if (fl.leg_in || fl.leg_out) throw GraphError("paired flag carries a leg label");
    }
  }
  std::vector<bool> in_seen(n_in, false), out_seen(n_out, false);
  for (const Flag& fl : flags) {
    if (fl.leg_in) {
      if (fl.leg_in > n_in || in_seen[fl.leg_in - 1]) throw GraphError("bad in-leg labels");
      in_seen[fl.leg_in - 1] = true;
    }
    if (fl.leg_out) {
      if (fl.leg_out > n_out || out_seen[fl.leg_out - 1])
        throw GraphError("bad out-leg labels");
      out_seen[fl.leg_out - 1] = true;
    }
  }
  for (const auto& [in, outl] : bare_edges) {
    if (in > n_in || out_seen.size() < static_cast<size_t>(outl) || in_seen[in - 1] ||
        out_seen[outl - 1])
      throw GraphError("bad bare edge labels");
    in_seen[in - 1] = true;
    out_seen[outl - 1] = true;
  }
  if (directed) {
    for (int v = 0; v < num_vertices(); ++v) {
      const Vertex& vx = vertices[v];
      if (vx.out_flag < 0 || flags[vx.out_flag].vertex != v)
        throw GraphError("directed vertex without its outgoing flag");
      if (in_valency(v) < 1) throw GraphError("directed vertex with empty In set");
    }
  }
  if (family == GraphFamily::stable_modular) {
    for (int v = 0; v < num_vertices(); ++v)
      if (2 * (vertices[v].genus - 1) + valency(v) <= 0)
        throw GraphError("unstable vertex: 2(g-1)+|v| <= 0");
  }
  if (family == GraphFamily::trivalent_closed) {
    if (n_in || n_out) throw GraphError("closed graph with legs");
    for (int v = 0; v < num_vertices(); ++v)
      if (valency(v) != 3) throw GraphError("non-trivalent vertex in trivalent graph");
  }
}

void OrientedGraph::reset_reference_orientation() {
  edge_order.resize(num_edges());
  std::iota(edge_order.begin(), edge_order.end(), 0);
  vertex_order.resize(num_vertices());
  std::iota(vertex_order.begin(), vertex_order.end(), 0);
  in_word.clear();
  if (directed) {
    for (int f = 0; f < num_flags(); ++f)
      if (!is_out_flag(f) && !(flags[f].is_leg() && flags[f].leg_out)) in_word.push_back(f);
  }
  flag_orders.assign(num_vertices(), {});
  for (int v = 0; v < num_vertices(); ++v) flag_orders[v] = vertices[v].flags;
}

std::string OrientedGraph::encode() const {
  std::ostringstream os;
  os << family_name(family) << ";" << n_in << "," << n_out << ";";
  for (int v = 0; v < num_vertices(); ++v) os << vertices[v].genus << ",";
  os << ";";
  std::vector<std::pair<int, int>> es;
  for (const Edge& e : edges) {
    int u = flags[e.a].vertex, w = flags[e.b].vertex;
    if (directed) {
      // tail = the endpoint whose out-flag lies on this edge
      int tail = is_out_flag(e.a) ? flags[e.a].vertex : flags[e.b].vertex;
      int head = is_out_flag(e.a) ? flags[e.b].vertex : flags[e.a].vertex;
      es.emplace_back(tail, head);
    } else {
      es.emplace_back(std::min(u, w), std::max(u, w));
    }
  }
  std::sort(es.begin(), es.end());
  for (auto& [a, b] : es) os << a << "-" << b << ",";
  os << ";";
  std::vector<int> in_at(n_in + 1, -2), out_at(n_out + 1, -2);
  for (const Flag& fl : flags) {
    if (fl.is_leg() && fl.leg_in) in_at[fl.leg_in] = fl.vertex;
    if (fl.is_leg() && fl.leg_out) out_at[fl.leg_out] = fl.vertex;
  }
  std::vector<std::pair<int, int>> bare = bare_edges;
  std::sort(bare.begin(), bare.end());
  for (int l = 1; l <= n_in; ++l) os << in_at[l] << ",";
  os << ";";
  for (int l = 1; l <= n_out; ++l) os << out_at[l] << ",";
  os << ";";
  for (auto& [i, o] : bare) os << i << ">" << o << ",";
  return os.str();
}

void GraphClassSpec::check() const {
  if (legs_in < 0 || legs_out < 0 || genus < 0 || max_vertices < 0)
    throw GraphError("GraphClassSpec: negative parameter");
  if (family == GraphFamily::tree && legs_out > 1)
    throw GraphError("GraphClassSpec: trees have a single output");
  if (family == GraphFamily::trivalent_closed && (legs_in || legs_out))
    throw GraphError("GraphClassSpec: trivalent_closed has no legs");
  if (family == GraphFamily::stable_modular && legs_out)
    throw GraphError("GraphClassSpec: modular graphs have a single leg set");
}

GraphBuilder::GraphBuilder(GraphFamily f) : family(f) {
  directed = (f == GraphFamily::tree || f == GraphFamily::prop_graph);
}

int GraphBuilder::add_vertex(int genus) {
  vertices.push_back(Vertex{genus, -1, {}});
  return static_cast<int>(vertices.size()) - 1;
}

int GraphBuilder::add_flag(int v) {
  Flag f;
  f.vertex = v;
  flags.push_back(f);
  int id = static_cast<int>(flags.size()) - 1;
  vertices[v].flags.push_back(id);
  return id;
}

void GraphBuilder::pair_flags(int f1, int f2) {
  flags[f1].partner = f2;
  flags[f2].partner = f1;
}

void GraphBuilder::set_in_leg(int f, int label) {
  flags[f].leg_in = label;
  n_in = std::max(n_in, label);
}

void GraphBuilder::set_out_leg(int f, int label) {
  flags[f].leg_out = label;
  n_out = std::max(n_out, label);
}

void GraphBuilder::set_out_flag(int v, int f) { vertices[v].out_flag = f; }

OrientedGraph GraphBuilder::build() const {
  OrientedGraph g;
  g.family = family;
  g.directed = directed;
  g.n_in = n_in;
  g.n_out = n_out;
  g.vertices = vertices;
  g.flags = flags;
  for (int f = 0; f < static_cast<int>(flags.size()); ++f) {
    if (flags[f].partner > f) g.edges.push_back(Edge{f, flags[f].partner});
  }
  g.reset_reference_orientation();
  g.validate();
  return g;
}

namespace {

// Rebuild a graph after deleting edge `e` and merging its endpoints (for
// contraction) or verbatim with new ids. old->new flag map returned.
struct Rebuild {
  OrientedGraph g;
  std::vector<int> flag_map;  // old flag id -> new flag id (-1 dropped)
  std::vector<int> edge_map;  // old edge id -> new edge id (-1 dropped)
  std::vector<int> vertex_map;
};

}  // namespace

std::pair<OrientedGraph, int> contract_edge(const OrientedGraph& g, int e) {
  if (e < 0 || e >= g.num_edges()) throw GraphError("contract_edge: no such edge");
  if (g.is_self_loop(e))
    throw GraphError("contract_edge: cannot contract a self-loop");

  int fa = g.edges[e].a, fb = g.edges[e].b;
  int va = g.flags[fa].vertex, vb = g.flags[fb].vertex;
  // For directed graphs the parent keeps its out flag; the child's out flag
  // is consumed by the edge. Identify parent as the endpoint whose flag on e
  // is an in-flag.
  int parent = va, child = vb;
  if (g.directed) {
    if (g.is_out_flag(fa)) {
      parent = vb;
      child = va;
    } else {
      parent = va;
      child = vb;
    }
  } else if (vb < va) {
    parent = vb;
    child = va;
  }

  std::vector<int> vertex_map(g.num_vertices(), -1);
  int nv = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == child) continue;
    vertex_map[v] = nv++;
  }
  vertex_map[child] = vertex_map[parent];

  OrientedGraph out;
  // contraction of a trivalent graph leaves the trivalent family
  out.family = (g.family == GraphFamily::trivalent_closed) ? GraphFamily::stable_modular
                                                           : g.family;
  out.directed = g.directed;
  out.n_in = g.n_in;
  out.n_out = g.n_out;
  out.vertices.resize(nv);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == child) continue;
    out.vertices[vertex_map[v]].genus = g.vertices[v].genus;
  }
  out.vertices[vertex_map[parent]].genus =
      g.vertices[parent].genus + g.vertices[child].genus;

  std::vector<int> flag_map(g.num_flags(), -1);
  for (int f = 0; f < g.num_flags(); ++f) {
    if (f == fa || f == fb) continue;
    Flag fl = g.flags[f];
    fl.vertex = vertex_map[fl.vertex];
    out.flags.push_back(fl);
    flag_map[f] = static_cast<int>(out.flags.size()) - 1;
  }
  for (Flag& fl : out.flags)
    if (fl.partner >= 0) fl.partner = flag_map[fl.partner];
  for (int nf = 0; nf < static_cast<int>(out.flags.size()); ++nf)
    out.vertices[out.flags[nf].vertex].flags.push_back(nf);
  if (g.directed) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (v == child) continue;
      out.vertices[vertex_map[v]].out_flag = flag_map[g.vertices[v].out_flag];
    }
    // merged vertex keeps the parent's out flag (child's was consumed)
    out.vertices[vertex_map[parent]].out_flag = flag_map[g.vertices[parent].out_flag];
  }

  std::vector<int> edge_map(g.num_edges(), -1);
  for (int k = 0; k < g.num_edges(); ++k) {
    if (k == e) continue;
    out.edges.push_back(Edge{flag_map[g.edges[k].a], flag_map[g.edges[k].b]});
    edge_map[k] = static_cast<int>(out.edges.size()) - 1;
  }

  int sign = 1;
  if (g.directed) {
    // The in-flag of e is deleted from the global in-word; Koszul sign is
    // (-1)^{number of symbols before it}.
    int ein = g.is_out_flag(fa) ? fb : fa;
    out.in_word.clear();
    int pos = -1;
    for (int i = 0; i < static_cast<int>(g.in_word.size()); ++i) {
      if (g.in_word[i] == ein) {
        pos = i;
        continue;
      }
      out.in_word.push_back(flag_map[g.in_word[i]]);
    }
    if (pos < 0) throw GraphError("contract_edge: orientation word out of sync");
    if (pos % 2 == 1) sign = -sign;
    out.edge_order.clear();
    for (int k : g.edge_order)
      if (k != e) out.edge_order.push_back(edge_map[k]);
  } else {
    // Edge-word deletion sign, plus the H1 transport determinant computed by
    // the orientation machinery (graph_orientation.cpp).
    out.edge_order.clear();
    int pos = -1;
    for (int i = 0; i < static_cast<int>(g.edge_order.size()); ++i) {
      if (g.edge_order[i] == e) {
        pos = i;
        continue;
      }
      out.edge_order.push_back(edge_map[g.edge_order[i]]);
    }
    if (pos < 0) throw GraphError("contract_edge: edge order out of sync");
    if (pos % 2 == 1) sign = -sign;
  }

  out.vertex_order.clear();
  for (int v : g.vertex_order)
    if (v != child) out.vertex_order.push_back(vertex_map[v]);
  out.flag_orders.assign(nv, {});
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == child || v == parent) continue;
    for (int f : g.flag_orders[v]) out.flag_orders[vertex_map[v]].push_back(flag_map[f]);
  }
  // merged vertex: parent's flags with the contracted slot replaced in place
  // by the child's remaining flags (in the child's order)
  std::vector<int>& merged = out.flag_orders[vertex_map[parent]];
  int pflag = (g.flags[fa].vertex == parent) ? fa : fb;
  int cflag = (pflag == fa) ? fb : fa;
  for (int f : g.flag_orders[parent]) {
    if (f == pflag) {
      for (int cf : g.flag_orders[child])
        if (cf != cflag) merged.push_back(flag_map[cf]);
    } else {
      merged.push_back(flag_map[f]);
    }
  }

  out.bare_edges = g.bare_edges;
  if (!g.directed) sign *= h1_contraction_sign(g, e, out, edge_map);

  out.validate();
  return {out, sign};
}

namespace {

void append_graph(GraphBuilder& b, const OrientedGraph& g, std::vector<int>& flag_map,
                  std::vector<int>& vertex_map) {
  vertex_map.assign(g.num_vertices(), -1);
  flag_map.assign(g.num_flags(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) vertex_map[v] = b.add_vertex(g.vertices[v].genus);
  for (int f = 0; f < g.num_flags(); ++f) flag_map[f] = b.add_flag(vertex_map[g.flags[f].vertex]);
  for (const Edge& e : g.edges) b.pair_flags(flag_map[e.a], flag_map[e.b]);
  if (g.directed)
    for (int v = 0; v < g.num_vertices(); ++v)
      b.set_out_flag(vertex_map[v], flag_map[g.vertices[v].out_flag]);
}

}  // namespace

namespace {

bool is_bare_in(const OrientedGraph& g, int label) {
  for (auto& [i, o] : g.bare_edges)
    if (i == label) return true;
  return false;
}
bool is_bare_out(const OrientedGraph& g, int label) {
  for (auto& [i, o] : g.bare_edges)
    if (o == label) return true;
  return false;
}

}  // namespace

OrientedGraph graft(const OrientedGraph& host, const OrientedGraph& scion,
                    const std::vector<LegMatch>& matching) {
  if (host.family != scion.family) throw GraphError("graft: family mismatch");
  for (const LegMatch& m : matching) {
    bool bare = host.directed
                    ? (is_bare_out(host, m.host_leg) || is_bare_in(scion, m.scion_leg))
                    : (is_bare_in(host, m.host_leg) || is_bare_in(scion, m.scion_leg));
    if (bare) throw GraphError("graft: matching through identity components unsupported");
  }

  GraphBuilder b(host.family);
  std::vector<int> hf, hv, sf, sv;
  append_graph(b, host, hf, hv);
  append_graph(b, scion, sf, sv);

  std::vector<bool> host_used(std::max(host.n_out, host.n_in) + 1, false);
  std::vector<bool> scion_used(scion.n_in + 1, false);
  for (const LegMatch& m : matching) {
    int hleg, sleg;
    if (host.directed) {
      hleg = host.out_leg_flag(m.host_leg);
      sleg = scion.in_leg_flag(m.scion_leg);
      if (!host.flags[hleg].leg_out || !scion.flags[sleg].leg_in)
        throw GraphError("graft: direction clash on matched legs");
    } else {
      hleg = host.in_leg_flag(m.host_leg);
      sleg = scion.in_leg_flag(m.scion_leg);
    }
    if (host_used[m.host_leg] || scion_used[m.scion_leg])
      throw GraphError("graft: leg matched twice");
    host_used[m.host_leg] = true;
    scion_used[m.scion_leg] = true;
    int f1 = hf[hleg], f2 = sf[sleg];
    b.flags[f1].leg_out = b.flags[f1].leg_in = 0;
    b.flags[f2].leg_out = b.flags[f2].leg_in = 0;
    // OR(e) order of a grafted edge: host flag first.
    b.pair_flags(f1, f2);
  }

  // Relabel remaining legs host-first. An input/output slot is either a leg
  // flag or a bare-edge endpoint.
  struct Slot {
    int flag = -1;           // in the builder
    const OrientedGraph* src = nullptr;
    int bare_index = -1;     // index into src->bare_edges
  };
  std::map<std::pair<const OrientedGraph*, int>, int> new_in, new_out;

  int next_in = 0;
  auto take_inputs = [&](const OrientedGraph& g, const std::vector<int>& fmap,
                         bool skip_used) {
    for (int l = 1; l <= g.n_in; ++l) {
      if (skip_used && scion_used[l]) continue;
      if (!skip_used && !g.directed && &g == &host && host_used[l]) continue;
      if (is_bare_in(g, l)) {
        new_in[{&g, l}] = ++next_in;
        continue;
      }
      int f = fmap[g.in_leg_flag(l)];
      if (!b.flags[f].is_leg()) continue;  // consumed by matching
      b.set_in_leg(f, ++next_in);
      new_in[{&g, l}] = next_in;
    }
  };
  take_inputs(host, hf, false);
  take_inputs(scion, sf, true);
  b.n_in = next_in;

  int next_out = 0;
  auto take_outputs = [&](const OrientedGraph& g, const std::vector<int>& fmap) {
    for (int l = 1; l <= g.n_out; ++l) {
      if (is_bare_out(g, l)) {
        new_out[{&g, l}] = ++next_out;
        continue;
      }
      int f = fmap[g.out_leg_flag(l)];
      if (!b.flags[f].is_leg()) continue;
      b.set_out_leg(f, ++next_out);
      new_out[{&g, l}] = next_out;
    }
  };
  take_outputs(host, hf);
  take_outputs(scion, sf);
  b.n_out = next_out;

  OrientedGraph out = b.build();
  for (const OrientedGraph* g : {&host, &scion})
    for (auto& [i, o] : g->bare_edges)
      out.bare_edges.emplace_back(new_in.at({g, i}), new_out.at({g, o}));
  std::sort(out.bare_edges.begin(), out.bare_edges.end());
  out.validate();

  // orientation: host data first, then scion (in-words concatenated)
  if (out.directed) {
    out.in_word.clear();
    for (int f : host.in_word) out.in_word.push_back(hf[f]);
    for (int f : scion.in_word) out.in_word.push_back(sf[f]);
  }
  return out;
}

OrientedGraph self_glue(const OrientedGraph& g, int leg_a, int leg_b) {
  if (g.directed) throw GraphError("self_glue: modular graphs only");
  if (leg_a == leg_b) throw GraphError("self_glue: legs must differ");
  GraphBuilder b(g.family);
  std::vector<int> fm, vm;
  append_graph(b, g, fm, vm);
  int f1 = fm[g.in_leg_flag(leg_a)], f2 = fm[g.in_leg_flag(leg_b)];
  b.flags[f1].leg_in = b.flags[f2].leg_in = 0;
  b.pair_flags(f1, f2);
  int next = 0;
  for (int l = 1; l <= g.n_in; ++l) {
    if (l == leg_a || l == leg_b) continue;
    b.set_in_leg(fm[g.in_leg_flag(l)], ++next);
  }
  b.n_in = next;
  return b.build();
}

}  // namespace opforge
