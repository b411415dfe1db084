#include "opforge/graph_canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace opforge {

namespace {

bool is_leg_missing(const OrientedGraph& g, int label, bool input) {
  for (auto& [i, o] : g.bare_edges)
    if ((input ? i : o) == label) return true;
  return false;
}

// Vertex color: any isomorphism must preserve it. Leg labels pin vertices
// hard in the strict setting.
std::vector<std::string> vertex_colors(const OrientedGraph& g, bool strict) {
  std::vector<std::string> colors(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::ostringstream os;
    os << g.vertices[v].genus << "|" << g.valency(v) << "|" << g.in_valency(v) << "|";
    std::vector<int> in_labels, out_labels;
    int loops = 0;
    for (int f : g.vertices[v].flags) {
      if (g.flags[f].leg_in) in_labels.push_back(g.flags[f].leg_in);
      if (g.flags[f].leg_out) out_labels.push_back(g.flags[f].leg_out);
      if (!g.flags[f].is_leg() && g.flags[g.flags[f].partner].vertex == v) ++loops;
    }
    std::sort(in_labels.begin(), in_labels.end());
    std::sort(out_labels.begin(), out_labels.end());
    os << loops / 2 << "|";
    if (strict) {
      for (int l : in_labels) os << "i" << l;
      for (int l : out_labels) os << "o" << l;
    } else {
      os << "i" << in_labels.size() << "o" << out_labels.size();
    }
    colors[v] = os.str();
  }
  return colors;
}

// Encoding of the graph under a vertex numbering rank[v]; lexicographic
// minimum over numberings defines the canonical class key.
std::string encode_under(const OrientedGraph& g, const std::vector<int>& rank,
                         const std::vector<std::string>& colors,
                         const std::vector<int>& order) {
  std::ostringstream os;
  os << family_name(g.family) << "|" << g.n_in << "," << g.n_out << "|";
  for (int v : order) os << colors[v] << ";";
  os << "|";
  std::vector<std::pair<int, int>> es;
  for (const Edge& e : g.edges) {
    int u = g.flags[e.a].vertex, w = g.flags[e.b].vertex;
    if (g.directed) {
      int tail = g.is_out_flag(e.a) ? u : w;
      int head = g.is_out_flag(e.a) ? w : u;
      es.emplace_back(rank[tail], rank[head]);
    } else {
      es.emplace_back(std::min(rank[u], rank[w]), std::max(rank[u], rank[w]));
    }
  }
  std::sort(es.begin(), es.end());
  for (auto& [a, b] : es) os << a << "-" << b << ",";
  os << "|";
  std::vector<int> in_at(g.n_in + 1, -1), out_at(g.n_out + 1, -1);
  for (const Flag& f : g.flags) {
    if (f.is_leg() && f.leg_in) in_at[f.leg_in] = rank[f.vertex];
    if (f.is_leg() && f.leg_out) out_at[f.leg_out] = rank[f.vertex];
  }
  for (int l = 1; l <= g.n_in; ++l) os << in_at[l] << ",";
  os << "|";
  for (int l = 1; l <= g.n_out; ++l) os << out_at[l] << ",";
  os << "|";
  std::vector<std::pair<int, int>> bare = g.bare_edges;
  std::sort(bare.begin(), bare.end());
  for (auto& [i, o] : bare) os << i << ">" << o << ",";
  // directed: record which incident edge carries each vertex's out flag
  if (g.directed) {
    os << "|";
    std::vector<int> outs(g.num_vertices(), -2);
    for (int v = 0; v < g.num_vertices(); ++v) {
      int f = g.vertices[v].out_flag;
      outs[rank[v]] = g.flags[f].is_leg() ? -1 : rank[g.flags[g.flags[f].partner].vertex];
    }
    for (int v = 0; v < g.num_vertices(); ++v) os << outs[v] << ",";
  }
  return os.str();
}

// All vertex orderings compatible with the color classes (classes sorted by
// color key, permutations within classes).
void for_each_ordering(const OrientedGraph& g, const std::vector<std::string>& colors,
                       const std::function<void(const std::vector<int>&)>& fn) {
  std::map<std::string, std::vector<int>> classes;
  for (int v = 0; v < g.num_vertices(); ++v) classes[colors[v]].push_back(v);
  std::vector<std::vector<int>> groups;
  for (auto& [k, vs] : classes) groups.push_back(vs);
  std::vector<int> order;
  std::function<void(size_t)> rec = [&](size_t gi) {
    if (gi == groups.size()) {
      fn(order);
      return;
    }
    std::vector<int>& grp = groups[gi];
    std::sort(grp.begin(), grp.end());
    do {
      order.insert(order.end(), grp.begin(), grp.end());
      rec(gi + 1);
      order.resize(order.size() - grp.size());
    } while (std::next_permutation(grp.begin(), grp.end()));
  };
  rec(0);
}

// Reconstructs the canonical representative from the winning ordering and
// returns the flag-level isomorphism g -> canonical.
struct RebuiltCanon {
  OrientedGraph graph;
  GraphIso iso;
};

RebuiltCanon rebuild(const OrientedGraph& g, const std::vector<int>& order) {
  int V = g.num_vertices();
  std::vector<int> rank(V);
  for (int r = 0; r < V; ++r) rank[order[r]] = r;

  GraphBuilder b(g.family);
  for (int r = 0; r < V; ++r) b.add_vertex(g.vertices[order[r]].genus);

  GraphIso iso;
  iso.flag_map.assign(g.num_flags(), -1);
  iso.vertex_map = rank;
  iso.edge_map.assign(g.num_edges(), -1);

  // Edges sorted by (rank pair, then original edge id for determinism among
  // parallels). Flags created tail-first (directed) / low-rank-first.
  std::vector<std::pair<std::pair<int, int>, int>> es;
  for (int e = 0; e < g.num_edges(); ++e) {
    int u = g.flags[g.edges[e].a].vertex, w = g.flags[g.edges[e].b].vertex;
    std::pair<int, int> key;
    if (g.directed) {
      int tail = g.is_out_flag(g.edges[e].a) ? u : w;
      int head = (tail == u) ? w : u;
      key = {rank[tail], rank[head]};
    } else {
      key = {std::min(rank[u], rank[w]), std::max(rank[u], rank[w])};
    }
    es.push_back({key, e});
  }
  std::sort(es.begin(), es.end());
  for (auto& [key, e] : es) {
    int fa = g.edges[e].a, fb = g.edges[e].b;
    int first, second;
    if (g.directed) {
      first = g.is_out_flag(fa) ? fa : fb;  // tail flag first
      second = (first == fa) ? fb : fa;
    } else {
      int ra = rank[g.flags[fa].vertex], rb = rank[g.flags[fb].vertex];
      if (ra < rb || (ra == rb && fa < fb)) {
        first = fa;
        second = fb;
      } else {
        first = fb;
        second = fa;
      }
    }
    int nf1 = b.add_flag(rank[g.flags[first].vertex]);
    int nf2 = b.add_flag(rank[g.flags[second].vertex]);
    b.pair_flags(nf1, nf2);
    iso.flag_map[first] = nf1;
    iso.flag_map[second] = nf2;
    iso.edge_map[e] = static_cast<int>(b.flags.size() / 2) - 1;
  }
  // legs in label order
  for (int l = 1; l <= g.n_in; ++l) {
    bool found = false;
    for (int f = 0; f < g.num_flags(); ++f)
      if (g.flags[f].is_leg() && g.flags[f].leg_in == l) {
        int nf = b.add_flag(rank[g.flags[f].vertex]);
        b.set_in_leg(nf, l);
        iso.flag_map[f] = nf;
        found = true;
      }
    if (!found) b.n_in = std::max(b.n_in, l);  // bare-edge label
  }
  for (int l = 1; l <= g.n_out; ++l) {
    bool found = false;
    for (int f = 0; f < g.num_flags(); ++f)
      if (g.flags[f].is_leg() && g.flags[f].leg_out == l) {
        int nf = b.add_flag(rank[g.flags[f].vertex]);
        b.set_out_leg(nf, l);
        iso.flag_map[f] = nf;
        found = true;
      }
    if (!found) b.n_out = std::max(b.n_out, l);
  }
  if (g.directed)
    for (int v = 0; v < V; ++v)
      b.set_out_flag(rank[v], iso.flag_map[g.vertices[v].out_flag]);

  RebuiltCanon out{b.build(), std::move(iso)};
  out.graph.bare_edges = g.bare_edges;
  std::sort(out.graph.bare_edges.begin(), out.graph.bare_edges.end());
  out.graph.validate();
  return out;
}

// edge ids in the rebuilt graph are assigned pair-creation order; recompute
// edge_map from flag_map to be safe.
void fix_edge_map(const OrientedGraph& g, const OrientedGraph& h, GraphIso& iso) {
  iso.edge_map.assign(g.num_edges(), -1);
  for (int e = 0; e < g.num_edges(); ++e) {
    int nf = iso.flag_map[g.edges[e].a];
    for (int ne = 0; ne < h.num_edges(); ++ne)
      if (h.edges[ne].a == nf || h.edges[ne].b == nf) {
        iso.edge_map[e] = ne;
        break;
      }
  }
}

}  // namespace

Convention default_convention(GraphFamily f) {
  switch (f) {
    case GraphFamily::tree:
    case GraphFamily::prop_graph:
      return Convention::inset;
    case GraphFamily::stable_modular:
    case GraphFamily::trivalent_closed:
      return Convention::edgecycle;
  }
  return Convention::edgecycle;
}

CanonicalForm canonical_form(const OrientedGraph& g) {
  return canonical_form(g, default_convention(g.family));
}

CanonicalForm canonical_form(const OrientedGraph& g, Convention c) {
  std::vector<std::string> colors = vertex_colors(g, /*strict=*/true);
  std::string best;
  std::vector<int> best_order;
  std::vector<int> rank(g.num_vertices());
  for_each_ordering(g, colors, [&](const std::vector<int>& order) {
    for (int r = 0; r < static_cast<int>(order.size()); ++r) rank[order[r]] = r;
    std::string enc = encode_under(g, rank, colors, order);
    if (best.empty() || enc < best) {
      best = enc;
      best_order = order;
    }
  });
  if (g.num_vertices() == 0) {
    // nothing to order; empty or bare-edge-only graphs are their own form
    CanonicalForm cf;
    cf.graph = g;
    cf.graph.reset_reference_orientation();
    cf.sign = 1;
    cf.zero_class = false;
    cf.key = best;
    return cf;
  }

  RebuiltCanon rc = rebuild(g, best_order);
  fix_edge_map(g, rc.graph, rc.iso);

  CanonicalForm cf;
  cf.sign = iso_orientation_sign(g, rc.graph, rc.iso, c);
  cf.graph = std::move(rc.graph);
  cf.key = best;

  for (const Automorphism& a : automorphisms(cf.graph, /*strict=*/true, c))
    if (a.sign < 0) {
      cf.zero_class = true;
      break;
    }
  return cf;
}

std::vector<GraphIso> strict_isomorphisms(const OrientedGraph& g, const OrientedGraph& h) {
  std::vector<GraphIso> out;
  if (g.num_vertices() != h.num_vertices() || g.num_edges() != h.num_edges() ||
      g.n_in != h.n_in || g.n_out != h.n_out || g.directed != h.directed)
    return out;
  {
    auto bg = g.bare_edges, bh = h.bare_edges;
    std::sort(bg.begin(), bg.end());
    std::sort(bh.begin(), bh.end());
    if (bg != bh) return out;
  }

  std::vector<std::string> gc = vertex_colors(g, true), hc = vertex_colors(h, true);
  {
    auto a = gc, b = hc;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return out;
  }

  int V = g.num_vertices();
  std::vector<int> vmap(V, -1);
  std::vector<bool> used(V, false);

  // adjacency multiset check once a full vertex map is chosen, then flag-level
  // expansion over parallel-edge matchings and loop flips.
  auto edge_key = [](const OrientedGraph& gr, int e, const std::vector<int>* map) {
    int u = gr.flags[gr.edges[e].a].vertex, w = gr.flags[gr.edges[e].b].vertex;
    if (map) {
      u = (*map)[u];
      w = (*map)[w];
    }
    if (gr.directed) {
      int tail = gr.is_out_flag(gr.edges[e].a) ? gr.flags[gr.edges[e].a].vertex
                                               : gr.flags[gr.edges[e].b].vertex;
      int head = gr.flags[gr.edges[e].a].vertex == tail ? gr.flags[gr.edges[e].b].vertex
                                                        : gr.flags[gr.edges[e].a].vertex;
      if (map) {
        tail = (*map)[tail];
        head = (*map)[head];
      }
      return std::make_pair(tail, head);
    }
    return std::make_pair(std::min(u, w), std::max(u, w));
  };

  std::function<void(int)> expand_flags;
  std::function<void(int)> rec = [&](int v) {
    if (v == V) {
      // group edges by mapped key; keys must match as multisets
      std::map<std::pair<int, int>, std::vector<int>> ge, he;
      for (int e = 0; e < g.num_edges(); ++e) ge[edge_key(g, e, &vmap)].push_back(e);
      for (int e = 0; e < h.num_edges(); ++e) he[edge_key(h, e, nullptr)].push_back(e);
      if (ge.size() != he.size()) return;
      for (auto& [k, v1] : ge) {
        auto it = he.find(k);
        if (it == he.end() || it->second.size() != v1.size()) return;
      }
      // legs must correspond vertex-wise
      for (int l = 1; l <= g.n_in; ++l) {
        bool gb = is_leg_missing(g, l, true), hb = is_leg_missing(h, l, true);
        if (gb != hb) return;
        if (!gb && vmap[g.flags[g.in_leg_flag(l)].vertex] != h.flags[h.in_leg_flag(l)].vertex)
          return;
      }
      for (int l = 1; l <= g.n_out; ++l) {
        bool gb = is_leg_missing(g, l, false), hb = is_leg_missing(h, l, false);
        if (gb != hb) return;
        if (!gb &&
            vmap[g.flags[g.out_leg_flag(l)].vertex] != h.flags[h.out_leg_flag(l)].vertex)
          return;
      }

      // flag-level expansion: per key, all bijections between parallel
      // bundles; per matched edge pair, flips where allowed
      std::vector<std::pair<std::vector<int>, std::vector<int>>> bundles;
      for (auto& [k, v1] : ge) bundles.push_back({v1, he[k]});

      GraphIso iso;
      iso.vertex_map = vmap;
      iso.flag_map.assign(g.num_flags(), -1);
      iso.edge_map.assign(g.num_edges(), -1);
      // legs map by label
      for (int f = 0; f < g.num_flags(); ++f)
        if (g.flags[f].is_leg()) {
          int nf = g.flags[f].leg_in ? h.in_leg_flag(g.flags[f].leg_in)
                                     : h.out_leg_flag(g.flags[f].leg_out);
          iso.flag_map[f] = nf;
        }

      std::function<void(size_t)> match_bundle = [&](size_t bi) {
        if (bi == bundles.size()) {
          out.push_back(iso);
          return;
        }
        auto& [gset, hset] = bundles[bi];
        std::vector<int> perm(hset.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
          // try this bundle matching with all flip choices
          std::function<void(size_t)> assign = [&](size_t k) {
            if (k == gset.size()) {
              match_bundle(bi + 1);
              return;
            }
            int e = gset[k], ne = hset[perm[k]];
            int ga = g.edges[e].a, gb2 = g.edges[e].b;
            int ha = h.edges[ne].a, hb2 = h.edges[ne].b;
            auto try_assign = [&](int f1, int t1, int f2, int t2) {
              // direction and vertex consistency
              if (vmap[g.flags[f1].vertex] != h.flags[t1].vertex) return;
              if (vmap[g.flags[f2].vertex] != h.flags[t2].vertex) return;
              if (g.directed && (g.is_out_flag(f1) != h.is_out_flag(t1) ||
                                 g.is_out_flag(f2) != h.is_out_flag(t2)))
                return;
              iso.flag_map[f1] = t1;
              iso.flag_map[f2] = t2;
              iso.edge_map[e] = ne;
              assign(k + 1);
              iso.flag_map[f1] = iso.flag_map[f2] = -1;
            };
            try_assign(ga, ha, gb2, hb2);
            try_assign(ga, hb2, gb2, ha);
          };
          assign(0);
        } while (std::next_permutation(perm.begin(), perm.end()));
      };
      match_bundle(0);
      return;
    }
    for (int w = 0; w < V; ++w) {
      if (used[w] || gc[v] != hc[w]) continue;
      vmap[v] = w;
      used[w] = true;
      rec(v + 1);
      used[w] = false;
      vmap[v] = -1;
    }
  };
  rec(0);
  return out;
}

std::vector<Automorphism> automorphisms(const OrientedGraph& g, bool strict) {
  return automorphisms(g, strict, default_convention(g.family));
}

std::vector<Automorphism> automorphisms(const OrientedGraph& g, bool strict, Convention c) {
  std::vector<Automorphism> out;
  if (strict) {
    for (GraphIso& iso : strict_isomorphisms(g, g)) {
      Automorphism a;
      a.sign = iso_orientation_sign(g, g, iso, c);
      a.iso = std::move(iso);
      out.push_back(std::move(a));
    }
    return out;
  }
  // Non-strict: allow permutations of the input legs (and of the output
  // legs). Relabel legs in all ways, then use strict isomorphism search.
  std::vector<int> in_perm(g.n_in);
  std::iota(in_perm.begin(), in_perm.end(), 1);
  do {
    std::vector<int> out_perm(g.n_out);
    std::iota(out_perm.begin(), out_perm.end(), 1);
    do {
      OrientedGraph relabeled = g;
      for (Flag& f : relabeled.flags) {
        if (f.leg_in) f.leg_in = in_perm[f.leg_in - 1];
        if (f.leg_out) f.leg_out = out_perm[f.leg_out - 1];
      }
      for (auto& [i, o] : relabeled.bare_edges) {
        i = in_perm[i - 1];
        o = out_perm[o - 1];
      }
      for (GraphIso& iso : strict_isomorphisms(relabeled, g)) {
        Automorphism a;
        a.sign = iso_orientation_sign(relabeled, g, iso, c);
        a.iso = std::move(iso);
        out.push_back(std::move(a));
      }
    } while (std::next_permutation(out_perm.begin(), out_perm.end()));
  } while (std::next_permutation(in_perm.begin(), in_perm.end()));
  return out;
}

}  // namespace opforge
