#include "opforge/graph_enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace opforge {

namespace {

// ---- structural enumeration of trees and wheels --------------------------

struct Node {
  int leaf = 0;  // leg label if > 0
  std::vector<Node> children;
};

void set_partitions(const std::vector<int>& elems, int min_blocks,
                    const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
  int n = static_cast<int>(elems.size());
  std::vector<int> assign(n, 0);
  std::function<void(int, int)> rec = [&](int i, int maxb) {
    if (i == n) {
      int nb = maxb + 1;
      if (nb < min_blocks) return;
      std::vector<std::vector<int>> blocks(nb);
      for (int k = 0; k < n; ++k) blocks[assign[k]].push_back(elems[k]);
      fn(blocks);
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      assign[i] = b;
      rec(i + 1, std::max(maxb, b));
    }
  };
  if (n == 0) return;
  assign[0] = 0;
  rec(1, 0);
}

template <class T>
void cartesian(const std::vector<std::vector<T>>& options,
               const std::function<void(const std::vector<T>&)>& fn) {
  std::vector<T> pick(options.size());
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == options.size()) {
      fn(pick);
      return;
    }
    for (const T& o : options[i]) {
      pick[i] = o;
      rec(i + 1);
    }
  };
  rec(0);
}

// Trees on leaf set S (|S| >= 2): root with >= 2 children, each child a leaf
// or a smaller tree. No isomorphic duplicates arise (leaves are labeled).
std::vector<Node> enumerate_tree_nodes(const std::vector<int>& S) {
  std::vector<Node> out;
  set_partitions(S, 2, [&](const std::vector<std::vector<int>>& blocks) {
    std::vector<std::vector<Node>> options;
    for (const auto& b : blocks) {
      if (b.size() == 1) {
        Node l;
        l.leaf = b[0];
        options.push_back({l});
      } else {
        options.push_back(enumerate_tree_nodes(b));
      }
    }
    cartesian<Node>(options, [&](const std::vector<Node>& pick) {
      Node root;
      root.children = pick;
      out.push_back(root);
    });
  });
  return out;
}

// Brooms: a cycle vertex's hanging inputs; root with >= 1 children.
std::vector<Node> enumerate_broom_nodes(const std::vector<int>& S) {
  std::vector<Node> out;
  set_partitions(S, 1, [&](const std::vector<std::vector<int>>& blocks) {
    std::vector<std::vector<Node>> options;
    for (const auto& b : blocks) {
      if (b.size() == 1) {
        Node l;
        l.leaf = b[0];
        options.push_back({l});
      } else {
        options.push_back(enumerate_tree_nodes(b));
      }
    }
    cartesian<Node>(options, [&](const std::vector<Node>& pick) {
      Node root;
      root.children = pick;
      out.push_back(root);
    });
  });
  return out;
}

// Wheels on input set B: cyclic sequences of brooms; rotations are
// normalized by putting min(B)'s block first.
struct Wheel {
  std::vector<Node> brooms;
};

std::vector<Wheel> enumerate_wheels(const std::vector<int>& B, bool allow_self_loops,
                                    bool allow_parallel) {
  std::vector<Wheel> out;
  int n = static_cast<int>(B.size());
  int mn = *std::min_element(B.begin(), B.end());
  for (int c = 1; c <= n; ++c) {
    if (c == 1 && !allow_self_loops) continue;
    if (c == 2 && !allow_parallel) continue;
    // ordered partitions of B into c non-empty blocks, min element in block 0
    std::vector<std::vector<std::vector<int>>> arrangements;
    std::vector<std::vector<int>> blocks(c);
    std::function<void(size_t)> place = [&](size_t i) {
      if (i == B.size()) {
        for (const auto& b : blocks)
          if (b.empty()) return;
        if (std::find(blocks[0].begin(), blocks[0].end(), mn) == blocks[0].end()) return;
        arrangements.push_back(blocks);
        return;
      }
      for (int b = 0; b < c; ++b) {
        blocks[b].push_back(B[i]);
        place(i + 1);
        blocks[b].pop_back();
      }
    };
    place(0);
    for (const auto& arr : arrangements) {
      std::vector<std::vector<Node>> options;
      for (const auto& b : arr) options.push_back(enumerate_broom_nodes(b));
      cartesian<Node>(options, [&](const std::vector<Node>& pick) {
        Wheel w;
        w.brooms = pick;
        out.push_back(w);
      });
    }
  }
  return out;
}

// ---- assembly -------------------------------------------------------------

// Builds the subtree rooted at `node` and returns the root vertex; the
// root's out flag is created but left unpaired (caller wires it).
int build_node(GraphBuilder& b, const Node& node, int& out_flag) {
  int v = b.add_vertex();
  for (const Node& ch : node.children) {
    if (ch.leaf > 0) {
      int f = b.add_flag(v);
      b.set_in_leg(f, ch.leaf);
    } else {
      int cf;
      int cv = build_node(b, ch, cf);
      int pf = b.add_flag(v);
      b.pair_flags(cf, pf);  // child out flag first in OR(e)
      (void)cv;
    }
  }
  out_flag = b.add_flag(v);
  b.set_out_flag(v, out_flag);
  return v;
}

void build_tree_component(GraphBuilder& b, const Node& root, int out_label) {
  int of;
  build_node(b, root, of);
  b.set_out_leg(of, out_label);
}

void build_wheel_component(GraphBuilder& b, const Wheel& w) {
  int c = static_cast<int>(w.brooms.size());
  std::vector<int> roots(c), out_flags(c);
  for (int i = 0; i < c; ++i) roots[i] = build_node(b, w.brooms[i], out_flags[i]);
  for (int i = 0; i < c; ++i) {
    int nxt = (i + 1) % c;
    int in_f = b.add_flag(roots[nxt]);
    b.pair_flags(out_flags[i], in_f);
  }
}

// ---- family enumerations --------------------------------------------------

std::vector<OrientedGraph> raw_trees(const GraphClassSpec& spec) {
  std::vector<OrientedGraph> out;
  std::vector<int> S(spec.legs_in);
  std::iota(S.begin(), S.end(), 1);
  if (spec.legs_in == 1) {
    OrientedGraph g;
    g.family = GraphFamily::tree;
    g.directed = true;
    g.n_in = g.n_out = 1;
    g.bare_edges = {{1, 1}};
    g.reset_reference_orientation();
    out.push_back(g);
    return out;
  }
  for (const Node& t : enumerate_tree_nodes(S)) {
    GraphBuilder b(GraphFamily::tree);
    build_tree_component(b, t, 1);
    OrientedGraph g = b.build();
    if (g.num_vertices() <= spec.max_vertices) out.push_back(g);
  }
  return out;
}

std::vector<OrientedGraph> raw_prop_graphs(const GraphClassSpec& spec) {
  std::vector<OrientedGraph> out;
  int n = spec.legs_in, m = spec.legs_out;
  // assignment of inputs: 0..m-1 = tree block of that output, m = wheel pool
  std::vector<int> assign(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i < n) {
      for (int a = 0; a <= m; ++a) {
        assign[i] = a;
        rec(i + 1);
      }
      return;
    }
    std::vector<std::vector<int>> tree_blocks(m);
    std::vector<int> pool;
    for (int k = 0; k < n; ++k) {
      if (assign[k] < m)
        tree_blocks[assign[k]].push_back(k + 1);
      else
        pool.push_back(k + 1);
    }
    for (const auto& tb : tree_blocks)
      if (tb.empty()) return;  // every output needs a tree

    // options per tree block
    std::vector<std::vector<Node>> tree_options(m);
    std::vector<bool> bare(m, false);
    for (int j = 0; j < m; ++j) {
      if (tree_blocks[j].size() == 1) {
        bare[j] = true;  // identity wire
        Node dummy;
        tree_options[j] = {dummy};
      } else {
        tree_options[j] = enumerate_tree_nodes(tree_blocks[j]);
        if (tree_options[j].empty()) return;
      }
    }

    // wheel pool: set partitions into wheel groups, wheels per group
    auto emit = [&](const std::vector<Node>& trees,
                    const std::vector<std::vector<Wheel>>& wheel_pick) {
      GraphBuilder b(GraphFamily::prop_graph);
      std::vector<std::pair<int, int>> bares;
      for (int j = 0; j < m; ++j) {
        if (bare[j])
          bares.emplace_back(tree_blocks[j][0], j + 1);
        else
          build_tree_component(b, trees[j], j + 1);
      }
      for (const auto& ws : wheel_pick)
        for (const Wheel& w : ws) build_wheel_component(b, w);
      b.n_in = n;
      b.n_out = m;
      OrientedGraph g = b.build();
      g.bare_edges = bares;
      std::sort(g.bare_edges.begin(), g.bare_edges.end());
      g.validate();
      if (g.num_vertices() <= spec.max_vertices) out.push_back(g);
    };

    auto with_wheels = [&](const std::vector<Node>& trees) {
      if (pool.empty()) {
        emit(trees, {});
        return;
      }
      set_partitions(pool, 1, [&](const std::vector<std::vector<int>>& groups) {
        std::vector<std::vector<Wheel>> options;
        for (const auto& grp : groups) {
          options.push_back(
              enumerate_wheels(grp, spec.allow_self_loops, spec.allow_parallel_edges));
          if (options.back().empty()) return;
        }
        cartesian<Wheel>(options, [&](const std::vector<Wheel>& pick) {
          std::vector<std::vector<Wheel>> single;
          for (const Wheel& w : pick) single.push_back({w});
          emit(trees, single);
        });
      });
    };

    cartesian<Node>(tree_options, [&](const std::vector<Node>& trees) {
      with_wheels(trees);
    });
  };
  rec(0);
  return out;
}

std::vector<OrientedGraph> raw_stable_graphs(const GraphClassSpec& spec, bool trivalent) {
  std::vector<OrientedGraph> out;
  int n = spec.legs_in;
  long candidates = 0;

  for (int V = 1; V <= spec.max_vertices; ++V) {
    // genus label distributions
    std::vector<std::vector<int>> label_choices;
    if (spec.zero_genus_labels || trivalent) {
      label_choices.push_back(std::vector<int>(V, 0));
    } else {
      std::vector<int> labels(V, 0);
      std::function<void(int, int)> dist = [&](int i, int left) {
        if (i == V) {
          if (left >= 0) label_choices.push_back(labels);
          return;
        }
        for (int gv = 0; gv <= left; ++gv) {
          labels[i] = gv;
          dist(i + 1, left - gv);
        }
      };
      dist(0, spec.genus);
    }

    for (const auto& labels : label_choices) {
      int label_sum = 0;
      for (int gv : labels) label_sum += gv;
      int h1;
      int E;
      if (trivalent) {
        if ((3 * V) % 2 != 0 || n != 0) continue;
        E = 3 * V / 2;
        h1 = E - V + 1;
      } else {
        h1 = spec.genus - label_sum;
        if (h1 < 0) continue;
        E = h1 + V - 1;  // connected
        if (E < 0) continue;
      }

      // pair slots (loops first when allowed)
      std::vector<std::pair<int, int>> slots;
      for (int i = 0; i < V; ++i) {
        if (spec.allow_self_loops) slots.emplace_back(i, i);
        for (int j = i + 1; j < V; ++j) slots.emplace_back(i, j);
      }

      std::vector<int> degree(V, 0);
      std::vector<std::pair<int, int>> chosen;

      auto emit = [&]() {
        std::vector<int> leg_at(n, 0);
        std::function<void(int)> legs = [&](int li) {
          if (li == n) {
            if (++candidates > spec.class_size_guard)
              throw GuardError("enumerate_graphs: class size guard exceeded");
            std::vector<int> val = degree;
            for (int l = 0; l < n; ++l) ++val[leg_at[l]];
            for (int v = 0; v < V; ++v) {
              if (trivalent && val[v] != 3) return;
              if (!trivalent && 2 * (labels[v] - 1) + val[v] <= 0) return;
              if (val[v] == 0) return;
            }
            GraphBuilder b(trivalent ? GraphFamily::trivalent_closed
                                     : GraphFamily::stable_modular);
            for (int v = 0; v < V; ++v) b.add_vertex(labels[v]);
            for (auto& [u, w] : chosen) {
              int f1 = b.add_flag(u), f2 = b.add_flag(w);
              b.pair_flags(f1, f2);
            }
            for (int l = 0; l < n; ++l) {
              int f = b.add_flag(leg_at[l]);
              b.set_in_leg(f, l + 1);
            }
            b.n_in = n;
            OrientedGraph g = b.build();
            if (g.num_components() != 1) return;
            out.push_back(std::move(g));
            return;
          }
          for (int v = 0; v < V; ++v) {
            leg_at[li] = v;
            legs(li + 1);
          }
        };
        legs(0);
      };

      std::function<void(size_t, int)> pick = [&](size_t si, int left) {
        if (left == 0) {
          emit();
          return;
        }
        if (si == slots.size()) return;
        auto [u, w] = slots[si];
        int maxmult = left;
        if (!spec.allow_parallel_edges && u != w) maxmult = std::min(maxmult, 1);
        int added = 0;
        for (int mult = 0; mult <= maxmult; ++mult) {
          if (mult > 0) {
            degree[u] += (u == w) ? 2 : 1;
            if (u != w) ++degree[w];
            chosen.emplace_back(u, w);
            ++added;
            if (trivalent && (degree[u] > 3 || degree[w] > 3)) break;
          }
          pick(si + 1, left - mult);
        }
        degree[u] -= added * ((u == w) ? 2 : 1);
        if (u != w) degree[w] -= added;
        chosen.resize(chosen.size() - added);
      };
      pick(0, E);
    }
  }
  return out;
}

}  // namespace

std::vector<CanonicalForm> enumerate_graphs(const GraphClassSpec& spec) {
  spec.check();
  std::vector<OrientedGraph> raw;
  switch (spec.family) {
    case GraphFamily::tree:
      raw = raw_trees(spec);
      break;
    case GraphFamily::prop_graph:
      raw = raw_prop_graphs(spec);
      break;
    case GraphFamily::stable_modular:
      raw = raw_stable_graphs(spec, false);
      break;
    case GraphFamily::trivalent_closed:
      raw = raw_stable_graphs(spec, true);
      break;
  }
  if (static_cast<long>(raw.size()) > spec.class_size_guard)
    throw GuardError("enumerate_graphs: class size guard exceeded");

  std::map<std::string, CanonicalForm> classes;
  for (const OrientedGraph& g : raw) {
    CanonicalForm cf = canonical_form(g);
    classes.emplace(cf.key, std::move(cf));
  }
  std::vector<CanonicalForm> out;
  out.reserve(classes.size());
  for (auto& [k, cf] : classes) out.push_back(std::move(cf));
  return out;
}

}  // namespace opforge
