#include <doctest.h>

#include <set>

#include "opforge/graph_enumerate.hpp"
#include "opforge/json_io.hpp"
#include "oracles.hpp"

using namespace opforge;

namespace {

GraphClassSpec tree_spec(int n) {
  GraphClassSpec s;
  s.family = GraphFamily::tree;
  s.legs_in = n;
  s.legs_out = 1;
  return s;
}

OrientedGraph theta_graph() {
  GraphBuilder b(GraphFamily::trivalent_closed);
  int u = b.add_vertex(), v = b.add_vertex();
  for (int k = 0; k < 3; ++k) {
    int f1 = b.add_flag(u), f2 = b.add_flag(v);
    b.pair_flags(f1, f2);
  }
  return b.build();
}

OrientedGraph k4_graph() {
  GraphBuilder b(GraphFamily::trivalent_closed);
  for (int i = 0; i < 4; ++i) b.add_vertex();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      int f1 = b.add_flag(i), f2 = b.add_flag(j);
      b.pair_flags(f1, f2);
    }
  return b.build();
}

// two binary vertices joined by an edge: [x1,x2] fed into slot 1 of [x-,x3]
OrientedGraph two_vertex_tree() {
  GraphBuilder b(GraphFamily::tree);
  int top = b.add_vertex(), low = b.add_vertex();
  int lf1 = b.add_flag(low), lf2 = b.add_flag(low), lout = b.add_flag(low);
  b.set_in_leg(lf1, 1);
  b.set_in_leg(lf2, 2);
  b.set_out_flag(low, lout);
  int tin1 = b.add_flag(top), tin2 = b.add_flag(top), tout = b.add_flag(top);
  b.pair_flags(lout, tin1);
  b.set_in_leg(tin2, 3);
  b.set_out_flag(top, tout);
  b.set_out_leg(tout, 1);
  return b.build();
}

}  // namespace

TEST_CASE("tree enumeration: n=2 corolla only; counts match the naive oracle") {
  auto t2 = enumerate_graphs(tree_spec(2));
  REQUIRE(t2.size() == 1);
  CHECK(t2[0].graph.num_vertices() == 1);
  CHECK(t2[0].graph.in_valency(0) == 2);

  for (int n = 3; n <= 5; ++n) {
    auto tn = enumerate_graphs(tree_spec(n));
    CHECK(static_cast<long>(tn.size()) == oracle::count_series_reduced_trees(n));
    for (const auto& cf : tn) {
      CanonicalForm again = canonical_form(cf.graph);
      CHECK(again.key == cf.key);
      CHECK(again.sign == 1);
    }
  }
  auto t4 = enumerate_graphs(tree_spec(4));
  std::map<int, int> by_vertices;
  for (const auto& cf : t4) by_vertices[cf.graph.num_vertices()]++;
  CHECK(by_vertices[1] == 1);
  CHECK(by_vertices[2] == 10);
  CHECK(by_vertices[3] == 15);
}

TEST_CASE("trivalent closed enumeration: theta is the only 2-vertex loopless graph") {
  GraphClassSpec s;
  s.family = GraphFamily::trivalent_closed;
  s.max_vertices = 2;
  s.allow_self_loops = false;
  auto gs = enumerate_graphs(s);
  REQUIRE(gs.size() == 1);
  CHECK(gs[0].graph.num_edges() == 3);
  CHECK(!gs[0].zero_class);
}

TEST_CASE("canonical form: idempotence and edge-swap sign (edgecycle)") {
  OrientedGraph theta = theta_graph();
  CanonicalForm cf = canonical_form(theta, Convention::edgecycle);
  CHECK(cf.sign == 1);

  OrientedGraph swapped = cf.graph;
  std::swap(swapped.edge_order[0], swapped.edge_order[1]);
  CanonicalForm cf2 = canonical_form(swapped, Convention::edgecycle);
  CHECK(cf2.key == cf.key);
  CHECK(cf2.sign == -1);
}

TEST_CASE("automorphisms: corolla trivial, theta of order 12, bare edge trivial") {
  auto t3 = enumerate_graphs(tree_spec(3));
  for (const auto& cf : t3) {
    if (cf.graph.num_vertices() != 1) continue;
    auto autos = automorphisms(cf.graph, /*strict=*/true);
    CHECK(autos.size() == 1);
  }

  OrientedGraph theta = theta_graph();
  auto autos = automorphisms(theta, /*strict=*/false);
  CHECK(autos.size() == 12);

  std::set<int> ec_signs, ve_signs, fl_signs;
  for (const auto& a : automorphisms(theta, true, Convention::edgecycle))
    ec_signs.insert(a.sign);
  for (const auto& a : automorphisms(theta, true, Convention::vertedge))
    ve_signs.insert(a.sign);
  for (const auto& a : automorphisms(theta, true, Convention::flag))
    fl_signs.insert(a.sign);
  CHECK(ec_signs == std::set<int>{1});
  CHECK(ve_signs == std::set<int>{1});
  CHECK(fl_signs == std::set<int>{1});

  OrientedGraph bare;
  bare.family = GraphFamily::prop_graph;
  bare.directed = true;
  bare.n_in = bare.n_out = 1;
  bare.bare_edges = {{1, 1}};
  bare.reset_reference_orientation();
  CHECK(automorphisms(bare, true).size() == 1);
}

TEST_CASE("orientation transport: identity, Aut-equivariance, round trip") {
  for (OrientedGraph g : {theta_graph(), k4_graph()}) {
    CHECK(transport_orientation(g, Convention::edgecycle, Convention::edgecycle) == 1);

    int s1 = transport_orientation(g, Convention::vertedge, Convention::edgecycle);
    int s2 = transport_orientation(g, Convention::edgecycle, Convention::flag);
    int s3 = transport_orientation(g, Convention::flag, Convention::vertedge);
    CHECK(s1 * s2 * s3 == 1);

    auto base = automorphisms(g, false, Convention::edgecycle);
    auto ve = automorphisms(g, false, Convention::vertedge);
    auto fl = automorphisms(g, false, Convention::flag);
    REQUIRE(base.size() == ve.size());
    REQUIRE(base.size() == fl.size());
    for (size_t i = 0; i < base.size(); ++i) {
      CHECK(base[i].sign == ve[i].sign);
      CHECK(base[i].sign == fl[i].sign);
    }
  }
}

TEST_CASE("transport with self-loops rejects flag conversions; dumbbell is a zero class") {
  GraphBuilder b(GraphFamily::trivalent_closed);
  int u = b.add_vertex(), v = b.add_vertex();
  int l1 = b.add_flag(u), l2 = b.add_flag(u);
  b.pair_flags(l1, l2);
  int m1 = b.add_flag(v), m2 = b.add_flag(v);
  b.pair_flags(m1, m2);
  int bu = b.add_flag(u), bv = b.add_flag(v);
  b.pair_flags(bu, bv);
  OrientedGraph dumbbell = b.build();

  CHECK_THROWS_AS(transport_orientation(dumbbell, Convention::edgecycle, Convention::flag),
                  GraphError);
  CHECK(transport_orientation(dumbbell, Convention::vertedge, Convention::edgecycle) != 0);
  CHECK(canonical_form(dumbbell, Convention::edgecycle).zero_class);
}

TEST_CASE("contract_edge: shapes, signs, self-loop precondition") {
  OrientedGraph t = two_vertex_tree();
  auto [corolla, sign] = contract_edge(t, 0);
  CHECK(corolla.num_vertices() == 1);
  CHECK(corolla.in_valency(0) == 3);
  CHECK((sign == 1 || sign == -1));

  OrientedGraph theta = theta_graph();
  auto [once, s1] = contract_edge(theta, 0);
  CHECK(once.num_vertices() == 1);
  CHECK(once.num_edges() == 2);
  for (int e = 0; e < 2; ++e) CHECK(once.is_self_loop(e));
  CHECK_THROWS_AS(contract_edge(once, 0), GraphError);
  (void)s1;
}

TEST_CASE("contractions on disjoint edges anticommute") {
  auto trees = enumerate_graphs(tree_spec(5));
  int checked = 0;
  for (const auto& cf : trees) {
    const OrientedGraph& g = cf.graph;
    if (g.num_vertices() < 3) continue;
    for (int e = 0; e < g.num_edges(); ++e)
      for (int f = 0; f < g.num_edges(); ++f) {
        if (e == f) continue;
        std::set<int> ve{g.flags[g.edges[e].a].vertex, g.flags[g.edges[e].b].vertex};
        if (ve.count(g.flags[g.edges[f].a].vertex) ||
            ve.count(g.flags[g.edges[f].b].vertex))
          continue;
        auto locate = [](const OrientedGraph& orig, int removed_edge, int target_edge,
                         const OrientedGraph& now) {
          int fa = orig.edges[target_edge].a;
          int ra = orig.edges[removed_edge].a, rb = orig.edges[removed_edge].b;
          int nf = fa - (ra < fa) - (rb < fa);
          for (int k = 0; k < now.num_edges(); ++k)
            if (now.edges[k].a == nf || now.edges[k].b == nf) return k;
          return -1;
        };
        auto [ge, se] = contract_edge(g, e);
        int f_in_ge = locate(g, e, f, ge);
        auto [gef, sef] = contract_edge(ge, f_in_ge);
        auto [gf, sf] = contract_edge(g, f);
        int e_in_gf = locate(g, f, e, gf);
        auto [gfe, sfe] = contract_edge(gf, e_in_gf);
        CanonicalForm c1 = canonical_form(gef);
        CanonicalForm c2 = canonical_form(gfe);
        REQUIRE(c1.key == c2.key);
        CHECK(se * sef * c1.sign == -(sf * sfe * c2.sign));
        ++checked;
      }
  }
  CHECK(checked > 0);
}

TEST_CASE("graft: left comb, juxtaposition, genus bookkeeping via self-gluing") {
  auto t2 = enumerate_graphs(tree_spec(2));
  const OrientedGraph& corolla2 = t2[0].graph;

  OrientedGraph comb = graft(corolla2, corolla2, {{1, 1}});
  CHECK(comb.num_vertices() == 2);
  CHECK(comb.n_in == 3);
  CHECK(comb.n_out == 1);
  CanonicalForm cf = canonical_form(comb);
  CanonicalForm expected = canonical_form(two_vertex_tree());
  CHECK(cf.key == expected.key);

  GraphClassSpec ps;
  ps.family = GraphFamily::prop_graph;
  ps.legs_in = 2;
  ps.legs_out = 1;
  auto props = enumerate_graphs(ps);
  REQUIRE(!props.empty());
  const OrientedGraph* corolla_prop = nullptr;
  for (const auto& c : props)
    if (c.graph.num_vertices() == 1 && c.graph.bare_edges.empty())
      corolla_prop = &c.graph;
  REQUIRE(corolla_prop != nullptr);
  OrientedGraph juxt = graft(*corolla_prop, *corolla_prop, {});
  CHECK(juxt.n_in == 4);
  CHECK(juxt.n_out == 2);
  CHECK(juxt.num_components() == 2);

  GraphBuilder sb(GraphFamily::stable_modular);
  int v0 = sb.add_vertex(1);
  int f1 = sb.add_flag(v0), f2 = sb.add_flag(v0);
  sb.set_in_leg(f1, 1);
  sb.set_in_leg(f2, 2);
  sb.n_in = 2;
  OrientedGraph star = sb.build();
  int before = star.total_genus();
  OrientedGraph glued = self_glue(star, 1, 2);
  CHECK(glued.total_genus() == before + 1);
  CHECK(glued.total_genus() == oracle::total_genus(1, {{0, 0}}, {1}));
}

TEST_CASE("stable enumeration: genus conservation and F((2,0)) inventory") {
  GraphClassSpec s;
  s.family = GraphFamily::stable_modular;
  s.genus = 2;
  s.legs_in = 0;
  s.max_vertices = 3;
  s.zero_genus_labels = true;
  auto gs = enumerate_graphs(s);
  int zero_classes = 0;
  for (const auto& cf : gs) {
    CHECK(cf.graph.total_genus() == 2);
    if (cf.zero_class) ++zero_classes;
  }
  CHECK(gs.size() == 3);
  CHECK(zero_classes == 2);

  for (const auto& cf : gs)
    for (int e = 0; e < cf.graph.num_edges(); ++e) {
      if (cf.graph.is_self_loop(e)) continue;
      auto [c, sign] = contract_edge(cf.graph, e);
      CHECK(c.total_genus() == 2);
    }
}

TEST_CASE("graph JSON round trip") {
  OrientedGraph theta = theta_graph();
  nlohmann::json j = graph_to_json(theta);
  OrientedGraph back = graph_from_json(j);
  CHECK(canonical_form(back).key == canonical_form(theta).key);
  CHECK(back.edge_order == theta.edge_order);

  OrientedGraph tree = two_vertex_tree();
  OrientedGraph tback = graph_from_json(graph_to_json(tree));
  CHECK(tback.in_word == tree.in_word);
  CHECK(canonical_form(tback).key == canonical_form(tree).key);
}

TEST_CASE("prop enumeration: wheels, self-loop classes, guard") {
  GraphClassSpec s;
  s.family = GraphFamily::prop_graph;
  s.legs_in = 1;
  s.legs_out = 0;
  auto gs = enumerate_graphs(s);
  REQUIRE(gs.size() == 1);
  CHECK(gs[0].graph.num_vertices() == 1);
  CHECK(gs[0].graph.num_edges() == 1);
  CHECK(gs[0].graph.is_self_loop(0));

  GraphClassSpec s2;
  s2.family = GraphFamily::prop_graph;
  s2.legs_in = 2;
  s2.legs_out = 0;
  auto gs2 = enumerate_graphs(s2);
  CHECK(gs2.size() >= 4);

  GraphClassSpec guard = s2;
  guard.class_size_guard = 1;
  CHECK_THROWS_AS(enumerate_graphs(guard), GuardError);
}
