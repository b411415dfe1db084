#include "opforge/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "opforge/graph.hpp"

namespace opforge {

using nlohmann::json;

json tensor_to_json(const SparseTensor& t) {
  json j;
  j["dims"] = t.dims();
  json entries = json::array();
  for (const auto& [idx, c] : t.entries()) {
    json e;
    e["idx"] = idx;
    e["num"] = c.num_string();
    e["den"] = c.den_string();
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j;
}

SparseTensor tensor_from_json(const json& j) {
  SparseTensor t(j.at("dims").get<std::vector<int>>());
  for (const json& e : j.at("entries")) {
    Index idx = e.at("idx").get<Index>();
    t.add(idx, Rational::from_strings(e.at("num").get<std::string>(),
                                      e.at("den").get<std::string>()));
  }
  return t;
}

json graph_to_json(const OrientedGraph& g) {
  json j;
  j["family"] = family_name(g.family);
  json vs = json::array();
  for (int v = 0; v < g.num_vertices(); ++v) {
    json jv;
    jv["id"] = v;
    jv["g"] = g.vertices[v].genus;
    jv["flags"] = g.vertices[v].flags;
    if (g.directed) jv["out_flag"] = g.vertices[v].out_flag;
    vs.push_back(jv);
  }
  j["vertices"] = vs;
  json es = json::array();
  for (const Edge& e : g.edges) es.push_back({e.a, e.b});
  j["edges"] = es;
  std::vector<int> legs_in(g.n_in, -1), legs_out(g.n_out, -1);
  for (int f = 0; f < g.num_flags(); ++f) {
    if (g.flags[f].leg_in) legs_in[g.flags[f].leg_in - 1] = f;
    if (g.flags[f].leg_out) legs_out[g.flags[f].leg_out - 1] = f;
  }
  j["legs_in"] = legs_in;
  j["legs_out"] = legs_out;
  if (!g.bare_edges.empty()) j["bare_edges"] = g.bare_edges;
  json orient;
  orient["edge_order"] = g.edge_order;
  json in_order = json::object();
  for (int v = 0; v < g.num_vertices(); ++v)
    in_order[std::to_string(v)] = g.flag_orders[v];
  orient["in_order"] = in_order;
  if (g.directed) orient["in_word"] = g.in_word;
  orient["vertex_order"] = g.vertex_order;
  j["orientation"] = orient;
  return j;
}

OrientedGraph graph_from_json(const json& j) {
  OrientedGraph g;
  g.family = family_from_name(j.at("family").get<std::string>());
  g.directed = (g.family == GraphFamily::tree || g.family == GraphFamily::prop_graph);
  for (const json& jv : j.at("vertices")) {
    Vertex v;
    v.genus = jv.value("g", 0);
    v.flags = jv.at("flags").get<std::vector<int>>();
    if (jv.contains("out_flag")) v.out_flag = jv["out_flag"].get<int>();
    g.vertices.push_back(v);
  }
  int nflags = 0;
  for (const Vertex& v : g.vertices) nflags += static_cast<int>(v.flags.size());
  g.flags.assign(nflags, Flag{});
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int f : g.vertices[v].flags) {
      if (f < 0 || f >= nflags) throw ParseError("graph json: bad flag id");
      g.flags[f].vertex = v;
    }
  for (const json& je : j.at("edges")) {
    Edge e{je.at(0).get<int>(), je.at(1).get<int>()};
    g.edges.push_back(e);
    g.flags[e.a].partner = e.b;
    g.flags[e.b].partner = e.a;
  }
  auto legs_in = j.at("legs_in").get<std::vector<int>>();
  for (size_t l = 0; l < legs_in.size(); ++l)
    if (legs_in[l] >= 0) g.flags[legs_in[l]].leg_in = static_cast<int>(l) + 1;
  auto legs_out = j.at("legs_out").get<std::vector<int>>();
  for (size_t l = 0; l < legs_out.size(); ++l)
    if (legs_out[l] >= 0) g.flags[legs_out[l]].leg_out = static_cast<int>(l) + 1;
  g.n_in = static_cast<int>(legs_in.size());
  g.n_out = static_cast<int>(legs_out.size());
  if (j.contains("bare_edges"))
    g.bare_edges = j["bare_edges"].get<std::vector<std::pair<int, int>>>();
  g.reset_reference_orientation();
  if (j.contains("orientation")) {
    const json& o = j["orientation"];
    if (o.contains("edge_order")) g.edge_order = o["edge_order"].get<std::vector<int>>();
    if (o.contains("vertex_order"))
      g.vertex_order = o["vertex_order"].get<std::vector<int>>();
    if (o.contains("in_word")) g.in_word = o["in_word"].get<std::vector<int>>();
    if (o.contains("in_order"))
      for (auto& [k, v] : o["in_order"].items())
        g.flag_orders[std::stoi(k)] = v.get<std::vector<int>>();
  }
  g.validate();
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write file: " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ParseError("cannot rename into place: " + path);
}

}  // namespace opforge
