#pragma once

// Independent oracles used by the test suites. These deliberately avoid the
// library's tensor/graph machinery: plain nested vectors, brute-force index
// loops, and naive isomorphism filtering only.

#include <map>
#include <string>
#include <vector>

#include "opforge/rational.hpp"

namespace oracle {

using opforge::Rational;

// Structure constants c[a][b][k] of [e_a, e_b] = sum_k c[a][b][k] e_k
// (0-based), plus an invariant form matrix. Everything dense.
struct PlainAlgebra {
  int dim = 0;
  std::vector<std::vector<std::vector<Rational>>> c;
  std::vector<std::vector<Rational>> form;  // invariant symmetric form

  static PlainAlgebra sl2();       // basis e, h, f with the Killing form
  static PlainAlgebra so3();       // basis with [e_i,e_j] = eps_ijk e_k
  static PlainAlgebra gln(int n);  // matrix units, trace form
  static PlainAlgebra gl2() { return gln(2); }
  static PlainAlgebra abelian(int n);

  std::vector<std::vector<Rational>> ad(int a) const;  // ad(e_a) matrix
  std::vector<std::vector<Rational>> killing() const;
  bool jacobi_holds() const;
  std::vector<std::vector<Rational>> form_inverse() const;
};

// tr(ad x_{w1} ... ad x_{wk}) as a function of basis indices (0-based word).
Rational trace_word(const PlainAlgebra& g, const std::vector<int>& word);

// Brute-force closed-graph weight: vertices carry the lowered structure
// tensor in the vertex's flag cyclic order; every edge contracted with the
// inverse form; all internal indices summed naively.
//
// Graph input: per vertex a list of 3 flag slots; edges as flag pairs
// (vertex, slot). No orientation machinery: the caller fixes the layout and
// the oracle value is tied to that layout.
struct PlainGraph {
  int n_vertices = 0;
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> edges;
};
Rational weight_closed(const PlainAlgebra& g, const PlainGraph& graph);

// Evaluation of a bracket expression (library syntax, e.g. "[x1,[x2,x3]]")
// on the algebra: returns the dense tensor value[i1]...[ik][out] as a flat
// map from the index word to coefficients of the result vector.
std::map<std::vector<int>, std::vector<Rational>> eval_bracket_word(
    const PlainAlgebra& g, const std::string& expr, int arity);

// Naive labeled-tree enumeration for the enumeration cross-check: counts
// rooted trees on n labeled leaves, every internal vertex with >= 2 children.
long count_series_reduced_trees(int n);

// dim H1 + sum of genus labels, from scratch (Euler characteristic).
int total_genus(int n_vertices, const std::vector<std::pair<int, int>>& edges,
                const std::vector<int>& genus_labels);

}  // namespace oracle
