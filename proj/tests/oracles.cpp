#include "oracles.hpp"

#include <functional>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

using opforge::rat;

namespace {
std::vector<std::vector<std::vector<Rational>>> zero_c(int n) {
  return std::vector<std::vector<std::vector<Rational>>>(
      n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
}
std::vector<std::vector<Rational>> zero_m(int n) {
  return std::vector<std::vector<Rational>>(n, std::vector<Rational>(n));
}
}  // namespace

PlainAlgebra PlainAlgebra::sl2() {
  PlainAlgebra g;
  g.dim = 3;  // e=0, h=1, f=2
  g.c = zero_c(3);
  auto set = [&](int a, int b, int k, long v) {
    g.c[a][b][k] = rat(v);
    g.c[b][a][k] = rat(-v);
  };
  set(1, 0, 0, 2);   // [h,e] = 2e
  set(1, 2, 2, -2);  // [h,f] = -2f
  set(0, 2, 1, 1);   // [e,f] = h
  g.form = g.killing();
  return g;
}

PlainAlgebra PlainAlgebra::so3() {
  PlainAlgebra g;
  g.dim = 3;
  g.c = zero_c(3);
  auto eps = [](int i, int j, int k) -> int {
    if (i == j || j == k || i == k) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (eps(i, j, k)) g.c[i][j][k] = rat(eps(i, j, k));
  g.form = g.killing();
  return g;
}

PlainAlgebra PlainAlgebra::gln(int n) {
  PlainAlgebra g;
  g.dim = n * n;  // E_ij at index n*i+j
  g.c = zero_c(g.dim);
  auto unit = [n](int idx) { return std::make_pair(idx / n, idx % n); };
  auto idx_of = [n](int i, int j) { return n * i + j; };
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) {
      auto [i, j] = unit(a);
      auto [k, l] = unit(b);
      // [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
      if (j == k) g.c[a][b][idx_of(i, l)] += rat(1);
      if (l == i) g.c[a][b][idx_of(k, j)] += rat(-1);
    }
  // trace form b(x,y) = tr(xy): nondegenerate on gl_n (Killing is not).
  g.form = zero_m(g.dim);
  for (int a = 0; a < g.dim; ++a)
    for (int b = 0; b < g.dim; ++b) {
      auto [i, j] = unit(a);
      auto [k, l] = unit(b);
      if (j == k && l == i) g.form[a][b] = rat(1);
    }
  return g;
}

PlainAlgebra PlainAlgebra::abelian(int n) {
  PlainAlgebra g;
  g.dim = n;
  g.c = zero_c(n);
  g.form = zero_m(n);
  for (int i = 0; i < n; ++i) g.form[i][i] = rat(1);
  return g;
}

std::vector<std::vector<Rational>> PlainAlgebra::ad(int a) const {
  auto m = zero_m(dim);
  for (int b = 0; b < dim; ++b)
    for (int k = 0; k < dim; ++k) m[k][b] = c[a][b][k];
  return m;
}

std::vector<std::vector<Rational>> PlainAlgebra::killing() const {
  auto K = zero_m(dim);
  for (int a = 0; a < dim; ++a) {
    auto ada = ad(a);
    for (int b = 0; b < dim; ++b) {
      auto adb = ad(b);
      Rational tr;
      for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) tr += ada[i][k] * adb[k][i];
      K[a][b] = tr;
    }
  }
  return K;
}

bool PlainAlgebra::jacobi_holds() const {
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int d = 0; d < dim; ++d)
        for (int k = 0; k < dim; ++k) {
          Rational s;
          for (int e = 0; e < dim; ++e) {
            s += c[a][b][e] * c[e][d][k];
            s += c[b][d][e] * c[e][a][k];
            s += c[d][a][e] * c[e][b][k];
          }
          if (!s.is_zero()) return false;
        }
  return true;
}

std::vector<std::vector<Rational>> PlainAlgebra::form_inverse() const {
  int n = dim;
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = form[i][j];
    a[i][n + i] = rat(1);
  }
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int r = k; r < n; ++r)
      if (!a[r][k].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::runtime_error("oracle: degenerate form");
    std::swap(a[piv], a[k]);
    Rational p = a[k][k];
    for (int c2 = 0; c2 < 2 * n; ++c2) a[k][c2] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == k || a[r][k].is_zero()) continue;
      Rational f = a[r][k];
      for (int c2 = 0; c2 < 2 * n; ++c2) a[r][c2] -= f * a[k][c2];
    }
  }
  auto inv = zero_m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

Rational trace_word(const PlainAlgebra& g, const std::vector<int>& word) {
  int n = g.dim;
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) m[i][i] = rat(1);
  for (int a : word) {
    auto ada = g.ad(a);
    std::vector<std::vector<Rational>> nm(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rational s;
        for (int k = 0; k < n; ++k) s += m[i][k] * ada[k][j];
        nm[i][j] = s;
      }
    m = nm;
  }
  Rational tr;
  for (int i = 0; i < n; ++i) tr += m[i][i];
  return tr;
}

Rational weight_closed(const PlainAlgebra& g, const PlainGraph& graph) {
  // lowered structure tensor c_{abc} = form([e_a,e_b], e_c)
  int n = g.dim;
  auto low = [&](int a, int b, int c) {
    Rational s;
    for (int k = 0; k < n; ++k) s += g.c[a][b][k] * g.form[k][c];
    return s;
  };
  auto inv = g.form_inverse();

  int V = graph.n_vertices;
  // one index per flag (vertex, slot)
  std::vector<int> idx(3 * V, 0);
  auto flag_index = [&](std::pair<int, int> f) { return 3 * f.first + f.second; };
  Rational total;
  std::function<void(int)> rec = [&](int f) {
    if (f == 3 * V) {
      Rational term = rat(1);
      for (int v = 0; v < V && !term.is_zero(); ++v)
        term *= low(idx[3 * v], idx[3 * v + 1], idx[3 * v + 2]);
      if (term.is_zero()) return;
      for (auto& [fa, fb] : graph.edges)
        term *= inv[idx[flag_index(fa)]][idx[flag_index(fb)]];
      total += term;
      return;
    }
    for (int i = 0; i < n; ++i) {
      idx[f] = i;
      rec(f + 1);
    }
  };
  rec(0);
  return total;
}

namespace {

struct ExprNode {
  int var = 0;
  std::unique_ptr<ExprNode> l, r;
};

ExprNode parse_expr(const std::string& s, size_t& pos) {
  if (s[pos] == '[') {
    ++pos;
    ExprNode n;
    n.l = std::make_unique<ExprNode>(parse_expr(s, pos));
    if (s[pos] != ',') throw std::runtime_error("oracle parse: ','");
    ++pos;
    n.r = std::make_unique<ExprNode>(parse_expr(s, pos));
    if (s[pos] != ']') throw std::runtime_error("oracle parse: ']'");
    ++pos;
    return n;
  }
  if (s[pos] != 'x') throw std::runtime_error("oracle parse: 'x'");
  ++pos;
  size_t start = pos;
  while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  ExprNode n;
  n.var = std::stoi(s.substr(start, pos - start));
  return n;
}

// value of the expression at basis assignment `assign` (variable -> basis
// index), as a coefficient vector
std::vector<Rational> eval_node(const PlainAlgebra& g, const ExprNode& e,
                                const std::vector<int>& assign) {
  std::vector<Rational> out(g.dim);
  if (e.var > 0) {
    out[assign[e.var - 1]] = rat(1);
    return out;
  }
  auto a = eval_node(g, *e.l, assign), b = eval_node(g, *e.r, assign);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) {
      if (a[i].is_zero() || b[j].is_zero()) continue;
      for (int k = 0; k < g.dim; ++k) out[k] += a[i] * b[j] * g.c[i][j][k];
    }
  return out;
}

}  // namespace

std::map<std::vector<int>, std::vector<Rational>> eval_bracket_word(
    const PlainAlgebra& g, const std::string& expr, int arity) {
  size_t pos = 0;
  ExprNode root = parse_expr(expr, pos);
  std::map<std::vector<int>, std::vector<Rational>> out;
  std::vector<int> assign(arity, 0);
  std::function<void(int)> rec = [&](int v) {
    if (v == arity) {
      auto val = eval_node(g, root, assign);
      bool nz = false;
      for (auto& x : val) nz = nz || !x.is_zero();
      if (nz) out[assign] = val;
      return;
    }
    for (int i = 0; i < g.dim; ++i) {
      assign[v] = i;
      rec(v + 1);
    }
  };
  rec(0);
  return out;
}

long count_series_reduced_trees(int n) {
  // T(S) = sum over set partitions of S into >= 2 blocks of
  //        prod over blocks of size >= 2 of T(block); T(singleton child) = 1
  std::map<int, long> memo;  // by size: count depends only on |S| via relabeling?
  // It does not (labels matter for which partition), but the COUNT depends
  // only on the size; partitions of a k-set into given block sizes are
  // counted by multinomials. Use the recursion over labeled partitions
  // directly with sizes.
  std::function<long(int)> T = [&](int sz) -> long {
    if (sz == 1) return 1;
    auto it = memo.find(sz);
    if (it != memo.end()) return it->second;
    // iterate over partitions of a labeled sz-set with >= 2 blocks via
    // exponential-generating recursion: fix element 1's block B (size b),
    // choose the rest of B from the remaining sz-1, then partition the rest.
    // Direct approach: enumerate all set partitions of {0..sz-1}.
    std::vector<int> assign(sz, 0);
    long total = 0;
    std::function<void(int, int, long)> rec = [&](int i, int maxb, long prod) {
      (void)prod;
      if (i == sz) {
        int nb = maxb + 1;
        if (nb < 2) return;
        std::vector<int> bsize(nb, 0);
        for (int k = 0; k < sz; ++k) ++bsize[assign[k]];
        long p = 1;
        for (int b = 0; b < nb; ++b)
          if (bsize[b] >= 2) p *= T(bsize[b]);
        total += p;
        return;
      }
      for (int b = 0; b <= maxb + 1; ++b) {
        assign[i] = b;
        rec(i + 1, std::max(maxb, b), 0);
      }
    };
    assign[0] = 0;
    rec(1, 0, 0);
    memo[sz] = total;
    return total;
  };
  return T(n);
}

int total_genus(int n_vertices, const std::vector<std::pair<int, int>>& edges,
                const std::vector<int>& genus_labels) {
  std::vector<int> parent(n_vertices);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto& [u, v] : edges) {
    int ru = find(u), rv = find(v);
    if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
  }
  std::set<int> comps;
  for (int v = 0; v < n_vertices; ++v) comps.insert(find(v));
  int h1 = static_cast<int>(edges.size()) - n_vertices + static_cast<int>(comps.size());
  int s = 0;
  for (int gl : genus_labels) s += gl;
  return h1 + s;
}

}  // namespace oracle
