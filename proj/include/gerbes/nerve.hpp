#ifndef GERBES_NERVE_HPP
#define GERBES_NERVE_HPP

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "gerbes/groupoid.hpp"

namespace gerbes {

/// Ordered simplicial complex up to dimension 3. Simplices are strictly
/// increasing tuples in the fixed vertex order; faces must be closed.
struct CoverNerve {
  int n_vertices = 0;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 4>> tetras;

  int edge_index(int a, int b) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), std::array<int, 2>{a, b});
    if (it == edges.end() || (*it)[0] != a || (*it)[1] != b) return -1;
    return static_cast<int>(it - edges.begin());
  }
  int triangle_index(int a, int b, int c) const {
    auto it = std::lower_bound(triangles.begin(), triangles.end(),
                               std::array<int, 3>{a, b, c});
    if (it == triangles.end() || (*it) != std::array<int, 3>{a, b, c}) return -1;
    return static_cast<int>(it - triangles.begin());
  }
  bool has_edge(int a, int b) const { return edge_index(a, b) >= 0; }
  bool has_triangle(int a, int b, int c) const { return triangle_index(a, b, c) >= 0; }
};

inline CoverNerve validate_nerve(int n, std::vector<std::array<int, 2>> edges,
                                 std::vector<std::array<int, 3>> triangles,
                                 std::vector<std::array<int, 4>> tetras) {
  require(n >= 0, "BadLength", "negative vertex count");
  auto inc2 = [&](std::array<int, 2> const& e) {
    return 0 <= e[0] && e[0] < e[1] && e[1] < n;
  };
  auto inc3 = [&](std::array<int, 3> const& t) {
    return 0 <= t[0] && t[0] < t[1] && t[1] < t[2] && t[2] < n;
  };
  auto inc4 = [&](std::array<int, 4> const& q) {
    return 0 <= q[0] && q[0] < q[1] && q[1] < q[2] && q[2] < q[3] && q[3] < n;
  };
  for (auto const& e : edges)
    require(inc2(e), "NotIncreasing", cat("edge (", show(e[0]), ",", show(e[1]), ")"));
  for (auto const& t : triangles)
    require(inc3(t), "NotIncreasing",
            cat("triangle (", show(t[0]), ",", show(t[1]), ",", show(t[2]), ")"));
  for (auto const& q : tetras)
    require(inc4(q), "NotIncreasing", cat("tetra starting at ", show(q[0])));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::sort(triangles.begin(), triangles.end());
  triangles.erase(std::unique(triangles.begin(), triangles.end()), triangles.end());
  std::sort(tetras.begin(), tetras.end());
  tetras.erase(std::unique(tetras.begin(), tetras.end()), tetras.end());
  CoverNerve k;
  k.n_vertices = n;
  k.edges = std::move(edges);
  k.triangles = std::move(triangles);
  k.tetras = std::move(tetras);
  for (auto const& t : k.triangles)
    require(k.has_edge(t[0], t[1]) && k.has_edge(t[0], t[2]) && k.has_edge(t[1], t[2]),
            "FaceClosureViolated",
            cat("triangle (", show(t[0]), ",", show(t[1]), ",", show(t[2]), ")"));
  for (auto const& q : k.tetras)
    require(k.has_triangle(q[0], q[1], q[2]) && k.has_triangle(q[0], q[1], q[3]) &&
                k.has_triangle(q[0], q[2], q[3]) && k.has_triangle(q[1], q[2], q[3]),
            "FaceClosureViolated", cat("tetra starting at ", show(q[0])));
  return k;
}

/// Finite set M covered by subsets; intersections are the abstract cells the
/// nerve records. A nonempty k-fold intersection contributes a (k-1)-simplex.
struct ConcreteCover {
  int n_points = 0;
  std::vector<std::vector<int>> sets;  // each sorted ascending
};

inline ConcreteCover validate_cover(int n_points, std::vector<std::vector<int>> sets) {
  std::vector<char> covered(n_points, 0);
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (int x : s) {
      require(0 <= x && x < n_points, "IndexOutOfRange", cat("point ", show(x)));
      covered[x] = 1;
    }
  }
  for (int x = 0; x < n_points; ++x)
    require(covered[x], "NotACover", cat("point ", show(x), " uncovered"));
  return ConcreteCover{n_points, std::move(sets)};
}

inline std::vector<int> intersect_sorted(std::vector<int> const& a,
                                         std::vector<int> const& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline CoverNerve nerve_of_cover(ConcreteCover const& c) {
  int n = static_cast<int>(c.sets.size());
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 4>> tetras;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto ij = intersect_sorted(c.sets[i], c.sets[j]);
      if (ij.empty()) continue;
      edges.push_back({i, j});
      for (int k = j + 1; k < n; ++k) {
        auto ijk = intersect_sorted(ij, c.sets[k]);
        if (ijk.empty()) continue;
        triangles.push_back({i, j, k});
        for (int l = k + 1; l < n; ++l)
          if (!intersect_sorted(ijk, c.sets[l]).empty()) tetras.push_back({i, j, k, l});
      }
    }
  return validate_nerve(n, std::move(edges), std::move(triangles), std::move(tetras));
}

/// Čech groupoid in abstract-nerve mode: objects are vertices, morphisms are
/// ordered pairs (i,j) whose underlying set is a cell. (j,k)∘(i,j) = (i,k)
/// needs {i,j,k} to span a cell; a needed-but-missing composite is an error.
inline FiniteGroupoid cech_groupoid(CoverNerve const& k) {
  std::vector<std::array<int, 2>> pairs;
  for (int i = 0; i < k.n_vertices; ++i) pairs.push_back({i, i});
  for (auto const& e : k.edges) {
    pairs.push_back({e[0], e[1]});
    pairs.push_back({e[1], e[0]});
  }
  std::sort(pairs.begin(), pairs.end());
  auto pidx = [&](int i, int j) {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::array<int, 2>{i, j});
    GERBES_CHECK(it != pairs.end() && (*it) == (std::array<int, 2>{i, j}),
                 "pair not found");
    return static_cast<int>(it - pairs.begin());
  };
  auto spans_cell = [&](int a, int b, int c) {
    std::vector<int> s = {a, b, c};
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() == 1) return true;
    if (s.size() == 2) return k.has_edge(s[0], s[1]);
    return k.has_triangle(s[0], s[1], s[2]);
  };
  FiniteGroupoid g;
  g.n_obj = k.n_vertices;
  g.n_mor = static_cast<int>(pairs.size());
  g.src.resize(g.n_mor);
  g.tgt.resize(g.n_mor);
  g.inv.resize(g.n_mor);
  g.idm.resize(g.n_obj);
  for (int m = 0; m < g.n_mor; ++m) {
    g.src[m] = pairs[m][0];
    g.tgt[m] = pairs[m][1];
    g.inv[m] = pidx(pairs[m][1], pairs[m][0]);
  }
  for (int i = 0; i < g.n_obj; ++i) g.idm[i] = pidx(i, i);
  g.cmp.assign(static_cast<size_t>(g.n_mor) * g.n_mor, -1);
  for (int m2 = 0; m2 < g.n_mor; ++m2)
    for (int m1 = 0; m1 < g.n_mor; ++m1) {
      if (!g.composable(m2, m1)) continue;
      int i = pairs[m1][0], j = pairs[m1][1], kk = pairs[m2][1];
      require(spans_cell(i, j, kk), "CompositionNotClosed",
              cat("(", show(j), ",", show(kk), ")∘(", show(i), ",", show(j),
                  ") needs a cell on {", show(i), ",", show(j), ",", show(kk), "}"));
      g.set_comp(m2, m1, pidx(i, kk));
    }
  return g;
}

// --- named nerve fixtures -------------------------------------------------

inline CoverNerve nerve_circle3() {
  return validate_nerve(3, {{0, 1}, {0, 2}, {1, 2}}, {}, {});
}

inline CoverNerve nerve_sphere_tetra() {
  return validate_nerve(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
                        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, {});
}

inline CoverNerve nerve_simplex3() {
  return validate_nerve(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
                        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, {{0, 1, 2, 3}});
}

/// Minimal 7-vertex torus triangulation: triangles {i,i+1,i+3} and
/// {i,i+2,i+3} mod 7.
inline CoverNerve nerve_torus_min() {
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> tris;
  auto add_tri = [&](int a, int b, int c) {
    std::array<int, 3> t = {a % 7, b % 7, c % 7};
    std::sort(t.begin(), t.end());
    tris.push_back(t);
  };
  for (int i = 0; i < 7; ++i) {
    add_tri(i, i + 1, i + 3);
    add_tri(i, i + 2, i + 3);
  }
  for (auto const& t : tris) {
    edges.push_back({t[0], t[1]});
    edges.push_back({t[0], t[2]});
    edges.push_back({t[1], t[2]});
  }
  return validate_nerve(7, std::move(edges), std::move(tris), {});
}

// --- independent oracles ---------------------------------------------------

namespace detail {

// Smith normal form diagonal of an integer matrix (destructive, int64).
inline std::vector<long long> snf_diagonal(std::vector<std::vector<long long>> m) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  std::vector<long long> diag;
  int r = 0, c = 0;
  while (r < rows && c < cols) {
    int pr = -1, pc = -1;
    long long best = 0;
    for (int i = r; i < rows; ++i)
      for (int j = c; j < cols; ++j)
        if (m[i][j] != 0 && (best == 0 || std::abs(m[i][j]) < best)) {
          best = std::abs(m[i][j]);
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    std::swap(m[r], m[pr]);
    for (int i = 0; i < rows; ++i) std::swap(m[i][c], m[i][pc]);
    bool again = true;
    while (again) {
      again = false;
      for (int i = r + 1; i < rows; ++i) {
        long long q = m[i][c] / m[r][c];
        if (q != 0)
          for (int j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
        if (m[i][c] != 0) {
          std::swap(m[r], m[i]);
          again = true;
        }
      }
      for (int j = c + 1; j < cols; ++j) {
        long long q = m[r][j] / m[r][c];
        if (q != 0)
          for (int i = r; i < rows; ++i) m[i][j] -= q * m[i][c];
        if (m[r][j] != 0) {
          for (int i = 0; i < rows; ++i) std::swap(m[i][c], m[i][j]);
          again = true;
        }
      }
    }
    diag.push_back(std::abs(m[r][c]));
    ++r;
    ++c;
  }
  return diag;
}

}  // namespace detail

/// |H^degree(K; A)| for a finite abelian group A, by integer Smith normal form
/// of the ordered simplicial coboundary matrices. Classical cochain oracle,
/// fully independent of the cocycle enumeration path.
inline long long abelian_oracle(CoverNerve const& k, FiniteGroup const& a, int degree) {
  require(is_abelian(a), "NotAbelian", "abelian_oracle needs abelian coefficients");
  require(degree == 1 || degree == 2, "BadDegree", "supported degrees: 1, 2");
  // torsion counters: |A[d]| = #{x : x^d = 1} and |dA| = |A|/|A[d]|
  auto torsion = [&](long long d) {
    if (d == 0) return static_cast<long long>(a.order);
    long long cnt = 0;
    for (int x = 0; x < a.order; ++x) {
      int ord = 1, y = x;
      while (y != 0) {
        y = a.op(y, x);
        ++ord;
      }
      if (d % ord == 0) ++cnt;
    }
    return cnt;
  };
  int n0 = k.n_vertices;
  int n1 = static_cast<int>(k.edges.size());
  int n2 = static_cast<int>(k.triangles.size());
  int n3 = static_cast<int>(k.tetras.size());
  // coboundary matrices: rows index (d+1)-simplices, columns d-simplices
  std::vector<std::vector<long long>> d0(n1, std::vector<long long>(n0, 0));
  for (int e = 0; e < n1; ++e) {
    d0[e][k.edges[e][0]] -= 1;
    d0[e][k.edges[e][1]] += 1;
  }
  std::vector<std::vector<long long>> d1(n2, std::vector<long long>(n1, 0));
  for (int t = 0; t < n2; ++t) {
    auto const& tr = k.triangles[t];
    d1[t][k.edge_index(tr[1], tr[2])] += 1;
    d1[t][k.edge_index(tr[0], tr[2])] -= 1;
    d1[t][k.edge_index(tr[0], tr[1])] += 1;
  }
  std::vector<std::vector<long long>> d2(n3, std::vector<long long>(n2, 0));
  for (int q = 0; q < n3; ++q) {
    auto const& te = k.tetras[q];
    d2[q][k.triangle_index(te[1], te[2], te[3])] += 1;
    d2[q][k.triangle_index(te[0], te[2], te[3])] -= 1;
    d2[q][k.triangle_index(te[0], te[1], te[3])] += 1;
    d2[q][k.triangle_index(te[0], te[1], te[2])] -= 1;
  }
  auto size_ker = [&](std::vector<std::vector<long long>> const& m, int ncols) {
    auto diag = detail::snf_diagonal(m);
    long long s = 1;
    for (long long d : diag) s *= torsion(d);
    for (int j = static_cast<int>(diag.size()); j < ncols; ++j) s *= a.order;
    return s;
  };
  auto size_im = [&](std::vector<std::vector<long long>> const& m) {
    auto diag = detail::snf_diagonal(m);
    long long s = 1;
    for (long long d : diag) s *= a.order / torsion(d);
    return s;
  };
  if (degree == 1) return size_ker(d1, n1) / size_im(d0);
  return size_ker(d2, n2) / size_im(d1);
}

/// Conjugacy-class holonomy oracle for a cycle-graph nerve with vertices
/// 0-1-…-(n-1)-0: classes of G-cocycles correspond to Conj(G).
inline bool is_cycle_nerve(CoverNerve const& k) {
  if (!k.triangles.empty() || !k.tetras.empty()) return false;
  int n = k.n_vertices;
  if (static_cast<int>(k.edges.size()) != n) return false;
  for (int i = 0; i + 1 < n; ++i)
    if (!k.has_edge(i, i + 1)) return false;
  return k.has_edge(0, n - 1);
}

inline long long holonomy_oracle_class_count(CoverNerve const& k, FiniteGroup const& g) {
  require(is_cycle_nerve(k), "NotACycle", "holonomy oracle needs a cycle-graph nerve");
  return conjugacy_class_count(g);
}

/// Holonomy of edge data around the cycle 0→1→…→n-1→0: the closing edge
/// (0,n-1) is traversed backwards.
inline int cycle_holonomy(CoverNerve const& k, FiniteGroup const& g,
                          std::vector<int> const& edge_values) {
  require(is_cycle_nerve(k), "NotACycle", "holonomy needs a cycle-graph nerve");
  int n = k.n_vertices;
  int h = 0;
  for (int i = 0; i + 1 < n; ++i) h = g.op(edge_values[k.edge_index(i, i + 1)], h);
  return g.op(g.invert(edge_values[k.edge_index(0, n - 1)]), h);
}

}  // namespace gerbes

#endif  // GERBES_NERVE_HPP
