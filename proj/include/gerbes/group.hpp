#ifndef GERBES_GROUP_HPP
#define GERBES_GROUP_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "gerbes/core.hpp"

namespace gerbes {

/// Finite group as a Cayley table over element indices 0..order-1.
/// The identity is pinned at index 0; inputs not in this form are rejected.
struct FiniteGroup {
  int order = 0;
  std::vector<int> mul;  // order*order, row-major: mul[a*order+b] = a*b
  std::vector<int> inv;  // derived during validation

  int op(int a, int b) const { return mul[a * order + b]; }
  int id() const { return 0; }
  int invert(int a) const { return inv[a]; }
  int conj(int g, int a) const { return op(op(g, a), inv[g]); }

  bool operator==(FiniteGroup const& o) const {
    return order == o.order && mul == o.mul;
  }
};

inline FiniteGroup validate_group(std::vector<std::vector<int>> const& table) {
  int n = static_cast<int>(table.size());
  require(n > 0, "EmptyTable", "group needs at least the identity element");
  FiniteGroup g;
  g.order = n;
  g.mul.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    require(static_cast<int>(table[a].size()) == n, "NotSquare",
            cat("row ", show(a), " has ", show((int)table[a].size()), " entries"));
    for (int b = 0; b < n; ++b) {
      int v = table[a][b];
      require(v >= 0 && v < n, "IndexOutOfRange",
              cat("mul[", show(a), "][", show(b), "] = ", show(v)));
      g.mul[a * n + b] = v;
    }
  }
  for (int a = 0; a < n; ++a) {
    require(g.op(0, a) == a && g.op(a, 0) == a, "NoIdentityAtZero",
            cat("element 0 is not a two-sided identity at ", show(a)));
  }
  // rows and columns must be permutations
  for (int a = 0; a < n; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < n; ++b) {
      row[g.op(a, b)] = 1;
      col[g.op(b, a)] = 1;
    }
    for (int b = 0; b < n; ++b)
      require(row[b] && col[b], "NotInvertible",
              cat("row/column ", show(a), " misses value ", show(b)));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        require(g.op(g.op(a, b), c) == g.op(a, g.op(b, c)), "NotAssociative",
                cat("(", show(a), "*", show(b), ")*", show(c), " != ", show(a),
                    "*(", show(b), "*", show(c), ")"));
  g.inv.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.op(a, b) == 0) g.inv[a] = b;
  return g;
}

inline FiniteGroup cyclic_group(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return validate_group(t);
}

inline FiniteGroup trivial_group() { return cyclic_group(1); }

namespace detail {
// permutations of {0..n-1} in lexicographic rank order; identity has rank 0
inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}
}  // namespace detail

/// Symmetric group S_n acting on {0..n-1}; elements are permutations in
/// lexicographic order, so the identity permutation sits at index 0.
inline FiniteGroup symmetric_group(int n) {
  require(n >= 1 && n <= 6, "SizeLimitExceeded", "symmetric_group supports n <= 6");
  auto perms = detail::all_permutations(n);
  int m = static_cast<int>(perms.size());
  auto rank = [&](std::vector<int> const& q) {
    auto it = std::lower_bound(perms.begin(), perms.end(), q);
    return static_cast<int>(it - perms.begin());
  };
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (int x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];  // a after b
      t[a][b] = rank(c);
    }
  return validate_group(t);
}

inline FiniteGroup product_group(FiniteGroup const& a, FiniteGroup const& b) {
  int n = a.order * b.order;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  auto enc = [&](int x, int y) { return x * b.order + y; };
  for (int x1 = 0; x1 < a.order; ++x1)
    for (int y1 = 0; y1 < b.order; ++y1)
      for (int x2 = 0; x2 < a.order; ++x2)
        for (int y2 = 0; y2 < b.order; ++y2)
          t[enc(x1, y1)][enc(x2, y2)] = enc(a.op(x1, x2), b.op(y1, y2));
  return validate_group(t);
}

/// Homomorphism between validated groups, as an element-index array.
struct GroupHom {
  FiniteGroup source, target;
  std::vector<int> map;

  int operator()(int a) const { return map[a]; }
};

inline GroupHom validate_hom(FiniteGroup const& s, FiniteGroup const& t,
                             std::vector<int> map) {
  require(static_cast<int>(map.size()) == s.order, "BadLength",
          cat("hom map has ", show((int)map.size()), " entries, want ", show(s.order)));
  for (int a : map)
    require(a >= 0 && a < t.order, "IndexOutOfRange", cat("hom value ", show(a)));
  require(map[0] == 0, "NotAHomomorphism", "identity not mapped to identity");
  for (int a = 0; a < s.order; ++a)
    for (int b = 0; b < s.order; ++b)
      require(map[s.op(a, b)] == t.op(map[a], map[b]), "NotAHomomorphism",
              cat("f(", show(a), "*", show(b), ") != f(", show(a), ")*f(", show(b), ")"));
  return GroupHom{s, t, std::move(map)};
}

/// Left action of G on H by automorphisms: act[g*H.order+h] = ᵍh.
struct GroupAction {
  FiniteGroup actor, acted;
  std::vector<int> act;

  int operator()(int g, int h) const { return act[g * acted.order + h]; }
};

inline GroupAction validate_action(FiniteGroup const& g, FiniteGroup const& h,
                                   std::vector<int> act) {
  require(static_cast<int>(act.size()) == g.order * h.order, "BadLength",
          "action table size mismatch");
  GroupAction a{g, h, std::move(act)};
  for (int x = 0; x < h.order; ++x)
    require(a(0, x) == x, "NotAnAction", cat("identity acts nontrivially on ", show(x)));
  for (int gg = 0; gg < g.order; ++gg) {
    require(a(gg, 0) == 0, "NotByAutomorphisms", cat(show(gg), " moves 1_H"));
    std::vector<char> seen(h.order, 0);
    for (int x = 0; x < h.order; ++x) {
      seen[a(gg, x)] = 1;
      for (int y = 0; y < h.order; ++y)
        require(a(gg, h.op(x, y)) == h.op(a(gg, x), a(gg, y)), "NotByAutomorphisms",
                cat("act(", show(gg), ") is not multiplicative at (", show(x), ",",
                    show(y), ")"));
    }
    for (int x = 0; x < h.order; ++x)
      require(seen[x], "NotByAutomorphisms", cat("act(", show(gg), ") is not bijective"));
  }
  for (int g1 = 0; g1 < g.order; ++g1)
    for (int g2 = 0; g2 < g.order; ++g2)
      for (int x = 0; x < h.order; ++x)
        require(a(g.op(g2, g1), x) == a(g2, a(g1, x)), "NotAnAction",
                cat("act(", show(g2), "*", show(g1), ") != act(", show(g2),
                    ")∘act(", show(g1), ") at ", show(x)));
  return a;
}

inline GroupAction trivial_action(FiniteGroup const& g, FiniteGroup const& h) {
  std::vector<int> act(static_cast<size_t>(g.order) * h.order);
  for (int gg = 0; gg < g.order; ++gg)
    for (int x = 0; x < h.order; ++x) act[gg * h.order + x] = x;
  return validate_action(g, h, std::move(act));
}

/// Aut(G) by brute force over bijections fixing 0, with the inner-automorphism
/// homomorphism i: G -> Aut(G). Automorphisms are ordered lexicographically as
/// permutation tables, after rotating the identity to index 0.
struct AutGroupData {
  FiniteGroup aut;                      // composition as multiplication
  std::vector<std::vector<int>> perms;  // aut element -> permutation of G
  GroupHom inner;                       // i: G -> Aut(G)
};

inline AutGroupData automorphism_group(FiniteGroup const& g, int max_order = 24) {
  if (g.order > max_order)
    throw cap_error("SizeLimitExceeded",
                    cat("automorphism_group: |G| = ", show(g.order), " exceeds cap ",
                        show(max_order)));
  std::vector<std::vector<int>> autos;
  std::vector<int> perm(g.order, -1);
  std::vector<char> used(g.order, 0);
  perm[0] = 0;
  used[0] = 1;
  // backtracking over images; homomorphism property checked incrementally
  auto consistent = [&](int k) {
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b) {
        if (perm[a] < 0 || perm[b] < 0) continue;
        int ab = g.op(a, b);
        if (perm[ab] >= 0 && perm[ab] != g.op(perm[a], perm[b])) return false;
      }
    return true;
  };
  std::function<void(int)> rec = [&](int k) {
    if (k == g.order) {
      autos.push_back(perm);
      return;
    }
    if (perm[k] >= 0) {
      rec(k + 1);
      return;
    }
    for (int v = 0; v < g.order; ++v) {
      if (used[v]) continue;
      perm[k] = v;
      used[v] = 1;
      if (consistent(k)) rec(k + 1);
      perm[k] = -1;
      used[v] = 0;
    }
  };
  rec(0);
  std::sort(autos.begin(), autos.end());
  // identity permutation is lexicographically smallest among bijections fixing 0
  GERBES_CHECK(autos[0][std::min(1, g.order - 1)] == std::min(1, g.order - 1),
               "identity automorphism not first");
  int m = static_cast<int>(autos.size());
  auto rank = [&](std::vector<int> const& q) {
    auto it = std::lower_bound(autos.begin(), autos.end(), q);
    GERBES_CHECK(it != autos.end() && *it == q, "composite automorphism not found");
    return static_cast<int>(it - autos.begin());
  };
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::vector<int> c(g.order);
      for (int x = 0; x < g.order; ++x) c[x] = autos[a][autos[b][x]];
      t[a][b] = rank(c);
    }
  AutGroupData out;
  out.aut = validate_group(t);
  std::vector<int> inner(g.order);
  for (int x = 0; x < g.order; ++x) {
    std::vector<int> c(g.order);
    for (int y = 0; y < g.order; ++y) c[y] = g.conj(x, y);
    inner[x] = rank(c);
  }
  out.inner = validate_hom(g, out.aut, std::move(inner));
  out.perms = std::move(autos);
  return out;
}

/// Semidirect product H ⋊ G for an action of G on H, on pairs encoded
/// h*|G|+g, with (h2,g2)·(h1,g1) = (h2·ᵍ²h1, g2g1).
inline FiniteGroup semidirect_product(GroupAction const& act) {
  FiniteGroup const& g = act.actor;
  FiniteGroup const& h = act.acted;
  int n = h.order * g.order;
  auto enc = [&](int hh, int gg) { return hh * g.order + gg; };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int h2 = 0; h2 < h.order; ++h2)
    for (int g2 = 0; g2 < g.order; ++g2)
      for (int h1 = 0; h1 < h.order; ++h1)
        for (int g1 = 0; g1 < g.order; ++g1)
          t[enc(h2, g2)][enc(h1, g1)] = enc(h.op(h2, act(g2, h1)), g.op(g2, g1));
  return validate_group(t);
}

inline bool is_abelian(FiniteGroup const& g) {
  for (int a = 0; a < g.order; ++a)
    for (int b = 0; b < g.order; ++b)
      if (g.op(a, b) != g.op(b, a)) return false;
  return true;
}

inline int conjugacy_class_count(FiniteGroup const& g) {
  UnionFind uf(g.order);
  for (int a = 0; a < g.order; ++a)
    for (int x = 0; x < g.order; ++x) uf.unite(a, g.conj(x, a));
  return uf.compress().second;
}

/// Subgroup generated by `gens`, relabeled so sorted member list maps back via
/// `elements`; identity stays at index 0.
struct Subgroup {
  FiniteGroup group;
  std::vector<int> elements;  // new index -> ambient index
};

inline Subgroup subgroup_generated(FiniteGroup const& g, std::vector<int> const& gens) {
  std::vector<char> in(g.order, 0);
  std::vector<int> stack = {0};
  in[0] = 1;
  for (int v : gens)
    if (!in[v]) {
      in[v] = 1;
      stack.push_back(v);
    }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur;
    for (int x = 0; x < g.order; ++x)
      if (in[x]) cur.push_back(x);
    for (int a : cur)
      for (int b : cur) {
        int c = g.op(a, b);
        if (!in[c]) {
          in[c] = 1;
          grew = true;
        }
      }
  }
  Subgroup s;
  for (int x = 0; x < g.order; ++x)
    if (in[x]) s.elements.push_back(x);
  int m = static_cast<int>(s.elements.size());
  auto idx = [&](int ambient) {
    auto it = std::lower_bound(s.elements.begin(), s.elements.end(), ambient);
    return static_cast<int>(it - s.elements.begin());
  };
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a][b] = idx(g.op(s.elements[a], s.elements[b]));
  s.group = validate_group(t);
  return s;
}

/// Quotient G/N for a normal subgroup given by membership list; cosets are
/// labeled by least member, identity coset first.
struct QuotientGroup {
  FiniteGroup group;
  std::vector<int> coset_of;  // ambient -> quotient index
};

inline QuotientGroup quotient_group(FiniteGroup const& g, std::vector<int> const& normal) {
  std::vector<char> in(g.order, 0);
  for (int x : normal) in[x] = 1;
  require(in[0], "NotASubgroup", "normal subgroup must contain the identity");
  for (int x : normal)
    for (int y : normal)
      require(in[g.op(x, y)], "NotASubgroup", "not closed under multiplication");
  for (int x : normal)
    for (int a = 0; a < g.order; ++a)
      require(in[g.conj(a, x)], "NotNormal", cat("conjugate of ", show(x), " escapes"));
  UnionFind uf(g.order);
  for (int a = 0; a < g.order; ++a)
    for (int x : normal) uf.unite(a, g.op(a, x));
  // least-member labels, with the identity coset rotated to index 0
  std::vector<int> reps;
  std::vector<int> cls(g.order, -1);
  for (int a = 0; a < g.order; ++a) {
    int r = uf.find(a);
    if (cls[r] < 0) {
      cls[r] = static_cast<int>(reps.size());
      reps.push_back(a);
    }
  }
  QuotientGroup q;
  q.coset_of.resize(g.order);
  for (int a = 0; a < g.order; ++a) q.coset_of[a] = cls[uf.find(a)];
  GERBES_CHECK(q.coset_of[0] == 0, "identity coset not first");
  int m = static_cast<int>(reps.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a][b] = q.coset_of[g.op(reps[a], reps[b])];
  q.group = validate_group(t);
  return q;
}

}  // namespace gerbes

#endif  // GERBES_GROUP_HPP
