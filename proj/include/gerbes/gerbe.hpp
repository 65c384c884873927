#ifndef GERBES_GERBE_HPP
#define GERBES_GERBE_HPP

#include "gerbes/cocycle.hpp"

namespace gerbes {

/// Pullback with point bookkeeping: total points are (base point, element).
struct PulledBundle {
  PrincipalBundle bundle;
  std::vector<std::array<int, 2>> points;

  int index_of(int w, int x) const {
    auto it = std::lower_bound(points.begin(), points.end(), std::array<int, 2>{w, x});
    GERBES_CHECK(it != points.end() && (*it) == (std::array<int, 2>{w, x}),
                 "pulled point not found");
    return static_cast<int>(it - points.begin());
  }
};

inline PulledBundle pull_bundle(PrincipalBundle const& p, int w_size,
                                std::vector<int> const& basemap) {
  PulledBundle out;
  out.bundle = pullback_bundle(p, w_size, basemap, &out.points);
  return out;
}

/// Discrete bundle gerbe: a surjection π: Y → M, a principal Γ-bundle P over
/// Y^[2] and an associative product μ(p₂₃, p₁₂) defined iff the Y^[2] fibers
/// compose, stored as a dense partial table on pairs of total points.
struct DiscreteBundleGerbe {
  TwoGroup gamma;
  int base_size = 0;
  int y_size = 0;
  std::vector<int> pi;                     // Y -> M
  std::vector<std::array<int, 2>> ysq;     // Y^[2], lexicographic
  PrincipalBundle p;                       // over ysq positions
  std::vector<int> mu;                     // |P|² with -1 where undefined
  std::vector<int> unit_t;                 // Y -> P      (computed)
  std::vector<int> inv_i;                  // P -> P      (computed)

  int ysq_index(int y1, int y2) const {
    auto it = std::lower_bound(ysq.begin(), ysq.end(), std::array<int, 2>{y1, y2});
    GERBES_CHECK(it != ysq.end() && (*it) == (std::array<int, 2>{y1, y2}),
                 "Y^[2] pair not found");
    return static_cast<int>(it - ysq.begin());
  }
  std::array<int, 2> chi(int pe) const { return ysq[p.proj[pe]]; }
  bool composable(int p23, int p12) const { return chi(p23)[0] == chi(p12)[1]; }
  int mu_of(int p23, int p12) const {
    int r = mu[static_cast<size_t>(p23) * p.total_size + p12];
    GERBES_CHECK(r >= 0, "mu outside its domain");
    return r;
  }
  int mu_raw(int p23, int p12) const {
    return mu[static_cast<size_t>(p23) * p.total_size + p12];
  }
  void set_mu(int p23, int p12, int r) {
    mu[static_cast<size_t>(p23) * p.total_size + p12] = r;
  }
  /// unique a in the (y1,y3)-row with μ(a, b) = v
  int mu_solve_left(int v, int b) const {
    int found = -1;
    for (int a = 0; a < p.total_size; ++a)
      if (mu_raw(a, b) == v) {
        GERBES_CHECK(found < 0, "mu not injective in the first slot");
        found = a;
      }
    GERBES_CHECK(found >= 0, "mu_solve_left: no solution");
    return found;
  }
};

inline std::vector<std::array<int, 2>> fibered_pairs(std::vector<int> const& pi1,
                                                     std::vector<int> const& pi2) {
  std::vector<std::array<int, 2>> out;
  for (int a = 0; a < static_cast<int>(pi1.size()); ++a)
    for (int b = 0; b < static_cast<int>(pi2.size()); ++b)
      if (pi1[a] == pi2[b]) out.push_back({a, b});
  return out;
}

/// Full gerbe validation; computes the unique unit and inverse maps and
/// assembles the groupoid (Y, P) as a final structural check.
inline void validate_gerbe(DiscreteBundleGerbe& g, bool recompute_units = true) {
  validate_twogroup(g.gamma);
  require(static_cast<int>(g.pi.size()) == g.y_size, "BadLength", "pi");
  std::vector<char> hit(g.base_size, 0);
  for (int y = 0; y < g.y_size; ++y) {
    require(0 <= g.pi[y] && g.pi[y] < g.base_size, "IndexOutOfRange", "pi");
    hit[g.pi[y]] = 1;
  }
  for (int m = 0; m < g.base_size; ++m)
    require(hit[m], "NotSurjective", cat("base point ", show(m)));
  require(g.ysq == fibered_pairs(g.pi, g.pi), "BadYsq", "Y^[2] enumeration mismatch");
  require(g.p.base_size == static_cast<int>(g.ysq.size()), "BadLength", "P base");
  require(g.p.structure == g.gamma.gpd, "StructureMismatch", "P structure groupoid");
  validate_bundle(g.p);
  require(g.mu.size() == static_cast<size_t>(g.p.total_size) * g.p.total_size,
          "BadLength", "mu table");
  int np = g.p.total_size;
  TwoGroup const& tg = g.gamma;
  for (int b = 0; b < np; ++b)
    for (int a = 0; a < np; ++a) {
      int r = g.mu_raw(b, a);
      if (!g.composable(b, a)) {
        require(r < 0, "MuOutOfDomain", cat("mu(", show(b), ",", show(a), ")"));
        continue;
      }
      require(0 <= r && r < np, "MuMissing", cat("mu(", show(b), ",", show(a), ")"));
      require(g.chi(r)[0] == g.chi(a)[0] && g.chi(r)[1] == g.chi(b)[1],
              "MuBreaksFibers", cat("mu(", show(b), ",", show(a), ")"));
      require(g.p.anchor[r] == tg.obj_mul(g.p.anchor[b], g.p.anchor[a]),
              "MuAnchorFails", cat("mu(", show(b), ",", show(a), ")"));
    }
  // bundle-morphism property on the tensor: equivariance in both slots
  for (int b = 0; b < np; ++b)
    for (int a = 0; a < np; ++a) {
      if (!g.composable(b, a)) continue;
      int r = g.mu_of(b, a);
      for (int g1 = 0; g1 < tg.n_mor(); ++g1) {
        if (tg.tgt(g1) != g.p.anchor[b]) continue;
        for (int g2 = 0; g2 < tg.n_mor(); ++g2) {
          if (tg.tgt(g2) != g.p.anchor[a]) continue;
          require(g.mu_of(g.p.ract(b, g1), g.p.ract(a, g2)) ==
                      g.p.ract(r, tg.mor_mul(g1, g2)),
                  "MuNotEquivariant", cat("mu(", show(b), ",", show(a), ")"));
        }
      }
      // injectivity per slot
      for (int a2 = 0; a2 < np; ++a2)
        if (a2 != a && g.composable(b, a2))
          require(g.mu_of(b, a2) != r, "MuNotInjective",
                  cat("mu(", show(b), ",·)"));
    }
  // associativity over Y^[4]
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) {
      if (!g.composable(b, a)) continue;
      int ba = g.mu_of(b, a);
      for (int c = 0; c < np; ++c) {
        if (!g.composable(c, b)) continue;
        require(g.mu_of(g.mu_of(c, b), a) == g.mu_of(c, ba), "NotAssociative",
                cat("mu(mu(", show(c), ",", show(b), "),", show(a), ")"));
      }
    }
  // units: for each y the unique neutral element over (y,y)
  if (recompute_units) {
    g.unit_t.assign(g.y_size, -1);
    for (int y = 0; y < g.y_size; ++y) {
      int dg = g.ysq_index(y, y);
      for (int c = 0; c < np; ++c) {
        if (g.p.proj[c] != dg) continue;
        bool neutral = true;
        for (int a = 0; a < np && neutral; ++a) {
          if (g.composable(c, a) && g.mu_of(c, a) != a) neutral = false;
          if (g.composable(a, c) && g.mu_of(a, c) != a) neutral = false;
        }
        if (neutral) {
          require(g.unit_t[y] < 0, "UnitNotUnique", cat("over ", show(y)));
          g.unit_t[y] = c;
        }
      }
      require(g.unit_t[y] >= 0, "UnitMissing", cat("over ", show(y)));
      require(g.p.anchor[g.unit_t[y]] == tg.unit(), "UnitAnchorFails",
              cat("α(t(", show(y), ")) != 1"));
    }
    // inverses: μ(i(p), p) = t(y1) with i(p) over the flipped pair
    g.inv_i.assign(np, -1);
    for (int pe = 0; pe < np; ++pe) {
      auto [y1, y2] = g.chi(pe);
      int target = g.unit_t[y1];
      for (int c = 0; c < np; ++c) {
        if (g.p.proj[c] != g.ysq_index(y2, y1)) continue;
        if (g.mu_of(c, pe) == target) {
          require(g.inv_i[pe] < 0, "InverseNotUnique", cat("of ", show(pe)));
          g.inv_i[pe] = c;
        }
      }
      require(g.inv_i[pe] >= 0, "InverseMissing", cat("of ", show(pe)));
    }
    for (int pe = 0; pe < np; ++pe) {
      auto [y1, y2] = g.chi(pe);
      require(g.mu_of(pe, g.inv_i[pe]) == g.unit_t[y2], "InverseFails",
              cat("mu(p, i(p)) at ", show(pe)));
      require(g.p.anchor[g.inv_i[pe]] == tg.obj_inv(g.p.anchor[pe]),
              "InverseAnchorFails", cat("α(i(p)) at ", show(pe)));
      (void)y1;
    }
  }
  // the groupoid of Cor. co:groupoidstructure: objects Y, morphisms P
  FiniteGroupoid c;
  c.n_obj = g.y_size;
  c.n_mor = np;
  c.src.resize(np);
  c.tgt.resize(np);
  c.inv = g.inv_i;
  c.idm = g.unit_t;
  for (int pe = 0; pe < np; ++pe) {
    c.src[pe] = g.chi(pe)[0];
    c.tgt[pe] = g.chi(pe)[1];
  }
  c.cmp.assign(static_cast<size_t>(np) * np, -1);
  for (int b = 0; b < np; ++b)
    for (int a = 0; a < np; ++a)
      if (c.src[b] == c.tgt[a]) c.set_comp(b, a, g.mu_of(b, a));
  validate_groupoid(c);
}

/// Trivial gerbe: Y = M, P = triv_1 over the diagonal, μ the 2-group product.
struct TrivialGerbe {
  DiscreteBundleGerbe gerbe;
  TrivialBundle triv;  // P with its (pair, γ) points
};

inline TrivialGerbe trivial_gerbe(TwoGroup const& tg, int base_size) {
  TrivialGerbe out;
  DiscreteBundleGerbe& g = out.gerbe;
  g.gamma = tg;
  g.base_size = base_size;
  g.y_size = base_size;
  g.pi.resize(base_size);
  std::iota(g.pi.begin(), g.pi.end(), 0);
  g.ysq = fibered_pairs(g.pi, g.pi);
  out.triv = trivial_bundle_const(tg.gpd, static_cast<int>(g.ysq.size()), tg.unit());
  g.p = out.triv.bundle;
  int np = g.p.total_size;
  g.mu.assign(static_cast<size_t>(np) * np, -1);
  for (int b = 0; b < np; ++b)
    for (int a = 0; a < np; ++a) {
      if (!g.composable(b, a)) continue;
      g.set_mu(b, a, out.triv.index_of(out.triv.points[a][0],
                                       tg.mor_mul(out.triv.points[b][1],
                                                  out.triv.points[a][1])));
    }
  validate_gerbe(g);
  return out;
}

// --- gerbes from Čech cocycles ----------------------------------------------

/// Gerbe glued from a normalized Γ-1-cocycle over a concrete cover. Y is the
/// disjoint union of the patches; the cocycle is first extended from
/// increasing tuples to all ordered tuples (units id, f inverted, remaining
/// permutations solved from instances of the cocycle condition).
struct CocycleGerbe {
  DiscreteBundleGerbe gerbe;
  ConcreteCover cover;
  std::vector<std::array<int, 2>> y_points;  // y -> (patch, base point)
  std::vector<int> sections;                 // canonical σ_i offsets: y index of (i, m)
  // P elements are (ysq pair, γ); lex ordered
  std::vector<std::array<int, 2>> p_points;

  int y_index(int patch, int m) const {
    auto it = std::lower_bound(y_points.begin(), y_points.end(),
                               std::array<int, 2>{patch, m});
    GERBES_CHECK(it != y_points.end() && (*it) == (std::array<int, 2>{patch, m}),
                 "Y point not found");
    return static_cast<int>(it - y_points.begin());
  }
  int p_index(int pair, int gm) const {
    auto it = std::lower_bound(p_points.begin(), p_points.end(),
                               std::array<int, 2>{pair, gm});
    GERBES_CHECK(it != p_points.end() && (*it) == (std::array<int, 2>{pair, gm}),
                 "P point not found");
    return static_cast<int>(it - p_points.begin());
  }
};

namespace detail {

/// Extends normalized cocycle data to all ordered index tuples by a small
/// fixed-point solver over instances of the cocycle condition.
struct ExtendedCocycle {
  std::vector<int> fhat;  // ordered pair (i,j) -> Γ₀, -1 where absent
  std::vector<int> ghat;  // ordered triple -> Γ₁, -1 where absent
  int n = 0;

  int f(int i, int j) const { return fhat[i * n + j]; }
  int g(int i, int j, int k) const { return ghat[(i * n + j) * n + k]; }
};

inline ExtendedCocycle extend_cocycle(CoverNerve const& k, TwoGroup const& tg,
                                      H1Cocycle const& c) {
  int n = k.n_vertices;
  ExtendedCocycle ec;
  ec.n = n;
  ec.fhat.assign(static_cast<size_t>(n) * n, -1);
  ec.ghat.assign(static_cast<size_t>(n) * n * n, -1);
  auto pair_cell = [&](int i, int j) { return i == j || k.has_edge(std::min(i, j), std::max(i, j)); };
  auto triple_cell = [&](int i, int j, int l) {
    std::vector<int> s = {i, j, l};
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.size() == 1) return true;
    if (s.size() == 2) return k.has_edge(s[0], s[1]);
    return k.has_triangle(s[0], s[1], s[2]);
  };
  for (int i = 0; i < n; ++i) ec.fhat[i * n + i] = tg.unit();
  for (int e = 0; e < static_cast<int>(k.edges.size()); ++e) {
    auto [i, j] = k.edges[e];
    ec.fhat[i * n + j] = c.f[e];
    ec.fhat[j * n + i] = tg.obj_inv(c.f[e]);
  }
  auto set_g = [&](int i, int j, int l, int v) {
    int& slot = ec.ghat[(i * n + j) * n + l];
    GERBES_CHECK(slot < 0 || slot == v, "cocycle extension contradiction");
    slot = v;
  };
  // increasing triples carry the given data; repeated indices are units
  for (int t = 0; t < static_cast<int>(k.triangles.size()); ++t) {
    auto const& tr = k.triangles[t];
    set_g(tr[0], tr[1], tr[2], c.g[t]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!pair_cell(i, j)) continue;
      set_g(i, i, j, tg.id_mor(ec.f(i, j)));
      set_g(i, j, j, tg.id_mor(ec.f(i, j)));
      if (i != j) set_g(i, j, i, tg.id_mor(tg.unit()));
    }
  // solve the remaining permutations from cocycle-condition instances
  auto known = [&](int i, int j, int l) { return ec.g(i, j, l) >= 0; };
  bool progress = true;
  while (progress) {
    progress = false;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int cc = 0; cc < n; ++cc)
          for (int d = 0; d < n; ++d) {
            if (!triple_cell(a, b, cc) || !triple_cell(a, b, d) ||
                !triple_cell(a, cc, d) || !triple_cell(b, cc, d))
              continue;
            // C(a,b,c,d): g_abd ∘ (g_bcd·id_{f_ab}) = g_acd ∘ (id_{f_cd}·g_abc)
            int cnt = known(a, b, d) + known(b, cc, d) + known(a, cc, d) +
                      known(a, b, cc);
            if (cnt != 3) continue;
            int fab = ec.f(a, b), fcd = ec.f(cc, d);
            if (!known(a, b, d)) {
              int rhs = tg.comp(ec.g(a, cc, d),
                                tg.mor_mul(tg.id_mor(fcd), ec.g(a, b, cc)));
              set_g(a, b, d,
                    tg.comp(rhs, tg.mor_cinv(tg.mor_mul(ec.g(b, cc, d),
                                                        tg.id_mor(fab)))));
            } else if (!known(b, cc, d)) {
              int rhs = tg.comp(ec.g(a, cc, d),
                                tg.mor_mul(tg.id_mor(fcd), ec.g(a, b, cc)));
              int whisk = tg.comp(tg.mor_cinv(ec.g(a, b, d)), rhs);
              set_g(b, cc, d, tg.mor_mul(whisk, tg.id_mor(tg.obj_inv(fab))));
            } else if (!known(a, cc, d)) {
              int lhs = tg.comp(ec.g(a, b, d),
                                tg.mor_mul(ec.g(b, cc, d), tg.id_mor(fab)));
              set_g(a, cc, d,
                    tg.comp(lhs, tg.mor_cinv(tg.mor_mul(tg.id_mor(fcd),
                                                        ec.g(a, b, cc)))));
            } else {
              int lhs = tg.comp(ec.g(a, b, d),
                                tg.mor_mul(ec.g(b, cc, d), tg.id_mor(fab)));
              int whisk = tg.comp(tg.mor_cinv(ec.g(a, cc, d)), lhs);
              set_g(a, b, cc, tg.mor_mul(tg.id_mor(tg.obj_inv(fcd)), whisk));
            }
            progress = true;
          }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        if (triple_cell(i, j, l))
          GERBES_CHECK(known(i, j, l), "cocycle extension left a gap");
  return ec;
}

}  // namespace detail

inline CocycleGerbe gerbe_from_cocycle(ConcreteCover const& cover, TwoGroup const& tg,
                                       H1Cocycle const& c) {
  auto k = nerve_of_cover(cover);
  validate_h1(k, tg, c);
  auto ec = detail::extend_cocycle(k, tg, c);
  CocycleGerbe out;
  out.cover = cover;
  DiscreteBundleGerbe& g = out.gerbe;
  g.gamma = tg;
  g.base_size = cover.n_points;
  for (int i = 0; i < static_cast<int>(cover.sets.size()); ++i)
    for (int m : cover.sets[i]) out.y_points.push_back({i, m});
  g.y_size = static_cast<int>(out.y_points.size());
  g.pi.resize(g.y_size);
  for (int y = 0; y < g.y_size; ++y) g.pi[y] = out.y_points[y][1];
  g.ysq = fibered_pairs(g.pi, g.pi);
  // P: over a pair ((i,m),(j,m)) the trivial fiber {γ : t(γ) = f̂_ij}
  for (int pr = 0; pr < static_cast<int>(g.ysq.size()); ++pr) {
    auto [ya, yb] = g.ysq[pr];
    int i = out.y_points[ya][0], j = out.y_points[yb][0];
    for (int m = 0; m < tg.n_mor(); ++m)
      if (tg.tgt(m) == ec.f(i, j)) out.p_points.push_back({pr, m});
  }
  PrincipalBundle& p = g.p;
  p.structure = tg.gpd;
  p.base_size = static_cast<int>(g.ysq.size());
  p.total_size = static_cast<int>(out.p_points.size());
  p.proj.resize(p.total_size);
  p.anchor.resize(p.total_size);
  p.act.assign(static_cast<size_t>(p.total_size) * tg.n_mor(), -1);
  for (int x = 0; x < p.total_size; ++x) {
    p.proj[x] = out.p_points[x][0];
    p.anchor[x] = tg.src(out.p_points[x][1]);
  }
  for (int x = 0; x < p.total_size; ++x)
    for (int m = 0; m < tg.n_mor(); ++m)
      if (p.anchor[x] == tg.tgt(m))
        p.set_act(x, m, out.p_index(out.p_points[x][0],
                                    tg.comp(out.p_points[x][1], m)));
  g.mu.assign(static_cast<size_t>(p.total_size) * p.total_size, -1);
  for (int b = 0; b < p.total_size; ++b)
    for (int a = 0; a < p.total_size; ++a) {
      if (!g.composable(b, a)) continue;
      auto [ya, yb] = g.ysq[p.proj[a]];
      int yc = g.ysq[p.proj[b]][1];
      int i = out.y_points[ya][0], j = out.y_points[yb][0], l = out.y_points[yc][0];
      int val = tg.comp(ec.g(i, j, l),
                        tg.mor_mul(out.p_points[b][1], out.p_points[a][1]));
      g.set_mu(b, a, out.p_index(g.ysq_index(ya, yc), val));
    }
  validate_gerbe(g);
  out.sections.resize(cover.sets.size());
  // canonical sections σ_i(m) = (i, m); store the patch offsets
  for (int i = 0; i < static_cast<int>(cover.sets.size()); ++i)
    out.sections[i] = cover.sets[i].empty() ? -1 : out.y_index(i, cover.sets[i][0]);
  return out;
}

/// Extraction of a Γ-1-cocycle from a gerbe presented over a concrete cover
/// with sections σ_i: U_i → Y. Per edge, a constant-anchor family u_ij(m) in
/// the fibers over (σ_i(m), σ_j(m)) is chosen (least anchor, least elements);
/// g_ijk solves μ(u_jk, u_ij) = u_ik ∘ g_ijk and must be constant per cell.
inline H1Cocycle extract_cocycle(DiscreteBundleGerbe const& g, ConcreteCover const& cover,
                                 std::vector<std::vector<int>> const& sections,
                                 std::vector<std::vector<int>> const* u_choice = nullptr) {
  auto k = nerve_of_cover(cover);
  TwoGroup const& tg = g.gamma;
  int ne = static_cast<int>(k.edges.size());
  // u[e] lists one P element per point of the edge cell, constant anchor
  std::vector<std::vector<int>> u(ne);
  std::vector<int> f(ne, -1);
  auto fiber_of = [&](int y1, int y2) {
    std::vector<int> out;
    int pr = g.ysq_index(y1, y2);
    for (int x = 0; x < g.p.total_size; ++x)
      if (g.p.proj[x] == pr) out.push_back(x);
    return out;
  };
  for (int e = 0; e < ne; ++e) {
    auto [i, j] = k.edges[e];
    auto cell = intersect_sorted(cover.sets[i], cover.sets[j]);
    if (u_choice) {
      u[e] = (*u_choice)[e];
      require(u[e].size() == cell.size(), "BadTrivialization", cat("edge ", show(e)));
      f[e] = g.p.anchor[u[e][0]];
      for (int x : u[e])
        require(g.p.anchor[x] == f[e], "TrivializationAnchorNotConstant",
                cat("edge ", show(e)));
    } else {
      // least anchor present over every point of the cell
      for (int a = 0; a < tg.n_obj() && f[e] < 0; ++a) {
        bool ok = true;
        for (size_t t = 0; t < cell.size() && ok; ++t) {
          auto pos = [&](std::vector<int> const& s, int mm) {
            return static_cast<int>(std::lower_bound(s.begin(), s.end(), mm) - s.begin());
          };
          int y1 = sections[i][pos(cover.sets[i], cell[t])];
          int y2 = sections[j][pos(cover.sets[j], cell[t])];
          bool found = false;
          for (int x : fiber_of(y1, y2))
            if (g.p.anchor[x] == a) found = true;
          ok = found;
        }
        if (ok) f[e] = a;
      }
      require(f[e] >= 0, "NoConstantTrivialization", cat("edge ", show(e)));
      for (size_t t = 0; t < cell.size(); ++t) {
        auto pos = [&](std::vector<int> const& s, int mm) {
          return static_cast<int>(std::lower_bound(s.begin(), s.end(), mm) - s.begin());
        };
        int y1 = sections[i][pos(cover.sets[i], cell[t])];
        int y2 = sections[j][pos(cover.sets[j], cell[t])];
        for (int x : fiber_of(y1, y2))
          if (g.p.anchor[x] == f[e]) {
            u[e].push_back(x);
            break;
          }
      }
    }
  }
  H1Cocycle c;
  c.f = f;
  c.g.assign(k.triangles.size(), -1);
  for (int t = 0; t < static_cast<int>(k.triangles.size()); ++t) {
    auto const& tr = k.triangles[t];
    int eij = k.edge_index(tr[0], tr[1]);
    int ejk = k.edge_index(tr[1], tr[2]);
    int eik = k.edge_index(tr[0], tr[2]);
    auto cell = intersect_sorted(intersect_sorted(cover.sets[tr[0]], cover.sets[tr[1]]),
                                 cover.sets[tr[2]]);
    auto pos_in = [&](int i, int j, int mm) {
      auto cell_ij = intersect_sorted(cover.sets[i], cover.sets[j]);
      return static_cast<int>(std::lower_bound(cell_ij.begin(), cell_ij.end(), mm) -
                              cell_ij.begin());
    };
    int gval = -1;
    for (int mm : cell) {
      int ujk = u[ejk][pos_in(tr[1], tr[2], mm)];
      int uij = u[eij][pos_in(tr[0], tr[1], mm)];
      int uik = u[eik][pos_in(tr[0], tr[2], mm)];
      int prod = g.mu_of(ujk, uij);
      int gm = transporter(g.p, uik, prod);
      require(gval < 0 || gval == gm, "CocycleNotConstant",
              cat("triangle (", show(tr[0]), ",", show(tr[1]), ",", show(tr[2]), ")"));
      gval = gm;
    }
    c.g[t] = gval;
  }
  validate_h1(k, tg, c);
  return c;
}

/// Default sections σ_i(m) := least preimage of m in Y.
inline std::vector<std::vector<int>> default_sections(DiscreteBundleGerbe const& g,
                                                      ConcreteCover const& cover) {
  std::vector<std::vector<int>> s(cover.sets.size());
  for (size_t i = 0; i < cover.sets.size(); ++i)
    for (int m : cover.sets[i]) {
      int pick = -1;
      for (int y = 0; y < g.y_size && pick < 0; ++y)
        if (g.pi[y] == m) pick = y;
      GERBES_CHECK(pick >= 0, "pi not surjective");
      s[i].push_back(pick);
    }
  return s;
}

}  // namespace gerbes

#endif  // GERBES_GERBE_HPP
