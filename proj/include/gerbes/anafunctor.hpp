#ifndef GERBES_ANAFUNCTOR_HPP
#define GERBES_ANAFUNCTOR_HPP

#include "gerbes/bundle.hpp"

namespace gerbes {

/// Anafunctor X → Y: a total set with a left X-action and a right Y-action
/// that commute, such that α_l with the right action is a principal Y-bundle
/// over X₀. act_l(χ,f) is defined iff src(χ) = α_l(f); act_r(f,η) iff
/// α_r(f) = tgt(η).
struct Anafunctor {
  FiniteGroupoid source, target;
  int total = 0;
  std::vector<int> anchor_l, anchor_r;
  std::vector<int> act_l;  // X₁ × total -> total, -1 outside domain
  std::vector<int> act_r;  // total × Y₁ -> total, -1 outside domain

  int lact(int chi, int f) const {
    int r = act_l[static_cast<size_t>(chi) * total + f];
    GERBES_CHECK(r >= 0, "left action outside domain");
    return r;
  }
  int ract(int f, int eta) const {
    int r = act_r[static_cast<size_t>(f) * target.n_mor + eta];
    GERBES_CHECK(r >= 0, "right action outside domain");
    return r;
  }
  int lact_raw(int chi, int f) const {
    return act_l[static_cast<size_t>(chi) * total + f];
  }
  int ract_raw(int f, int eta) const {
    return act_r[static_cast<size_t>(f) * target.n_mor + eta];
  }
  void set_lact(int chi, int f, int v) {
    act_l[static_cast<size_t>(chi) * total + f] = v;
  }
  void set_ract(int f, int eta, int v) {
    act_r[static_cast<size_t>(f) * target.n_mor + eta] = v;
  }

  /// the right leg as a principal Y-bundle over X₀
  PrincipalBundle right_leg_bundle() const {
    PrincipalBundle b;
    b.structure = target;
    b.base_size = source.n_obj;
    b.total_size = total;
    b.proj = anchor_l;
    b.anchor = anchor_r;
    b.act = act_r;
    return b;
  }
};

inline void validate_anafunctor(Anafunctor const& a) {
  require(static_cast<int>(a.anchor_l.size()) == a.total &&
              static_cast<int>(a.anchor_r.size()) == a.total &&
              a.act_l.size() == static_cast<size_t>(a.source.n_mor) * a.total &&
              a.act_r.size() == static_cast<size_t>(a.total) * a.target.n_mor,
          "BadLength", "anafunctor arrays");
  // right leg is a principal target-bundle over the source objects; this
  // covers the right action axioms, surjectivity of α_l and principality
  validate_bundle(a.right_leg_bundle());
  for (int chi = 0; chi < a.source.n_mor; ++chi)
    for (int f = 0; f < a.total; ++f) {
      int v = a.lact_raw(chi, f);
      if (a.source.src[chi] != a.anchor_l[f]) {
        require(v < 0, "ActionOutOfDomain", cat("left (", show(chi), ",", show(f), ")"));
        continue;
      }
      require(v >= 0 && v < a.total, "ActionMissing",
              cat("left (", show(chi), ",", show(f), ")"));
      require(a.anchor_l[v] == a.source.tgt[chi], "AnchorActionMismatch",
              cat("left (", show(chi), ",", show(f), ")"));
      require(a.anchor_r[v] == a.anchor_r[f], "AnchorActionMismatch",
              cat("left action moved the right anchor at (", show(chi), ",", show(f), ")"));
    }
  for (int f = 0; f < a.total; ++f) {
    require(a.lact(a.source.idm[a.anchor_l[f]], f) == f, "UnitActionFails",
            cat("left unit at ", show(f)));
    for (int c1 = 0; c1 < a.source.n_mor; ++c1) {
      if (a.source.src[c1] != a.anchor_l[f]) continue;
      int f1 = a.lact(c1, f);
      for (int c2 = 0; c2 < a.source.n_mor; ++c2) {
        if (a.source.src[c2] != a.source.tgt[c1]) continue;
        require(a.lact(c2, f1) == a.lact(a.source.comp(c2, c1), f),
                "ActionNotAssociative", cat("left at (", show(c2), ",", show(c1), ")"));
      }
      // the two actions commute
      for (int eta = 0; eta < a.target.n_mor; ++eta)
        if (a.anchor_r[f] == a.target.tgt[eta])
          require(a.ract(f1, eta) == a.lact(c1, a.ract(f, eta)), "ActionsDoNotCommute",
                  cat("(", show(c1), ",", show(f), ",", show(eta), ")"));
    }
  }
}

/// Anafunctor of a functor: total = {(x,g) : t(g) = φ(x)} with
/// χ∘(x,g) = (t(χ), φ(χ)∘g) and (x,g)∘η = (x, g∘η).
struct FunctorAnafunctor {
  Anafunctor ana;
  std::vector<std::array<int, 2>> points;  // total -> (x, g)

  int index_of(int x, int g) const {
    auto it = std::lower_bound(points.begin(), points.end(), std::array<int, 2>{x, g});
    GERBES_CHECK(it != points.end() && (*it) == (std::array<int, 2>{x, g}),
                 "anafunctor point not found");
    return static_cast<int>(it - points.begin());
  }
};

inline FunctorAnafunctor anafunctor_from_functor(GroupoidFunctor const& phi) {
  FunctorAnafunctor out;
  for (int x = 0; x < phi.source.n_obj; ++x)
    for (int g = 0; g < phi.target.n_mor; ++g)
      if (phi.target.tgt[g] == phi.obj_map[x]) out.points.push_back({x, g});
  Anafunctor& a = out.ana;
  a.source = phi.source;
  a.target = phi.target;
  a.total = static_cast<int>(out.points.size());
  a.anchor_l.resize(a.total);
  a.anchor_r.resize(a.total);
  a.act_l.assign(static_cast<size_t>(a.source.n_mor) * a.total, -1);
  a.act_r.assign(static_cast<size_t>(a.total) * a.target.n_mor, -1);
  for (int i = 0; i < a.total; ++i) {
    a.anchor_l[i] = out.points[i][0];
    a.anchor_r[i] = phi.target.src[out.points[i][1]];
  }
  for (int i = 0; i < a.total; ++i) {
    auto [x, g] = out.points[i];
    for (int chi = 0; chi < phi.source.n_mor; ++chi)
      if (phi.source.src[chi] == x)
        a.set_lact(chi, i,
                   out.index_of(phi.source.tgt[chi],
                                phi.target.comp(phi.mor_map[chi], g)));
    for (int eta = 0; eta < phi.target.n_mor; ++eta)
      if (a.anchor_r[i] == phi.target.tgt[eta])
        a.set_ract(i, eta, out.index_of(x, phi.target.comp(g, eta)));
  }
  validate_anafunctor(a);
  return out;
}

inline Anafunctor identity_anafunctor(FiniteGroupoid const& g) {
  return anafunctor_from_functor(identity_functor(g)).ana;
}

/// Composition of anafunctors: quotient of {(f,g) : α_r(f) = β_l(g)} by
/// (f, η∘g) ~ (f∘η, g), with anchors and actions on class representatives.
struct ComposedAnafunctor {
  Anafunctor ana;
  std::vector<std::array<int, 2>> pairs;  // raw pair index -> (f, g)
  std::vector<int> class_of_pair;         // raw pair -> class (= total index)

  int class_of(int f, int g) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::array<int, 2>{f, g});
    GERBES_CHECK(it != pairs.end() && (*it) == (std::array<int, 2>{f, g}),
                 "composite pair not found");
    return class_of_pair[it - pairs.begin()];
  }
};

inline ComposedAnafunctor compose_anafunctors(Anafunctor const& f, Anafunctor const& g) {
  GERBES_CHECK(f.target == g.source, "anafunctor composition mismatch");
  ComposedAnafunctor out;
  for (int a = 0; a < f.total; ++a)
    for (int b = 0; b < g.total; ++b)
      if (f.anchor_r[a] == g.anchor_l[b]) out.pairs.push_back({a, b});
  int n = static_cast<int>(out.pairs.size());
  auto pair_index = [&](int a, int b) {
    auto it = std::lower_bound(out.pairs.begin(), out.pairs.end(),
                               std::array<int, 2>{a, b});
    GERBES_CHECK(it != out.pairs.end() && (*it) == (std::array<int, 2>{a, b}),
                 "missing pair");
    return static_cast<int>(it - out.pairs.begin());
  };
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    auto [a, b] = out.pairs[i];
    for (int eta = 0; eta < f.target.n_mor; ++eta) {
      if (f.anchor_r[a] != f.target.tgt[eta]) continue;
      if (g.anchor_l[b] != f.target.tgt[eta]) continue;
      // (f∘η, η⁻¹∘g-free form): (f, η∘g') ~ (f∘η, g') for s(η) = α_l(g')
      int fa = f.ract(a, eta);
      // b plays η∘g' with g' = η⁻¹∘b
      int gprime = g.lact(g.source.inv[eta], b);
      uf.unite(i, pair_index(fa, gprime));
    }
  }
  auto [cls, k] = uf.compress();
  out.class_of_pair = cls;
  Anafunctor& e = out.ana;
  e.source = f.source;
  e.target = g.target;
  e.total = k;
  e.anchor_l.assign(k, -1);
  e.anchor_r.assign(k, -1);
  for (int i = 0; i < n; ++i) {
    auto [a, b] = out.pairs[i];
    int c = cls[i];
    int al = f.anchor_l[a], ar = g.anchor_r[b];
    if (e.anchor_l[c] < 0) {
      e.anchor_l[c] = al;
      e.anchor_r[c] = ar;
    } else {
      require(e.anchor_l[c] == al && e.anchor_r[c] == ar, "QuotientActionIllDefined",
              cat("anchors differ within class ", show(c)));
    }
  }
  e.act_l.assign(static_cast<size_t>(e.source.n_mor) * k, -1);
  e.act_r.assign(static_cast<size_t>(k) * e.target.n_mor, -1);
  for (int i = 0; i < n; ++i) {
    auto [a, b] = out.pairs[i];
    int c = cls[i];
    for (int chi = 0; chi < e.source.n_mor; ++chi) {
      if (e.source.src[chi] != f.anchor_l[a]) continue;
      int img = cls[pair_index(f.lact(chi, a), b)];
      int& slot = e.act_l[static_cast<size_t>(chi) * k + c];
      require(slot < 0 || slot == img, "QuotientActionIllDefined",
              cat("left action on class ", show(c)));
      slot = img;
    }
    for (int zeta = 0; zeta < e.target.n_mor; ++zeta) {
      if (g.anchor_r[b] != e.target.tgt[zeta]) continue;
      int img = cls[pair_index(a, g.ract(b, zeta))];
      int& slot = e.act_r[static_cast<size_t>(c) * e.target.n_mor + zeta];
      require(slot < 0 || slot == img, "QuotientActionIllDefined",
              cat("right action on class ", show(c)));
      slot = img;
    }
  }
  validate_anafunctor(e);
  return out;
}

/// Transformations between anafunctors: anchor-preserving maps equivariant
/// for both actions. `all` collects every one (used by the fullness checks).
inline void validate_ana_transformation(Anafunctor const& f, Anafunctor const& g,
                                        std::vector<int> const& m) {
  GERBES_CHECK(f.source == g.source && f.target == g.target,
               "transformation between incompatible anafunctors");
  require(static_cast<int>(m.size()) == f.total, "BadLength", "transformation");
  for (int x = 0; x < f.total; ++x) {
    require(g.anchor_l[m[x]] == f.anchor_l[x] && g.anchor_r[m[x]] == f.anchor_r[x],
            "NotAnchorPreserving", cat("point ", show(x)));
  }
  for (int x = 0; x < f.total; ++x) {
    for (int chi = 0; chi < f.source.n_mor; ++chi)
      if (f.source.src[chi] == f.anchor_l[x])
        require(m[f.lact(chi, x)] == g.lact(chi, m[x]), "NotEquivariant",
                cat("left at (", show(chi), ",", show(x), ")"));
    for (int eta = 0; eta < f.target.n_mor; ++eta)
      if (f.anchor_r[x] == f.target.tgt[eta])
        require(m[f.ract(x, eta)] == g.ract(m[x], eta), "NotEquivariant",
                cat("right at (", show(x), ",", show(eta), ")"));
  }
}

inline std::vector<std::vector<int>> find_ana_transformations(Anafunctor const& f,
                                                              Anafunctor const& g,
                                                              bool first_only = false) {
  std::vector<std::vector<int>> found;
  if (f.total != g.total) return found;
  int nx = f.source.n_obj;
  std::vector<std::vector<int>> f_fib(nx), g_fib(nx);
  for (int p = 0; p < f.total; ++p) f_fib[f.anchor_l[p]].push_back(p);
  for (int p = 0; p < g.total; ++p) g_fib[g.anchor_l[p]].push_back(p);
  std::vector<int> m(f.total, -1);
  std::function<void(int)> rec = [&](int x) {
    if (first_only && !found.empty()) return;
    if (x == nx) {
      try {
        validate_ana_transformation(f, g, m);
        found.push_back(m);
      } catch (validation_error const&) {
      }
      return;
    }
    if (f_fib[x].empty()) {
      rec(x + 1);
      return;
    }
    int rep = f_fib[x][0];
    for (int cand : g_fib[x]) {
      if (g.anchor_r[cand] != f.anchor_r[rep]) continue;
      std::vector<std::pair<int, int>> placed;
      bool ok = true;
      for (int eta = 0; eta < f.target.n_mor && ok; ++eta) {
        if (f.anchor_r[rep] != f.target.tgt[eta]) continue;
        int from = f.ract(rep, eta), to = g.ract(cand, eta);
        if (m[from] >= 0 && m[from] != to) ok = false;
        if (ok && m[from] < 0) {
          m[from] = to;
          placed.push_back({from, to});
        }
      }
      if (ok) rec(x + 1);
      for (auto& [a, b] : placed) m[a] = -1;
    }
  };
  rec(0);
  return found;
}

inline std::optional<std::vector<int>> find_ana_transformation(Anafunctor const& f,
                                                               Anafunctor const& g) {
  auto all = find_ana_transformations(f, g, true);
  if (all.empty()) return std::nullopt;
  return all[0];
}

/// Weak equivalence for anafunctors, decided by biprincipality: the right-leg
/// principality from the invariant plus surjectivity of α_r and principality
/// of the left action along α_r.
inline WeakEquivalenceResult is_weak_equivalence_anafunctor(Anafunctor const& a) {
  std::vector<std::vector<int>> rfib(a.target.n_obj);
  for (int p = 0; p < a.total; ++p) rfib[a.anchor_r[p]].push_back(p);
  for (int y = 0; y < a.target.n_obj; ++y)
    if (rfib[y].empty())
      return {false, cat("right anchor misses target object ", show(y))};
  for (int p = 0; p < a.total; ++p) {
    std::vector<int> reached;
    for (int chi = 0; chi < a.source.n_mor; ++chi)
      if (a.source.src[chi] == a.anchor_l[p]) reached.push_back(a.lact(chi, p));
    std::sort(reached.begin(), reached.end());
    reached.erase(std::unique(reached.begin(), reached.end()), reached.end());
    auto fiber = rfib[a.anchor_r[p]];
    std::sort(fiber.begin(), fiber.end());
    if (reached != fiber)
      return {false, cat("left action is not principal along α_r at point ", show(p))};
    // freeness
    std::vector<int> hits;
    for (int chi = 0; chi < a.source.n_mor; ++chi)
      if (a.source.src[chi] == a.anchor_l[p]) hits.push_back(a.lact(chi, p));
    std::sort(hits.begin(), hits.end());
    if (std::adjacent_find(hits.begin(), hits.end()) != hits.end())
      return {false, cat("left action is not free along α_r at point ", show(p))};
  }
  return {true, ""};
}

// --- strict 2-group actions on groupoids and on anafunctors -----------------

/// Strict right action of a 2-group on a groupoid: a functor
/// R: 𝒫 × Γ → 𝒫 with R(p,1) = p, R(ρ,id₁) = ρ and strict associativity.
struct GroupoidTwoGroupAction {
  TwoGroup gamma;
  FiniteGroupoid gpd;
  std::vector<int> r_obj;  // n_obj × Γ₀
  std::vector<int> r_mor;  // n_mor × Γ₁

  int on_obj(int p, int g) const { return r_obj[static_cast<size_t>(p) * gamma.n_obj() + g]; }
  int on_mor(int m, int c) const { return r_mor[static_cast<size_t>(m) * gamma.n_mor() + c]; }
};

inline void validate_twogroup_action(GroupoidTwoGroupAction const& a) {
  require(a.r_obj.size() == static_cast<size_t>(a.gpd.n_obj) * a.gamma.n_obj() &&
              a.r_mor.size() == static_cast<size_t>(a.gpd.n_mor) * a.gamma.n_mor(),
          "BadLength", "action tables");
  for (int p = 0; p < a.gpd.n_obj; ++p)
    require(a.on_obj(p, 0) == p, "ActionNotStrict", cat("R(", show(p), ",1) != p"));
  for (int m = 0; m < a.gpd.n_mor; ++m)
    require(a.on_mor(m, a.gamma.id_mor(0)) == m, "ActionNotStrict",
            cat("R(", show(m), ",id_1) != ρ"));
  // functor: compatible with src/tgt/id/comp of 𝒫 × Γ
  for (int m = 0; m < a.gpd.n_mor; ++m)
    for (int c = 0; c < a.gamma.n_mor(); ++c) {
      int rm = a.on_mor(m, c);
      require(0 <= rm && rm < a.gpd.n_mor, "IndexOutOfRange", "R on morphisms");
      require(a.gpd.src[rm] == a.on_obj(a.gpd.src[m], a.gamma.src(c)) &&
                  a.gpd.tgt[rm] == a.on_obj(a.gpd.tgt[m], a.gamma.tgt(c)),
              "ActionNotFunctor", cat("src/tgt at (", show(m), ",", show(c), ")"));
    }
  for (int p = 0; p < a.gpd.n_obj; ++p)
    for (int g = 0; g < a.gamma.n_obj(); ++g)
      require(a.on_mor(a.gpd.idm[p], a.gamma.id_mor(g)) == a.gpd.idm[a.on_obj(p, g)],
              "ActionNotFunctor", cat("identities at (", show(p), ",", show(g), ")"));
  for (int m2 = 0; m2 < a.gpd.n_mor; ++m2)
    for (int m1 = 0; m1 < a.gpd.n_mor; ++m1) {
      if (!a.gpd.composable(m2, m1)) continue;
      for (int c2 = 0; c2 < a.gamma.n_mor(); ++c2)
        for (int c1 = 0; c1 < a.gamma.n_mor(); ++c1) {
          if (!a.gamma.composable(c2, c1)) continue;
          require(a.on_mor(a.gpd.comp(m2, m1), a.gamma.comp(c2, c1)) ==
                      a.gpd.comp(a.on_mor(m2, c2), a.on_mor(m1, c1)),
                  "ActionNotFunctor",
                  cat("composition at (", show(m2), ",", show(m1), ")"));
        }
    }
  // strict associativity square
  for (int p = 0; p < a.gpd.n_obj; ++p)
    for (int g1 = 0; g1 < a.gamma.n_obj(); ++g1)
      for (int g2 = 0; g2 < a.gamma.n_obj(); ++g2)
        require(a.on_obj(a.on_obj(p, g1), g2) == a.on_obj(p, a.gamma.obj_mul(g1, g2)),
                "ActionNotStrict", cat("objects at (", show(p), ",", show(g1), ",",
                                       show(g2), ")"));
  for (int m = 0; m < a.gpd.n_mor; ++m)
    for (int c1 = 0; c1 < a.gamma.n_mor(); ++c1)
      for (int c2 = 0; c2 < a.gamma.n_mor(); ++c2)
        require(a.on_mor(a.on_mor(m, c1), c2) == a.on_mor(m, a.gamma.mor_mul(c1, c2)),
                "ActionNotStrict",
                cat("morphisms at (", show(m), ",", show(c1), ",", show(c2), ")"));
}

/// Γ-action on an anafunctor between Γ-groupoids: a Γ₁-action on the total
/// space compatible with anchors and both groupoid actions.
struct GammaActionOnAnafunctor {
  Anafunctor ana;
  GroupoidTwoGroupAction left;   // action on the source
  GroupoidTwoGroupAction right;  // action on the target
  std::vector<int> rho;          // total × Γ₁ -> total

  int act(int f, int c) const {
    return rho[static_cast<size_t>(f) * left.gamma.n_mor() + c];
  }
};

inline void validate_gamma_action(GammaActionOnAnafunctor const& ga) {
  Anafunctor const& a = ga.ana;
  TwoGroup const& tg = ga.left.gamma;
  GERBES_CHECK(ga.right.gamma == tg, "mismatched 2-groups");
  GERBES_CHECK(a.source == ga.left.gpd && a.target == ga.right.gpd,
               "action groupoids do not match the anafunctor");
  require(ga.rho.size() == static_cast<size_t>(a.total) * tg.n_mor(), "BadLength",
          "gamma action table");
  for (int f = 0; f < a.total; ++f) {
    require(ga.act(f, tg.id_mor(0)) == f, "ActionAxiomFails",
            cat("unit at ", show(f)));
    for (int c = 0; c < tg.n_mor(); ++c) {
      int v = ga.act(f, c);
      require(0 <= v && v < a.total, "IndexOutOfRange", "gamma action");
      // (i) anchors
      require(a.anchor_l[v] == ga.left.on_obj(a.anchor_l[f], tg.tgt(c)),
              "ActionAxiomFails", cat("left anchor at (", show(f), ",", show(c), ")"));
      require(a.anchor_r[v] == ga.right.on_obj(a.anchor_r[f], tg.src(c)),
              "ActionAxiomFails", cat("right anchor at (", show(f), ",", show(c), ")"));
      for (int c2 = 0; c2 < tg.n_mor(); ++c2)
        require(ga.act(v, c2) == ga.act(f, tg.mor_mul(c, c2)), "ActionAxiomFails",
                cat("group action at (", show(f), ",", show(c), ",", show(c2), ")"));
    }
  }
  // (ii) compatibility ρ(χ∘f∘η, γl∘γ∘γr) = R1(χ,γl)∘ρ(f,γ)∘R2(η,γr)
  for (int f = 0; f < a.total; ++f)
    for (int c = 0; c < tg.n_mor(); ++c) {
      int base = ga.act(f, c);
      for (int chi = 0; chi < a.source.n_mor; ++chi) {
        if (a.source.src[chi] != a.anchor_l[f]) continue;
        for (int cl = 0; cl < tg.n_mor(); ++cl) {
          if (tg.src(cl) != tg.tgt(c)) continue;
          for (int eta = 0; eta < a.target.n_mor; ++eta) {
            if (a.target.tgt[eta] != a.anchor_r[f]) continue;
            for (int cr = 0; cr < tg.n_mor(); ++cr) {
              if (tg.tgt(cr) != tg.src(c)) continue;
              int lhs = ga.act(a.ract(a.lact(chi, f), eta),
                               tg.comp(tg.comp(cl, c), cr));
              int rhs = a.ract(a.lact(ga.left.on_mor(chi, cl), base),
                               ga.right.on_mor(eta, cr));
              require(lhs == rhs, "ActionAxiomFails",
                      cat("compatibility at f=", show(f), " γ=", show(c)));
            }
          }
        }
      }
    }
}

/// Composite Γ-action on a composed anafunctor:
/// [(f,g)]·γ := [(ρ(f,γ), τ(g, id_{s(γ)}))].
inline GammaActionOnAnafunctor compose_gamma_actions(ComposedAnafunctor const& comp,
                                                     GammaActionOnAnafunctor const& fa,
                                                     GammaActionOnAnafunctor const& gb) {
  TwoGroup const& tg = fa.left.gamma;
  GammaActionOnAnafunctor out;
  out.ana = comp.ana;
  out.left = fa.left;
  out.right = gb.right;
  out.rho.assign(static_cast<size_t>(comp.ana.total) * tg.n_mor(), -1);
  for (int i = 0; i < static_cast<int>(comp.pairs.size()); ++i) {
    auto [f, g] = comp.pairs[i];
    int c = comp.class_of_pair[i];
    for (int gm = 0; gm < tg.n_mor(); ++gm) {
      int img = comp.class_of(fa.act(f, gm), gb.act(g, tg.id_mor(tg.src(gm))));
      int& slot = out.rho[static_cast<size_t>(c) * tg.n_mor() + gm];
      require(slot < 0 || slot == img, "IllDefinedOnQuotient",
              cat("composite action on class ", show(c)));
      slot = img;
    }
  }
  validate_gamma_action(out);
  return out;
}

/// Γ-action on the anafunctor of a strictly equivariant functor:
/// (x,η)·γ := (R1(x,t(γ)), R2(η,γ)).
inline GammaActionOnAnafunctor gamma_action_from_equivariant_functor(
    FunctorAnafunctor const& fa, GroupoidFunctor const& phi,
    GroupoidTwoGroupAction const& r1, GroupoidTwoGroupAction const& r2) {
  TwoGroup const& tg = r1.gamma;
  GammaActionOnAnafunctor out;
  out.ana = fa.ana;
  out.left = r1;
  out.right = r2;
  out.rho.assign(static_cast<size_t>(fa.ana.total) * tg.n_mor(), -1);
  for (int i = 0; i < fa.ana.total; ++i) {
    auto [x, eta] = fa.points[i];
    for (int c = 0; c < tg.n_mor(); ++c)
      out.rho[static_cast<size_t>(i) * tg.n_mor() + c] =
          fa.index_of(r1.on_obj(x, tg.tgt(c)), r2.on_mor(eta, c));
  }
  (void)phi;
  validate_gamma_action(out);
  return out;
}

}  // namespace gerbes

#endif  // GERBES_ANAFUNCTOR_HPP
