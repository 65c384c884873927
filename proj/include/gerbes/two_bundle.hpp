#ifndef GERBES_TWO_BUNDLE_HPP
#define GERBES_TWO_BUNDLE_HPP

#include "gerbes/anafunctor.hpp"

namespace gerbes {

/// Principal Γ-2-bundle: a groupoid with a surjective functor to discrete(M)
/// and a strict Γ-action whose shear functor τ = (pr₁, R) is a weak
/// equivalence onto 𝒫 ×_M 𝒫.
struct DiscretePrincipal2Bundle {
  GroupoidTwoGroupAction action;  // holds Γ, 𝒫 and the R tables
  int base_size = 0;
  std::vector<int> base_map;      // objects -> M

  TwoGroup const& gamma() const { return action.gamma; }
  FiniteGroupoid const& gpd() const { return action.gpd; }
};

/// The shear functor τ: 𝒫 × Γ → 𝒫 ×_M 𝒫 together with its groupoids.
struct ShearData {
  FiniteGroupoid product;      // 𝒫 × Γ
  SubGroupoid fiber_product;   // 𝒫 ×_M 𝒫 inside 𝒫 × 𝒫
  GroupoidFunctor tau;
};

inline ShearData shear_functor(DiscretePrincipal2Bundle const& b) {
  FiniteGroupoid const& p = b.gpd();
  TwoGroup const& tg = b.gamma();
  ShearData s;
  s.product = product_groupoid(p, tg.gpd);
  auto pp = product_groupoid(p, p);
  std::vector<int> objs;
  for (int x = 0; x < p.n_obj; ++x)
    for (int y = 0; y < p.n_obj; ++y)
      if (b.base_map[x] == b.base_map[y]) objs.push_back(x * p.n_obj + y);
  s.fiber_product = full_subgroupoid(pp, objs);
  GroupoidFunctor& f = s.tau;
  f.source = s.product;
  f.target = s.fiber_product.gpd;
  f.obj_map.resize(s.product.n_obj);
  f.mor_map.resize(s.product.n_mor);
  for (int x = 0; x < p.n_obj; ++x)
    for (int g = 0; g < tg.n_obj(); ++g)
      f.obj_map[x * tg.n_obj() + g] =
          s.fiber_product.obj_from_parent[x * p.n_obj + b.action.on_obj(x, g)];
  for (int m = 0; m < p.n_mor; ++m)
    for (int c = 0; c < tg.n_mor(); ++c)
      f.mor_map[m * tg.n_mor() + c] =
          s.fiber_product.mor_from_parent[m * p.n_mor + b.action.on_mor(m, c)];
  validate_functor(f);
  return s;
}

inline void validate_2bundle(DiscretePrincipal2Bundle const& b) {
  validate_twogroup(b.action.gamma);
  validate_groupoid(b.action.gpd);
  validate_twogroup_action(b.action);
  FiniteGroupoid const& p = b.gpd();
  require(static_cast<int>(b.base_map.size()) == p.n_obj, "BadLength", "base map");
  std::vector<char> hit(b.base_size, 0);
  for (int x = 0; x < p.n_obj; ++x) {
    require(0 <= b.base_map[x] && b.base_map[x] < b.base_size, "IndexOutOfRange",
            "base map");
    hit[b.base_map[x]] = 1;
  }
  for (int m = 0; m < b.base_size; ++m)
    require(hit[m], "NotSurjective", cat("base point ", show(m)));
  // π is a functor to the discrete base: morphisms stay in fibers
  for (int m = 0; m < p.n_mor; ++m)
    require(b.base_map[p.src[m]] == b.base_map[p.tgt[m]], "PiNotAFunctor",
            cat("morphism ", show(m)));
  // R preserves π
  for (int x = 0; x < p.n_obj; ++x)
    for (int g = 0; g < b.gamma().n_obj(); ++g)
      require(b.base_map[b.action.on_obj(x, g)] == b.base_map[x], "ActionBreaksFibers",
              cat("R(", show(x), ",", show(g), ")"));
  auto s = shear_functor(b);
  auto w = is_weak_equivalence_functor(s.tau);
  require(w.ok, "TauNotWeakEquivalence", w.witness);
}

/// Trivial Γ-2-bundle: 𝒫 = discrete(M) × Γ with R = id × m. Its τ even has a
/// strict inverse functor, which is constructed and checked.
inline DiscretePrincipal2Bundle trivial_2bundle(TwoGroup const& tg, int base_size) {
  DiscretePrincipal2Bundle b;
  b.base_size = base_size;
  b.action.gamma = tg;
  b.action.gpd = product_groupoid(discrete_groupoid(base_size), tg.gpd);
  FiniteGroupoid const& p = b.action.gpd;
  b.base_map.resize(p.n_obj);
  for (int m = 0; m < base_size; ++m)
    for (int g = 0; g < tg.n_obj(); ++g) b.base_map[m * tg.n_obj() + g] = m;
  b.action.r_obj.resize(static_cast<size_t>(p.n_obj) * tg.n_obj());
  b.action.r_mor.resize(static_cast<size_t>(p.n_mor) * tg.n_mor());
  for (int m = 0; m < base_size; ++m)
    for (int g = 0; g < tg.n_obj(); ++g)
      for (int g2 = 0; g2 < tg.n_obj(); ++g2)
        b.action.r_obj[static_cast<size_t>(m * tg.n_obj() + g) * tg.n_obj() + g2] =
            m * tg.n_obj() + tg.obj_mul(g, g2);
  for (int m = 0; m < base_size; ++m)
    for (int c = 0; c < tg.n_mor(); ++c)
      for (int c2 = 0; c2 < tg.n_mor(); ++c2)
        b.action.r_mor[static_cast<size_t>(m * tg.n_mor() + c) * tg.n_mor() + c2] =
            m * tg.n_mor() + tg.mor_mul(c, c2);
  validate_2bundle(b);
  return b;
}

/// Strict inverse of τ for the trivial 2-bundle; returns it after checking
/// both composites are identities.
inline GroupoidFunctor trivial_2bundle_tau_inverse(DiscretePrincipal2Bundle const& b) {
  auto s = shear_functor(b);
  TwoGroup const& tg = b.gamma();
  int ng = tg.n_obj();
  GroupoidFunctor inv;
  inv.source = s.fiber_product.gpd;
  inv.target = s.product;
  inv.obj_map.resize(inv.source.n_obj);
  inv.mor_map.resize(inv.source.n_mor);
  int pobj = b.gpd().n_obj;
  for (int i = 0; i < inv.source.n_obj; ++i) {
    int parent = s.fiber_product.obj_to_parent[i];
    int x = parent / pobj, y = parent % pobj;
    int gx = x % ng, gy = y % ng;
    inv.obj_map[i] = x * ng + tg.obj_mul(tg.obj_inv(gx), gy);
  }
  int pmor = b.gpd().n_mor;
  int nm = tg.n_mor();
  for (int i = 0; i < inv.source.n_mor; ++i) {
    int parent = s.fiber_product.mor_to_parent[i];
    int m1 = parent / pmor, m2 = parent % pmor;
    int c1 = m1 % nm, c2 = m2 % nm;
    inv.mor_map[i] = m1 * nm + tg.mor_mul(tg.mor_minv(c1), c2);
  }
  validate_functor(inv);
  auto a = compose_functors(inv, s.tau);
  auto ia = identity_functor(s.product);
  GERBES_CHECK(a.obj_map == ia.obj_map && a.mor_map == ia.mor_map,
               "tau inverse fails on the left");
  auto c = compose_functors(s.tau, inv);
  auto ic = identity_functor(s.fiber_product.gpd);
  GERBES_CHECK(c.obj_map == ic.obj_map && c.mor_map == ic.mor_map,
               "tau inverse fails on the right");
  return inv;
}

/// 1-morphism of 2-bundles: an anafunctor with a Γ₁-action on its total
/// space (the Appendix-A encoding of the equivariant structure) that respects
/// the projections: π₁∘α_l = π₂∘α_r.
struct TwoBundle1Morphism {
  GammaActionOnAnafunctor ga;
};

inline void validate_2bundle_morphism(DiscretePrincipal2Bundle const& p1,
                                      DiscretePrincipal2Bundle const& p2,
                                      TwoBundle1Morphism const& f) {
  GERBES_CHECK(f.ga.ana.source == p1.gpd() && f.ga.ana.target == p2.gpd(),
               "morphism endpoints mismatch");
  validate_anafunctor(f.ga.ana);
  validate_gamma_action(f.ga);
  for (int x = 0; x < f.ga.ana.total; ++x)
    require(p1.base_map[f.ga.ana.anchor_l[x]] == p2.base_map[f.ga.ana.anchor_r[x]],
            "BaseMismatch", cat("total point ", show(x)));
}

/// Equivariant transformation between 1-morphisms: an anafunctor
/// transformation that also intertwines the Γ₁-actions.
inline void validate_2bundle_2morphism(TwoBundle1Morphism const& f,
                                       TwoBundle1Morphism const& g,
                                       std::vector<int> const& eta) {
  validate_ana_transformation(f.ga.ana, g.ga.ana, eta);
  TwoGroup const& tg = f.ga.left.gamma;
  for (int x = 0; x < f.ga.ana.total; ++x)
    for (int c = 0; c < tg.n_mor(); ++c)
      require(eta[f.ga.act(x, c)] == g.ga.act(eta[x], c), "NotEquivariant",
              cat("Γ₁-action at (", show(x), ",", show(c), ")"));
}

inline std::vector<std::vector<int>> find_2bundle_2morphisms(TwoBundle1Morphism const& f,
                                                             TwoBundle1Morphism const& g,
                                                             bool first_only = false) {
  auto all = find_ana_transformations(f.ga.ana, g.ga.ana, false);
  std::vector<std::vector<int>> out;
  TwoGroup const& tg = f.ga.left.gamma;
  for (auto& eta : all) {
    bool ok = true;
    for (int x = 0; x < f.ga.ana.total && ok; ++x)
      for (int c = 0; c < tg.n_mor() && ok; ++c)
        if (eta[f.ga.act(x, c)] != g.ga.act(eta[x], c)) ok = false;
    if (ok) {
      out.push_back(std::move(eta));
      if (first_only) break;
    }
  }
  return out;
}

/// Identity 1-morphism of a 2-bundle.
inline TwoBundle1Morphism identity_2bundle_morphism(DiscretePrincipal2Bundle const& p) {
  auto idf = identity_functor(p.gpd());
  auto fa = anafunctor_from_functor(idf);
  TwoBundle1Morphism out{gamma_action_from_equivariant_functor(fa, idf, p.action,
                                                               p.action)};
  validate_2bundle_morphism(p, p, out);
  return out;
}

/// The section-induced morphism I → 𝒫 of Lemma lem:loctriv2's proof: a
/// section s of π gives the strictly equivariant functor
/// (m,g) ↦ R(s(m), g), whose anafunctor carries the canonical Γ₁-action.
inline TwoBundle1Morphism section_morphism(DiscretePrincipal2Bundle const& triv,
                                           DiscretePrincipal2Bundle const& p,
                                           std::vector<int> const& section) {
  TwoGroup const& tg = p.gamma();
  int ng = tg.n_obj(), nm = tg.n_mor();
  GroupoidFunctor f;
  f.source = triv.gpd();
  f.target = p.gpd();
  f.obj_map.resize(f.source.n_obj);
  f.mor_map.resize(f.source.n_mor);
  for (int m = 0; m < triv.base_size; ++m) {
    for (int g = 0; g < ng; ++g)
      f.obj_map[m * ng + g] = p.action.on_obj(section[m], g);
    for (int c = 0; c < nm; ++c)
      f.mor_map[m * nm + c] = p.action.on_mor(p.gpd().idm[section[m]], c);
  }
  validate_functor(f);
  auto fa = anafunctor_from_functor(f);
  TwoBundle1Morphism out{gamma_action_from_equivariant_functor(fa, f, triv.action,
                                                               p.action)};
  validate_2bundle_morphism(triv, p, out);
  return out;
}

/// Strict isomorphism search between 2-bundles: a bijective functor commuting
/// with base maps and the actions, found by backtracking (fixture-sized).
struct Strict2BundleIso {
  std::vector<int> obj_map, mor_map;
};

inline std::optional<Strict2BundleIso> find_strict_2bundle_iso(
    DiscretePrincipal2Bundle const& a, DiscretePrincipal2Bundle const& b) {
  FiniteGroupoid const& x = a.gpd();
  FiniteGroupoid const& y = b.gpd();
  if (x.n_obj != y.n_obj || x.n_mor != y.n_mor || a.base_size != b.base_size)
    return std::nullopt;
  TwoGroup const& tg = a.gamma();
  std::vector<int> obj(x.n_obj, -1), mor(x.n_mor, -1);
  std::vector<char> obj_used(y.n_obj, 0), mor_used(y.n_mor, 0);
  // propagate a morphism image; returns placed entries for rollback
  auto consistent_mor = [&](int m) {
    int im = mor[m];
    if (y.src[im] != obj[x.src[m]] || y.tgt[im] != obj[x.tgt[m]]) return false;
    for (int m2 = 0; m2 < x.n_mor; ++m2) {
      if (mor[m2] < 0) continue;
      if (x.composable(m, m2) && mor[x.comp(m, m2)] >= 0 &&
          mor[x.comp(m, m2)] != y.comp(im, mor[m2]))
        return false;
      if (x.composable(m2, m) && mor[x.comp(m2, m)] >= 0 &&
          mor[x.comp(m2, m)] != y.comp(mor[m2], im))
        return false;
    }
    for (int c = 0; c < tg.n_mor(); ++c) {
      int rm = a.action.on_mor(m, c);
      if (mor[rm] >= 0 && mor[rm] != b.action.on_mor(im, c)) return false;
    }
    return true;
  };
  std::function<bool(int)> mor_rec = [&](int m) -> bool {
    if (m == x.n_mor) return true;
    if (mor[m] >= 0) return mor_rec(m + 1);
    for (int im = 0; im < y.n_mor; ++im) {
      if (mor_used[im]) continue;
      mor[m] = im;
      mor_used[im] = 1;
      if (consistent_mor(m) && mor_rec(m + 1)) return true;
      mor[m] = -1;
      mor_used[im] = 0;
    }
    return false;
  };
  std::function<bool(int)> obj_rec = [&](int o) -> bool {
    if (o == x.n_obj) {
      std::fill(mor.begin(), mor.end(), -1);
      std::fill(mor_used.begin(), mor_used.end(), 0);
      for (int xo = 0; xo < x.n_obj; ++xo) {
        int im = y.idm[obj[xo]];
        mor[x.idm[xo]] = im;
        mor_used[im] = 1;
      }
      return mor_rec(0);
    }
    if (obj[o] >= 0) return obj_rec(o + 1);
    for (int io = 0; io < y.n_obj; ++io) {
      if (obj_used[io] || b.base_map[io] != a.base_map[o]) continue;
      obj[o] = io;
      obj_used[io] = 1;
      bool ok = true;
      for (int g = 0; g < tg.n_obj() && ok; ++g) {
        int ro = a.action.on_obj(o, g);
        if (obj[ro] >= 0 && obj[ro] != b.action.on_obj(io, g)) ok = false;
      }
      // propagate the action orbit
      std::vector<std::pair<int, int>> placed;
      if (ok)
        for (int g = 0; g < tg.n_obj(); ++g) {
          int ro = a.action.on_obj(o, g);
          int rio = b.action.on_obj(io, g);
          if (obj[ro] < 0) {
            if (obj_used[rio]) {
              ok = false;
              break;
            }
            obj[ro] = rio;
            obj_used[rio] = 1;
            placed.push_back({ro, rio});
          }
        }
      if (ok && obj_rec(o + 1)) return true;
      for (auto& [r, ri] : placed) {
        obj[r] = -1;
        obj_used[ri] = 0;
      }
      obj[o] = -1;
      obj_used[io] = 0;
    }
    return false;
  };
  if (!obj_rec(0)) return std::nullopt;
  GroupoidFunctor f{x, y, obj, mor};
  validate_functor(f);
  for (int m = 0; m < x.n_mor; ++m)
    for (int c = 0; c < tg.n_mor(); ++c)
      GERBES_CHECK(mor[a.action.on_mor(m, c)] == b.action.on_mor(mor[m], c),
                   "strict iso search produced non-equivariant functor");
  return Strict2BundleIso{obj, mor};
}

}  // namespace gerbes

#endif  // GERBES_TWO_BUNDLE_HPP
