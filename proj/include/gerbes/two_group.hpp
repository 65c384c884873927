#ifndef GERBES_TWO_GROUP_HPP
#define GERBES_TWO_GROUP_HPP

#include "gerbes/groupoid.hpp"

namespace gerbes {

/// Crossed module t: H → G with a left G-action on H satisfying equivariance
/// and the Peiffer identity.
struct CrossedModule {
  FiniteGroup h, g;
  GroupHom t;        // H -> G
  GroupAction act;   // G acting on H
};

inline CrossedModule validate_crossed_module(FiniteGroup const& h, FiniteGroup const& g,
                                             std::vector<int> tmap,
                                             std::vector<int> actmap) {
  CrossedModule cm{h, g, validate_hom(h, g, std::move(tmap)),
                   validate_action(g, h, std::move(actmap))};
  for (int gg = 0; gg < g.order; ++gg)
    for (int hh = 0; hh < h.order; ++hh)
      require(cm.t(cm.act(gg, hh)) == g.conj(gg, cm.t(hh)), "EquivarianceFails",
              cat("t(act(", show(gg), ",", show(hh), ")) != ", show(gg), "·t(",
                  show(hh), ")·", show(gg), "⁻¹"));
  for (int hh = 0; hh < h.order; ++hh)
    for (int x = 0; x < h.order; ++x)
      require(cm.act(cm.t(hh), x) == h.conj(hh, x), "PeifferFails",
              cat("act(t(", show(hh), "),", show(x), ") != ", show(hh), "·", show(x),
                  "·", show(hh), "⁻¹"));
  return cm;
}

/// Strict 2-group: a groupoid whose objects and morphisms are groups.
/// Objects are G with the group law, morphisms are H×G encoded h*|G|+g with
/// s(h,g)=g, t(h,g)=t(h)g, (h2,g2)∘(h1,g1)=(h2h1,g1), and multiplication the
/// semidirect law (h2,g2)·(h1,g1)=(h2·ᵍ²h1, g2g1). id_g = (1,g) has index g.
struct TwoGroup {
  FiniteGroupoid gpd;
  FiniteGroup obj;  // Γ₀
  FiniteGroup mor;  // Γ₁, element indices equal groupoid morphism indices

  int n_obj() const { return obj.order; }
  int n_mor() const { return mor.order; }
  int unit() const { return 0; }
  int src(int m) const { return gpd.src[m]; }
  int tgt(int m) const { return gpd.tgt[m]; }
  int id_mor(int g) const { return gpd.idm[g]; }
  int comp(int b, int a) const { return gpd.comp(b, a); }
  bool composable(int b, int a) const { return gpd.composable(b, a); }
  int obj_mul(int a, int b) const { return obj.op(a, b); }
  int obj_inv(int a) const { return obj.invert(a); }
  int mor_mul(int a, int b) const { return mor.op(a, b); }
  int mor_minv(int a) const { return mor.invert(a); }  // inverse for ·
  int mor_cinv(int a) const { return gpd.inv[a]; }     // inverse for ∘
  /// id_a · m · id_b
  int whisker(int a, int m, int b) const {
    return mor_mul(mor_mul(id_mor(a), m), id_mor(b));
  }

  bool operator==(TwoGroup const& o) const {
    return gpd == o.gpd && obj == o.obj && mor == o.mor;
  }
};

inline TwoGroup crossed_to_twogroup(CrossedModule const& cm) {
  int const ng = cm.g.order;
  int const nh = cm.h.order;
  TwoGroup tg;
  tg.obj = cm.g;
  tg.mor = semidirect_product(cm.act);  // pairs (h,g) -> h*|G|+g
  check_groupoid_size(tg.mor.order);
  FiniteGroupoid& g = tg.gpd;
  g.n_obj = ng;
  g.n_mor = nh * ng;
  auto enc = [&](int h, int gg) { return h * ng + gg; };
  g.src.resize(g.n_mor);
  g.tgt.resize(g.n_mor);
  g.inv.resize(g.n_mor);
  g.idm.resize(ng);
  g.cmp.assign(static_cast<size_t>(g.n_mor) * g.n_mor, -1);
  for (int h = 0; h < nh; ++h)
    for (int gg = 0; gg < ng; ++gg) {
      int m = enc(h, gg);
      g.src[m] = gg;
      g.tgt[m] = cm.g.op(cm.t(h), gg);
      g.inv[m] = enc(cm.h.invert(h), g.tgt[m]);
    }
  for (int gg = 0; gg < ng; ++gg) g.idm[gg] = enc(0, gg);
  for (int h2 = 0; h2 < nh; ++h2)
    for (int h1 = 0; h1 < nh; ++h1)
      for (int g1 = 0; g1 < ng; ++g1)
        g.set_comp(enc(h2, cm.g.op(cm.t(h1), g1)), enc(h1, g1),
                   enc(cm.h.op(h2, h1), g1));
  return tg;
}

/// Full 2-group validation: groupoid axioms, multiplicativity of all
/// structure maps, interchange, and the composition-from-multiplication law
/// γ₁∘γ₂ = γ₁·id_{s(γ₁)}⁻¹·γ₂.
inline void validate_twogroup(TwoGroup const& tg) {
  validate_groupoid(tg.gpd);
  require(tg.gpd.n_obj == tg.obj.order && tg.gpd.n_mor == tg.mor.order, "BadLength",
          "group orders do not match the groupoid");
  // the pair encoding (h,g) ↦ h·|G|+g is pinned: sources cycle through G and
  // id_g = (1,g) sits at index g
  for (int m = 0; m < tg.n_mor(); ++m)
    require(tg.src(m) == m % tg.n_obj(), "BadEncoding",
            cat("morphism ", show(m), " violates the pair encoding"));
  for (int g = 0; g < tg.n_obj(); ++g)
    require(tg.id_mor(g) == g, "BadEncoding", cat("id of object ", show(g)));
  for (int a = 0; a < tg.n_mor(); ++a)
    for (int b = 0; b < tg.n_mor(); ++b) {
      int m = tg.mor_mul(a, b);
      require(tg.src(m) == tg.obj_mul(tg.src(a), tg.src(b)) &&
                  tg.tgt(m) == tg.obj_mul(tg.tgt(a), tg.tgt(b)),
              "NotAFunctor", cat("multiplication at (", show(a), ",", show(b), ")"));
    }
  for (int a = 0; a < tg.n_obj(); ++a)
    for (int b = 0; b < tg.n_obj(); ++b)
      require(tg.id_mor(tg.obj_mul(a, b)) == tg.mor_mul(tg.id_mor(a), tg.id_mor(b)),
              "NotAFunctor", "identities not multiplicative");
  for (int a = 0; a < tg.n_mor(); ++a) {
    require(tg.src(tg.mor_minv(a)) == tg.obj_inv(tg.src(a)), "NotAFunctor",
            "inversion not compatible with source");
    // composition from multiplication
    for (int b = 0; b < tg.n_mor(); ++b) {
      if (!tg.composable(a, b)) continue;
      int rhs = tg.mor_mul(tg.mor_mul(a, tg.id_mor(tg.obj_inv(tg.src(a)))), b);
      require(tg.comp(a, b) == rhs, "CompositionLawFails",
              cat("γ₁∘γ₂ != γ₁·id_{s(γ₁)}⁻¹·γ₂ at (", show(a), ",", show(b), ")"));
    }
  }
  // interchange on composable/multipliable quadruples
  for (int a = 0; a < tg.n_mor(); ++a)
    for (int b = 0; b < tg.n_mor(); ++b) {
      if (!tg.composable(a, b)) continue;
      for (int c = 0; c < tg.n_mor(); ++c)
        for (int d = 0; d < tg.n_mor(); ++d) {
          if (!tg.composable(c, d)) continue;
          require(tg.mor_mul(tg.comp(a, b), tg.comp(c, d)) ==
                      tg.comp(tg.mor_mul(a, c), tg.mor_mul(b, d)),
                  "InterchangeFails",
                  cat("(", show(a), "∘", show(b), ")·(", show(c), "∘", show(d), ")"));
        }
    }
}

/// Reconstruct the crossed module: H := ker(s) with the morphism product,
/// t := target restricted, ᵍγ := id_g·γ·id_{g⁻¹}.
inline CrossedModule twogroup_to_crossed(TwoGroup const& tg) {
  std::vector<int> ker;
  for (int m = 0; m < tg.n_mor(); ++m)
    if (tg.src(m) == tg.unit()) ker.push_back(m);
  int nh = static_cast<int>(ker.size());
  GERBES_CHECK(!ker.empty() && ker[0] == tg.id_mor(0), "kernel misses the unit morphism");
  std::vector<int> pos(tg.n_mor(), -1);
  for (int i = 0; i < nh; ++i) pos[ker[i]] = i;
  std::vector<std::vector<int>> ht(nh, std::vector<int>(nh));
  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < nh; ++b) ht[a][b] = pos[tg.mor_mul(ker[a], ker[b])];
  FiniteGroup h = validate_group(ht);
  std::vector<int> tmap(nh);
  for (int a = 0; a < nh; ++a) tmap[a] = tg.tgt(ker[a]);
  std::vector<int> act(static_cast<size_t>(tg.n_obj()) * nh);
  for (int gg = 0; gg < tg.n_obj(); ++gg)
    for (int a = 0; a < nh; ++a)
      act[gg * nh + a] =
          pos[tg.mor_mul(tg.mor_mul(tg.id_mor(gg), ker[a]), tg.id_mor(tg.obj_inv(gg)))];
  return validate_crossed_module(h, tg.obj, std::move(tmap), std::move(act));
}

/// The explicit strict isomorphism γ ↦ (γ·id_{s(γ)⁻¹}, s(γ)) between a
/// 2-group and the 2-group of its reconstructed crossed module.
inline std::vector<int> crossed_roundtrip_morphism_map(TwoGroup const& tg,
                                                       CrossedModule const& rc) {
  std::vector<int> ker;
  for (int m = 0; m < tg.n_mor(); ++m)
    if (tg.src(m) == tg.unit()) ker.push_back(m);
  std::vector<int> pos(tg.n_mor(), -1);
  for (int i = 0; i < static_cast<int>(ker.size()); ++i) pos[ker[i]] = i;
  std::vector<int> map(tg.n_mor());
  for (int m = 0; m < tg.n_mor(); ++m) {
    int kpart = pos[tg.mor_mul(m, tg.id_mor(tg.obj_inv(tg.src(m))))];
    GERBES_CHECK(kpart >= 0, "roundtrip image not in kernel");
    map[m] = kpart * rc.g.order + tg.src(m);
  }
  return map;
}

// --- fixtures ---------------------------------------------------------------

/// (1 → G): the discrete 2-group of G.
inline CrossedModule discrete_crossed_module(FiniteGroup const& g) {
  auto h = trivial_group();
  std::vector<int> act(g.order, 0);
  return validate_crossed_module(h, g, {0}, std::move(act));
}

/// (A → 1): BA; requires A abelian (forced by the Peiffer identity).
inline CrossedModule b_crossed_module(FiniteGroup const& a) {
  std::vector<int> tmap(a.order, 0);
  std::vector<int> act(a.order);
  std::iota(act.begin(), act.end(), 0);
  return validate_crossed_module(a, trivial_group(), std::move(tmap), std::move(act));
}

/// (H → Aut(H)) with the evaluation action: the automorphism 2-group AUT(H).
inline CrossedModule aut_two_group(FiniteGroup const& h, int max_order = 24) {
  auto aut = automorphism_group(h, max_order);
  std::vector<int> act(static_cast<size_t>(aut.aut.order) * h.order);
  for (int a = 0; a < aut.aut.order; ++a)
    for (int x = 0; x < h.order; ++x) act[a * h.order + x] = aut.perms[a][x];
  return validate_crossed_module(h, aut.aut, aut.inner.map, std::move(act));
}

/// (Z/2 ↪ Z/4), trivial action.
inline CrossedModule z2_in_z4() {
  return validate_crossed_module(cyclic_group(2), cyclic_group(4), {0, 2},
                                 {0, 1, 0, 1, 0, 1, 0, 1});
}

/// (Z/4 ↠ Z/2), trivial action.
inline CrossedModule z4_onto_z2() {
  return validate_crossed_module(cyclic_group(4), cyclic_group(2), {0, 1, 0, 1},
                                 {0, 1, 2, 3, 0, 1, 2, 3});
}

/// π₀ = coker(t) and π₁ = ker(t); π₁ is abelian for every valid crossed module.
inline std::pair<FiniteGroup, FiniteGroup> pi0_pi1(CrossedModule const& cm) {
  std::vector<int> image;
  for (int h = 0; h < cm.h.order; ++h) image.push_back(cm.t(h));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  auto p0 = quotient_group(cm.g, image);
  std::vector<int> kernel;
  for (int h = 0; h < cm.h.order; ++h)
    if (cm.t(h) == 0) kernel.push_back(h);
  auto p1 = subgroup_generated(cm.h, kernel);
  GERBES_CHECK(static_cast<int>(kernel.size()) == p1.group.order, "kernel not closed");
  require(is_abelian(p1.group), "Pi1NotAbelian", "ker(t) must be abelian");
  return {p0.group, p1.group};
}

/// Strict homomorphism of 2-groups: group homs on objects and morphisms that
/// assemble into a functor.
struct TwoGroupHom {
  TwoGroup source, target;
  GroupHom phi;  // on objects
  GroupHom psi;  // on morphisms

  GroupoidFunctor underlying() const {
    return GroupoidFunctor{source.gpd, target.gpd, phi.map, psi.map};
  }
};

inline TwoGroupHom validate_twogroup_hom(TwoGroup const& s, TwoGroup const& t,
                                         std::vector<int> phimap,
                                         std::vector<int> psimap) {
  TwoGroupHom f{s, t, validate_hom(s.obj, t.obj, std::move(phimap)),
                validate_hom(s.mor, t.mor, std::move(psimap))};
  validate_functor(f.underlying());
  return f;
}

inline TwoGroupHom identity_twogroup_hom(TwoGroup const& g) {
  std::vector<int> phi(g.n_obj()), psi(g.n_mor());
  std::iota(phi.begin(), phi.end(), 0);
  std::iota(psi.begin(), psi.end(), 0);
  return validate_twogroup_hom(g, g, std::move(phi), std::move(psi));
}

inline WeakEquivalenceResult is_weak_equivalence_2group(TwoGroupHom const& f) {
  return is_weak_equivalence_functor(f.underlying());
}

}  // namespace gerbes

#endif  // GERBES_TWO_GROUP_HPP
