#ifndef GERBES_TENSOR_HPP
#define GERBES_TENSOR_HPP

#include "gerbes/anafunctor.hpp"

namespace gerbes {

/// Unique γ with p∘γ = q inside one fiber (principality transporter).
inline int transporter(PrincipalBundle const& b, int p, int q) {
  GERBES_CHECK(b.proj[p] == b.proj[q], "transporter across fibers");
  int found = -1;
  for (int m = 0; m < b.structure.n_mor; ++m) {
    if (b.anchor[p] != b.structure.tgt[m]) continue;
    if (b.ract(p, m) == q) {
      GERBES_CHECK(found < 0, "principality violated: non-unique transporter");
      found = m;
    }
  }
  GERBES_CHECK(found >= 0, "principality violated: no transporter");
  return found;
}

/// Tensor product P1 ⊗ P2 of Γ-bundles over the same base: the quotient of
/// triples (p1, p2, γ) with π equal and t(γ) = α(p1)·α(p2) by the relation
/// (p1∘γ1, p2∘γ2, γ) ~ (p1, p2, (γ1·γ2)∘γ). The action composes into the γ
/// slot; class representatives are least raw triples.
struct TensorBundle {
  TwoGroup gamma;
  PrincipalBundle bundle;  // the quotient bundle
  std::vector<std::array<int, 3>> triples;
  std::vector<int> class_of_triple;
  std::vector<std::vector<int>> members;  // class -> raw triple ids
  std::vector<int> lookup;                // dense (p1,p2,γ) -> raw id or -1
  int t1 = 0, t2 = 0;                     // total sizes of the factors

  int raw_index(int p1, int p2, int g) const {
    int v = lookup[(static_cast<size_t>(p1) * t2 + p2) * gamma.n_mor() + g];
    GERBES_CHECK(v >= 0, "tensor triple not found");
    return v;
  }
  int class_of(int p1, int p2, int g) const {
    return class_of_triple[raw_index(p1, p2, g)];
  }
  /// class of the plain pair (p1, p2) with identity twist
  int class_of_pair(int p1, int p2, PrincipalBundle const& b1,
                    PrincipalBundle const& b2) const {
    int a = gamma.obj_mul(b1.anchor[p1], b2.anchor[p2]);
    return class_of(p1, p2, gamma.id_mor(a));
  }
  /// some identity-twist member of a class; every class has one
  std::array<int, 2> id_member(int cls) const {
    for (int raw : members[cls]) {
      auto [p1, p2, g] = triples[raw];
      if (g == gamma.id_mor(gamma.tgt(g))) return {p1, p2};
    }
    GERBES_CHECK(false, "tensor class without identity-twist member");
    return {-1, -1};
  }
};

inline TensorBundle tensor_product(TwoGroup const& tg, PrincipalBundle const& b1,
                                   PrincipalBundle const& b2) {
  GERBES_CHECK(b1.structure == tg.gpd && b2.structure == tg.gpd,
               "tensor factors must share the 2-group");
  GERBES_CHECK(b1.base_size == b2.base_size, "tensor factors over different bases");
  TensorBundle t;
  t.gamma = tg;
  t.t1 = b1.total_size;
  t.t2 = b2.total_size;
  t.lookup.assign(static_cast<size_t>(t.t1) * t.t2 * tg.n_mor(), -1);
  for (int p1 = 0; p1 < b1.total_size; ++p1)
    for (int p2 = 0; p2 < b2.total_size; ++p2) {
      if (b1.proj[p1] != b2.proj[p2]) continue;
      int a = tg.obj_mul(b1.anchor[p1], b2.anchor[p2]);
      for (int g = 0; g < tg.n_mor(); ++g) {
        if (tg.tgt(g) != a) continue;
        t.lookup[(static_cast<size_t>(p1) * t.t2 + p2) * tg.n_mor() + g] =
            static_cast<int>(t.triples.size());
        t.triples.push_back({p1, p2, g});
      }
    }
  int n = static_cast<int>(t.triples.size());
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    auto [p1, p2, g] = t.triples[i];
    for (int g1 = 0; g1 < tg.n_mor(); ++g1) {
      if (tg.tgt(g1) != b1.anchor[p1]) continue;
      for (int g2 = 0; g2 < tg.n_mor(); ++g2) {
        if (tg.tgt(g2) != b2.anchor[p2]) continue;
        int m12 = tg.mor_mul(g1, g2);
        // (p1, p2, m12∘γ') ~ (p1∘γ1, p2∘γ2, γ') with γ' = m12⁻¹∘γ
        int gp = tg.comp(tg.mor_cinv(m12), g);
        uf.unite(i, t.raw_index(b1.ract(p1, g1), b2.ract(p2, g2), gp));
      }
    }
  }
  auto [cls, k] = uf.compress();
  t.class_of_triple = cls;
  t.members.assign(k, {});
  for (int i = 0; i < n; ++i) t.members[cls[i]].push_back(i);
  PrincipalBundle& q = t.bundle;
  q.structure = tg.gpd;
  q.base_size = b1.base_size;
  q.total_size = k;
  q.proj.assign(k, -1);
  q.anchor.assign(k, -1);
  for (int i = 0; i < n; ++i) {
    auto [p1, p2, g] = t.triples[i];
    int c = cls[i];
    int pr = b1.proj[p1], an = tg.src(g);
    if (q.proj[c] < 0) {
      q.proj[c] = pr;
      q.anchor[c] = an;
    } else {
      require(q.proj[c] == pr && q.anchor[c] == an, "QuotientIllDefined",
              cat("tensor class ", show(c), " mixes fibers or anchors"));
    }
  }
  q.act.assign(static_cast<size_t>(k) * tg.n_mor(), -1);
  for (int i = 0; i < n; ++i) {
    auto [p1, p2, g] = t.triples[i];
    int c = cls[i];
    for (int g2 = 0; g2 < tg.n_mor(); ++g2) {
      if (tg.src(g) != tg.tgt(g2)) continue;
      int img = cls[t.raw_index(p1, p2, tg.comp(g, g2))];
      int& slot = q.act[static_cast<size_t>(c) * tg.n_mor() + g2];
      require(slot < 0 || slot == img, "QuotientActionIllDefined",
              cat("tensor action on class ", show(c)));
      slot = img;
    }
  }
  validate_bundle(q);
  return t;
}

/// Extension of a Γ-bundle along an anafunctor Λ: Γ → Ω, the quotient of
/// {(p, λ) : α(p) = α_l(λ)} by (p, γ∘λ) ~ (p∘γ, λ).
struct ExtendedBundle {
  PrincipalBundle bundle;  // an Ω-bundle
  std::vector<std::array<int, 2>> pairs;
  std::vector<int> class_of_pair;
  std::vector<int> lookup;  // dense (p,λ) -> raw id or -1
  int pt = 0, lt = 0;

  int raw_index(int p, int l) const {
    int v = lookup[static_cast<size_t>(p) * lt + l];
    GERBES_CHECK(v >= 0, "extension pair not found");
    return v;
  }
  int class_of(int p, int l) const { return class_of_pair[raw_index(p, l)]; }
};

inline ExtendedBundle extend_bundle(PrincipalBundle const& b, Anafunctor const& lam) {
  GERBES_CHECK(b.structure == lam.source, "extension along mismatched anafunctor");
  ExtendedBundle e;
  e.pt = b.total_size;
  e.lt = lam.total;
  e.lookup.assign(static_cast<size_t>(e.pt) * e.lt, -1);
  for (int p = 0; p < b.total_size; ++p)
    for (int l = 0; l < lam.total; ++l)
      if (b.anchor[p] == lam.anchor_l[l]) {
        e.lookup[static_cast<size_t>(p) * e.lt + l] = static_cast<int>(e.pairs.size());
        e.pairs.push_back({p, l});
      }
  int n = static_cast<int>(e.pairs.size());
  UnionFind uf(n);
  // the defining relation: (p, γ∘λ) ~ (p∘γ, λ) for t(γ) = α(p), s(γ) = α_l(λ)
  for (int l = 0; l < lam.total; ++l)
    for (int g = 0; g < b.structure.n_mor; ++g) {
      if (b.structure.src[g] != lam.anchor_l[l]) continue;
      int gl = lam.lact(g, l);
      for (int p = 0; p < b.total_size; ++p)
        if (b.anchor[p] == b.structure.tgt[g])
          uf.unite(e.raw_index(p, gl), e.raw_index(b.ract(p, g), l));
    }
  auto [cls, k] = uf.compress();
  e.class_of_pair = cls;
  PrincipalBundle& q = e.bundle;
  q.structure = lam.target;
  q.base_size = b.base_size;
  q.total_size = k;
  q.proj.assign(k, -1);
  q.anchor.assign(k, -1);
  for (int i = 0; i < n; ++i) {
    auto [p, l] = e.pairs[i];
    int c = cls[i];
    if (q.proj[c] < 0) {
      q.proj[c] = b.proj[p];
      q.anchor[c] = lam.anchor_r[l];
    } else {
      require(q.proj[c] == b.proj[p] && q.anchor[c] == lam.anchor_r[l],
              "QuotientIllDefined", cat("extension class ", show(c)));
    }
  }
  q.act.assign(static_cast<size_t>(k) * lam.target.n_mor, -1);
  for (int i = 0; i < n; ++i) {
    auto [p, l] = e.pairs[i];
    int c = cls[i];
    for (int w = 0; w < lam.target.n_mor; ++w) {
      if (lam.anchor_r[l] != lam.target.tgt[w]) continue;
      int img = cls[e.raw_index(p, lam.ract(l, w))];
      int& slot = q.act[static_cast<size_t>(c) * lam.target.n_mor + w];
      require(slot < 0 || slot == img, "QuotientActionIllDefined",
              cat("extension action on class ", show(c)));
      slot = img;
    }
  }
  validate_bundle(q);
  return e;
}

/// Dual bundle P∨ = i(P): same total set, inverted anchor, action twisted by
/// the 2-group inversion. Agrees with extension along the inversion functor.
inline PrincipalBundle dual_bundle(TwoGroup const& tg, PrincipalBundle const& b) {
  GERBES_CHECK(b.structure == tg.gpd, "dual needs the 2-group structure");
  PrincipalBundle d = b;
  for (int p = 0; p < b.total_size; ++p) d.anchor[p] = tg.obj_inv(b.anchor[p]);
  d.act.assign(static_cast<size_t>(b.total_size) * tg.n_mor(), -1);
  for (int p = 0; p < b.total_size; ++p)
    for (int m = 0; m < tg.n_mor(); ++m)
      if (d.anchor[p] == tg.tgt(m)) d.set_act(p, m, b.ract(p, tg.mor_minv(m)));
  validate_bundle(d);
  return d;
}

/// Death map d: P ⊗ P∨ → triv_1 induced by m ∘ (id, i) = 1:
/// [(p, q, γ)] ↦ (π(p), (id_{α(p)}·i(χ))∘γ) where q = p∘χ.
inline BundleMap death_map(TwoGroup const& tg, PrincipalBundle const& b,
                           PrincipalBundle const& dual, TensorBundle const& tens,
                           TrivialBundle const& triv1) {
  BundleMap d(tens.bundle.total_size, -1);
  for (int c = 0; c < tens.bundle.total_size; ++c) {
    for (int raw : tens.members[c]) {
      auto [p, q, g] = tens.triples[raw];
      int chi = transporter(b, p, q);
      int wh = tg.comp(tg.mor_mul(tg.id_mor(b.anchor[p]), tg.mor_minv(chi)), g);
      GERBES_CHECK(tg.tgt(wh) == tg.unit(), "death map leaves triv_1");
      int img = triv1.index_of(b.proj[p], wh);
      require(d[c] < 0 || d[c] == img, "QuotientIllDefined",
              cat("death map ill-defined on class ", show(c)));
      d[c] = img;
    }
  }
  validate_bundle_morphism(tens.bundle, triv1.bundle, d);
  (void)dual;
  return d;
}

}  // namespace gerbes

#endif  // GERBES_TENSOR_HPP
