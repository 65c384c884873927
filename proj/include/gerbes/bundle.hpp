#ifndef GERBES_BUNDLE_HPP
#define GERBES_BUNDLE_HPP

#include <optional>

#include "gerbes/two_group.hpp"

namespace gerbes {

/// Principal Γ-bundle over a finite base: projection, anchor into Γ₀ and a
/// right Γ₁-action, with the shear map τ(p,γ) = (p, p∘γ) a bijection onto
/// P ×_M P. The action table stores -1 where α(p) ≠ t(γ). Empty bases and
/// totals are permitted and vacuously valid.
struct PrincipalBundle {
  FiniteGroupoid structure;  // Γ
  int base_size = 0;
  int total_size = 0;
  std::vector<int> proj;    // total -> base
  std::vector<int> anchor;  // total -> Γ₀
  std::vector<int> act;     // total × Γ₁ -> total, -1 outside the domain

  int ract(int p, int m) const {
    int r = act[static_cast<size_t>(p) * structure.n_mor + m];
    GERBES_CHECK(r >= 0, "bundle action outside its domain");
    return r;
  }
  int ract_raw(int p, int m) const {
    return act[static_cast<size_t>(p) * structure.n_mor + m];
  }
  void set_act(int p, int m, int q) {
    act[static_cast<size_t>(p) * structure.n_mor + m] = q;
  }
  std::vector<std::vector<int>> fibers() const {
    std::vector<std::vector<int>> f(base_size);
    for (int p = 0; p < total_size; ++p) f[proj[p]].push_back(p);
    return f;
  }
};

inline void validate_bundle(PrincipalBundle const& b) {
  validate_groupoid(b.structure);
  require(static_cast<int>(b.proj.size()) == b.total_size &&
              static_cast<int>(b.anchor.size()) == b.total_size &&
              b.act.size() == static_cast<size_t>(b.total_size) * b.structure.n_mor,
          "BadLength", "bundle arrays");
  std::vector<char> hit(b.base_size, 0);
  for (int p = 0; p < b.total_size; ++p) {
    require(0 <= b.proj[p] && b.proj[p] < b.base_size, "IndexOutOfRange",
            cat("proj of ", show(p)));
    require(0 <= b.anchor[p] && b.anchor[p] < b.structure.n_obj, "IndexOutOfRange",
            cat("anchor of ", show(p)));
    hit[b.proj[p]] = 1;
  }
  for (int m = 0; m < b.base_size; ++m)
    require(hit[m], "NotSurjective", cat("base point ", show(m), " has empty fiber"));
  for (int p = 0; p < b.total_size; ++p)
    for (int m = 0; m < b.structure.n_mor; ++m) {
      int q = b.ract_raw(p, m);
      if (b.anchor[p] != b.structure.tgt[m]) {
        require(q < 0, "ActionOutOfDomain", cat("(", show(p), ",", show(m), ")"));
        continue;
      }
      require(q >= 0 && q < b.total_size, "ActionMissing",
              cat("(", show(p), ",", show(m), ")"));
      require(b.proj[q] == b.proj[p], "ActionBreaksFibers",
              cat("(", show(p), ",", show(m), ")"));
      require(b.anchor[q] == b.structure.src[m], "AnchorActionMismatch",
              cat("(", show(p), ",", show(m), ")"));
    }
  for (int p = 0; p < b.total_size; ++p) {
    require(b.ract(p, b.structure.idm[b.anchor[p]]) == p, "UnitActionFails",
            cat("point ", show(p)));
    for (int m = 0; m < b.structure.n_mor; ++m) {
      if (b.anchor[p] != b.structure.tgt[m]) continue;
      int pm = b.ract(p, m);
      for (int m2 = 0; m2 < b.structure.n_mor; ++m2) {
        if (b.structure.src[m] != b.structure.tgt[m2]) continue;
        require(b.ract(pm, m2) == b.ract(p, b.structure.comp(m, m2)),
                "ActionNotAssociative",
                cat("(", show(p), ",", show(m), ",", show(m2), ")"));
      }
    }
  }
  // principality: τ bijective <=> for each p, γ ↦ p∘γ is a bijection from
  // {γ : t(γ)=α(p)} onto the fiber of p
  auto fib = b.fibers();
  for (int p = 0; p < b.total_size; ++p) {
    std::vector<int> reached;
    for (int m = 0; m < b.structure.n_mor; ++m)
      if (b.anchor[p] == b.structure.tgt[m]) reached.push_back(b.ract(p, m));
    std::sort(reached.begin(), reached.end());
    auto fiber = fib[b.proj[p]];
    std::sort(fiber.begin(), fiber.end());
    require(reached == fiber, "NotPrincipal",
            cat("shear map at point ", show(p), " is not bijective onto its fiber"));
  }
}

/// Trivial bundle for a map f: M → Γ₀. Total points are pairs (m, γ) with
/// t(γ) = f(m), ordered lexicographically; the canonical section is
/// s_f(m) = (m, id_{f(m)}).
struct TrivialBundle {
  PrincipalBundle bundle;
  std::vector<std::array<int, 2>> points;  // total index -> (m, γ)
  std::vector<int> section;                // m -> total index of (m, id)

  int index_of(int m, int g) const {
    auto it = std::lower_bound(points.begin(), points.end(), std::array<int, 2>{m, g});
    GERBES_CHECK(it != points.end() && (*it) == (std::array<int, 2>{m, g}),
                 "trivial bundle point not found");
    return static_cast<int>(it - points.begin());
  }
};

inline TrivialBundle trivial_bundle(FiniteGroupoid const& gamma, int base_size,
                                    std::vector<int> const& f) {
  require(static_cast<int>(f.size()) == base_size, "BadLength", "trivializing map");
  TrivialBundle t;
  for (int m = 0; m < base_size; ++m) {
    require(0 <= f[m] && f[m] < gamma.n_obj, "IndexOutOfRange", cat("f(", show(m), ")"));
    for (int g = 0; g < gamma.n_mor; ++g)
      if (gamma.tgt[g] == f[m]) t.points.push_back({m, g});
  }
  PrincipalBundle& b = t.bundle;
  b.structure = gamma;
  b.base_size = base_size;
  b.total_size = static_cast<int>(t.points.size());
  b.proj.resize(b.total_size);
  b.anchor.resize(b.total_size);
  b.act.assign(static_cast<size_t>(b.total_size) * gamma.n_mor, -1);
  for (int p = 0; p < b.total_size; ++p) {
    b.proj[p] = t.points[p][0];
    b.anchor[p] = gamma.src[t.points[p][1]];
  }
  for (int p = 0; p < b.total_size; ++p)
    for (int m = 0; m < gamma.n_mor; ++m)
      if (b.anchor[p] == gamma.tgt[m])
        b.set_act(p, m, t.index_of(t.points[p][0], gamma.comp(t.points[p][1], m)));
  t.section.resize(base_size);
  for (int m = 0; m < base_size; ++m) t.section[m] = t.index_of(m, gamma.idm[f[m]]);
  return t;
}

inline TrivialBundle trivial_bundle_const(FiniteGroupoid const& gamma, int base_size,
                                          int obj) {
  return trivial_bundle(gamma, base_size, std::vector<int>(base_size, obj));
}

/// Bundle morphisms are plain total-space maps; everything else is checked.
using BundleMap = std::vector<int>;

inline void validate_bundle_morphism(PrincipalBundle const& p, PrincipalBundle const& q,
                                     BundleMap const& f) {
  GERBES_CHECK(p.structure == q.structure && p.base_size == q.base_size,
               "bundle morphism between incompatible bundles");
  require(static_cast<int>(f.size()) == p.total_size, "BadLength", "bundle morphism");
  for (int x = 0; x < p.total_size; ++x) {
    require(0 <= f[x] && f[x] < q.total_size, "IndexOutOfRange", cat("image of ", show(x)));
    require(q.proj[f[x]] == p.proj[x], "NotFiberPreserving", cat("point ", show(x)));
    require(q.anchor[f[x]] == p.anchor[x], "NotAnchorPreserving", cat("point ", show(x)));
  }
  for (int x = 0; x < p.total_size; ++x)
    for (int m = 0; m < p.structure.n_mor; ++m)
      if (p.anchor[x] == p.structure.tgt[m])
        require(f[p.ract(x, m)] == q.ract(f[x], m), "NotEquivariant",
                cat("(", show(x), ",", show(m), ")"));
  // morphisms of principal bundles are always bijections
  std::vector<char> seen(q.total_size, 0);
  for (int x = 0; x < p.total_size; ++x) seen[f[x]] = 1;
  require(p.total_size == q.total_size &&
              std::all_of(seen.begin(), seen.end(), [](char c) { return c == 1; }),
          "NotBijective", "bundle morphism must be a bijection");
}

/// Equivariance pins a morphism once one point per fiber is chosen, so the
/// search backtracks over anchor-compatible images of fiber representatives.
inline std::optional<BundleMap> find_bundle_iso(PrincipalBundle const& p,
                                                PrincipalBundle const& q) {
  if (p.total_size != q.total_size || p.base_size != q.base_size) return std::nullopt;
  auto pf = p.fibers();
  auto qf = q.fibers();
  std::vector<int> f(p.total_size, -1);
  std::function<bool(int)> rec = [&](int m) -> bool {
    if (m == p.base_size) return true;
    if (pf[m].empty()) return rec(m + 1);
    int rep = pf[m][0];
    for (int cand : qf[m]) {
      if (q.anchor[cand] != p.anchor[rep]) continue;
      // extend over the whole fiber by equivariance
      std::vector<std::pair<int, int>> placed;
      bool ok = true;
      for (int g = 0; g < p.structure.n_mor && ok; ++g) {
        if (p.anchor[rep] != p.structure.tgt[g]) continue;
        int x = p.ract(rep, g);
        int y = q.ract(cand, g);
        if (f[x] >= 0 && f[x] != y) ok = false;
        if (f[x] < 0) {
          f[x] = y;
          placed.push_back({x, y});
        }
      }
      // freeness makes the extension well-defined; totality by principality
      if (ok && std::all_of(pf[m].begin(), pf[m].end(),
                            [&](int x) { return f[x] >= 0; }) &&
          rec(m + 1))
        return true;
      for (auto& [x, y] : placed) f[x] = -1;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  try {
    validate_bundle_morphism(p, q, f);
  } catch (validation_error const&) {
    return std::nullopt;
  }
  return f;
}

/// Trivialize a bundle: pick the lexicographically least section, read off
/// f := α∘s and return the isomorphism triv_f → P, (m,γ) ↦ s(m)∘γ.
struct Trivialization {
  std::vector<int> f;       // M -> Γ₀
  TrivialBundle trivial;    // triv_f
  BundleMap iso;            // triv_f -> P
};

inline std::optional<Trivialization> trivialize(PrincipalBundle const& p) {
  Trivialization t;
  auto fib = p.fibers();
  std::vector<int> section(p.base_size);
  for (int m = 0; m < p.base_size; ++m) {
    if (fib[m].empty()) return std::nullopt;  // unreachable for validated bundles
    section[m] = fib[m][0];
  }
  t.f.resize(p.base_size);
  for (int m = 0; m < p.base_size; ++m) t.f[m] = p.anchor[section[m]];
  t.trivial = trivial_bundle(p.structure, p.base_size, t.f);
  t.iso.resize(t.trivial.bundle.total_size);
  for (int x = 0; x < t.trivial.bundle.total_size; ++x) {
    auto [m, g] = t.trivial.points[x];
    t.iso[x] = p.ract(section[m], g);
  }
  validate_bundle_morphism(t.trivial.bundle, p, t.iso);
  return t;
}

/// All maps g: M → Γ₁ with s∘g = f1 and t∘g = f2; composition of morphisms of
/// trivial bundles corresponds to pointwise ∘.
inline std::vector<std::vector<int>> hom_trivials(FiniteGroupoid const& gamma,
                                                  std::vector<int> const& f1,
                                                  std::vector<int> const& f2,
                                                  long cap = 1 << 20) {
  GERBES_CHECK(f1.size() == f2.size(), "hom_trivials length mismatch");
  int n = static_cast<int>(f1.size());
  std::vector<std::vector<int>> cand(n);
  long count = 1;
  for (int m = 0; m < n; ++m) {
    for (int g = 0; g < gamma.n_mor; ++g)
      if (gamma.src[g] == f1[m] && gamma.tgt[g] == f2[m]) cand[m].push_back(g);
    count *= static_cast<long>(cand[m].size());
    if (count == 0) return {};
    if (count > cap)
      throw cap_error("SizeLimitExceeded", "hom_trivials result too large");
  }
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  while (true) {
    std::vector<int> g(n);
    for (int m = 0; m < n; ++m) g[m] = cand[m][cur[m]];
    out.push_back(std::move(g));
    int i = n - 1;
    while (i >= 0 && cur[i] + 1 == static_cast<int>(cand[i].size())) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

/// Pullback of a bundle along a base map W → M.
inline PrincipalBundle pullback_bundle(PrincipalBundle const& p, int w_size,
                                       std::vector<int> const& basemap,
                                       std::vector<std::array<int, 2>>* points = nullptr) {
  PrincipalBundle b;
  b.structure = p.structure;
  b.base_size = w_size;
  std::vector<std::array<int, 2>> pts;
  for (int w = 0; w < w_size; ++w)
    for (int x = 0; x < p.total_size; ++x)
      if (p.proj[x] == basemap[w]) pts.push_back({w, x});
  b.total_size = static_cast<int>(pts.size());
  auto index_of = [&](int w, int x) {
    auto it = std::lower_bound(pts.begin(), pts.end(), std::array<int, 2>{w, x});
    GERBES_CHECK(it != pts.end() && (*it) == (std::array<int, 2>{w, x}),
                 "pullback point not found");
    return static_cast<int>(it - pts.begin());
  };
  b.proj.resize(b.total_size);
  b.anchor.resize(b.total_size);
  b.act.assign(static_cast<size_t>(b.total_size) * p.structure.n_mor, -1);
  for (int i = 0; i < b.total_size; ++i) {
    b.proj[i] = pts[i][0];
    b.anchor[i] = p.anchor[pts[i][1]];
  }
  for (int i = 0; i < b.total_size; ++i)
    for (int m = 0; m < p.structure.n_mor; ++m)
      if (b.anchor[i] == p.structure.tgt[m])
        b.set_act(i, m, index_of(pts[i][0], p.ract(pts[i][1], m)));
  if (points) *points = std::move(pts);
  return b;
}

/// For Γ presented by a crossed module, a Γ-bundle is an H-bundle with an
/// anti-equivariant map to G: p⋆h := p∘(h, t(h)⁻¹α(p)) and f := α.
struct HBundle {
  CrossedModule cm;
  int base_size = 0;
  int total_size = 0;
  std::vector<int> proj;
  std::vector<int> fmap;     // total -> G, anti-equivariant: f(p⋆h) = t(h)⁻¹f(p)
  std::vector<int> hact;     // total × H -> total, free and fiberwise transitive

  int star(int p, int h) const { return hact[static_cast<size_t>(p) * cm.h.order + h]; }
};

inline void validate_h_bundle(HBundle const& b) {
  require(static_cast<int>(b.proj.size()) == b.total_size &&
              static_cast<int>(b.fmap.size()) == b.total_size &&
              b.hact.size() == static_cast<size_t>(b.total_size) * b.cm.h.order,
          "BadLength", "H-bundle arrays");
  std::vector<std::vector<int>> fib(b.base_size);
  for (int p = 0; p < b.total_size; ++p) fib[b.proj[p]].push_back(p);
  for (int m = 0; m < b.base_size; ++m)
    require(!fib[m].empty(), "NotSurjective", cat("base point ", show(m)));
  for (int p = 0; p < b.total_size; ++p) {
    require(b.star(p, 0) == p, "UnitActionFails", cat("point ", show(p)));
    for (int h1 = 0; h1 < b.cm.h.order; ++h1) {
      require(b.proj[b.star(p, h1)] == b.proj[p], "ActionBreaksFibers", show(p));
      require(b.fmap[b.star(p, h1)] ==
                  b.cm.g.op(b.cm.g.invert(b.cm.t(h1)), b.fmap[p]),
              "AntiEquivarianceFails", cat("(", show(p), ",", show(h1), ")"));
      for (int h2 = 0; h2 < b.cm.h.order; ++h2)
        require(b.star(b.star(p, h1), h2) == b.star(p, b.cm.h.op(h1, h2)),
                "ActionNotAssociative", cat("(", show(p), ")"));
    }
  }
  // freeness + fiberwise transitivity
  for (int p = 0; p < b.total_size; ++p) {
    std::vector<int> orbit;
    for (int h = 0; h < b.cm.h.order; ++h) orbit.push_back(b.star(p, h));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    require(static_cast<int>(orbit.size()) == b.cm.h.order, "NotFree", show(p));
    auto fiber = fib[b.proj[p]];
    std::sort(fiber.begin(), fiber.end());
    require(orbit == fiber, "NotTransitive", show(p));
  }
}

/// Right action convention: p⋆(h1 h2) = (p⋆h1)⋆h2 wants ⋆ defined via the
/// opposite order below, matching ρ(p, γ∘γ′) = ρ(ρ(p,γ),γ′).
inline HBundle to_h_bundle(PrincipalBundle const& p, CrossedModule const& cm,
                           TwoGroup const& tg) {
  GERBES_CHECK(p.structure == tg.gpd, "bundle structure is not the given 2-group");
  HBundle b;
  b.cm = cm;
  b.base_size = p.base_size;
  b.total_size = p.total_size;
  b.proj = p.proj;
  b.fmap = p.anchor;
  b.hact.assign(static_cast<size_t>(p.total_size) * cm.h.order, -1);
  int ng = cm.g.order;
  for (int x = 0; x < p.total_size; ++x)
    for (int h = 0; h < cm.h.order; ++h) {
      int mor = h * ng + cm.g.op(cm.g.invert(cm.t(h)), p.anchor[x]);
      b.hact[static_cast<size_t>(x) * cm.h.order + h] = p.ract(x, mor);
    }
  validate_h_bundle(b);
  return b;
}

inline PrincipalBundle from_h_bundle(HBundle const& b, TwoGroup const& tg) {
  validate_h_bundle(b);
  PrincipalBundle p;
  p.structure = tg.gpd;
  p.base_size = b.base_size;
  p.total_size = b.total_size;
  p.proj = b.proj;
  p.anchor = b.fmap;
  p.act.assign(static_cast<size_t>(p.total_size) * tg.n_mor(), -1);
  int ng = b.cm.g.order;
  for (int x = 0; x < p.total_size; ++x)
    for (int h = 0; h < b.cm.h.order; ++h) {
      int g = b.cm.g.op(b.cm.g.invert(b.cm.t(h)), b.fmap[x]);
      p.set_act(x, h * ng + g, b.star(x, h));
    }
  validate_bundle(p);
  return p;
}

}  // namespace gerbes

#endif  // GERBES_BUNDLE_HPP
