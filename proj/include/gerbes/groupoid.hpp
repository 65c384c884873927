#ifndef GERBES_GROUPOID_HPP
#define GERBES_GROUPOID_HPP

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "gerbes/group.hpp"

namespace gerbes {

/// Finite groupoid with dense structure tables. Composition convention is
/// comp(g2, g1) = g2∘g1, defined iff src(g2) = tgt(g1); every table uses this
/// order. The partial composition table stores -1 for undefined pairs.
struct FiniteGroupoid {
  int n_obj = 0;
  int n_mor = 0;
  std::vector<int> src, tgt;  // morphism -> object
  std::vector<int> idm;       // object -> identity morphism
  std::vector<int> inv;       // morphism -> morphism
  std::vector<int> cmp;       // n_mor*n_mor, -1 where undefined

  bool composable(int g2, int g1) const { return src[g2] == tgt[g1]; }
  int comp(int g2, int g1) const {
    int r = cmp[static_cast<size_t>(g2) * n_mor + g1];
    GERBES_CHECK(r >= 0, "composing non-composable morphisms");
    return r;
  }
  int comp_raw(int g2, int g1) const {
    return cmp[static_cast<size_t>(g2) * n_mor + g1];
  }
  void set_comp(int g2, int g1, int r) {
    cmp[static_cast<size_t>(g2) * n_mor + g1] = r;
  }

  /// morphisms x -> y
  std::vector<int> hom(int x, int y) const {
    std::vector<int> out;
    for (int m = 0; m < n_mor; ++m)
      if (src[m] == x && tgt[m] == y) out.push_back(m);
    return out;
  }

  bool operator==(FiniteGroupoid const& o) const {
    return n_obj == o.n_obj && n_mor == o.n_mor && src == o.src && tgt == o.tgt &&
           idm == o.idm && inv == o.inv && cmp == o.cmp;
  }
};

// caps the dense composition table at ~64MB
inline void check_groupoid_size(long n_mor) {
  if (n_mor > 4000)
    throw cap_error("SizeLimitExceeded",
                    cat("groupoid with ", show((int)n_mor), " morphisms exceeds table cap"));
}

inline void validate_groupoid(FiniteGroupoid const& g) {
  require(static_cast<int>(g.src.size()) == g.n_mor &&
              static_cast<int>(g.tgt.size()) == g.n_mor &&
              static_cast<int>(g.inv.size()) == g.n_mor &&
              static_cast<int>(g.idm.size()) == g.n_obj &&
              g.cmp.size() == static_cast<size_t>(g.n_mor) * g.n_mor,
          "BadLength", "structure array sizes do not match object/morphism counts");
  for (int m = 0; m < g.n_mor; ++m) {
    require(g.src[m] >= 0 && g.src[m] < g.n_obj && g.tgt[m] >= 0 && g.tgt[m] < g.n_obj,
            "IndexOutOfRange", cat("morphism ", show(m)));
    require(g.inv[m] >= 0 && g.inv[m] < g.n_mor, "IndexOutOfRange",
            cat("inv of morphism ", show(m)));
  }
  for (int x = 0; x < g.n_obj; ++x) {
    int e = g.idm[x];
    require(e >= 0 && e < g.n_mor, "IndexOutOfRange", cat("id of object ", show(x)));
    require(g.src[e] == x && g.tgt[e] == x, "BadIdentity",
            cat("id of object ", show(x), " has wrong endpoints"));
  }
  for (int b = 0; b < g.n_mor; ++b)
    for (int a = 0; a < g.n_mor; ++a) {
      int r = g.comp_raw(b, a);
      if (g.composable(b, a)) {
        require(r >= 0, "CompositionMissing", cat(show(b), "∘", show(a)));
        require(g.src[r] == g.src[a] && g.tgt[r] == g.tgt[b], "BadComposition",
                cat(show(b), "∘", show(a), " has wrong endpoints"));
      } else {
        require(r < 0, "CompositionOutOfDomain", cat(show(b), "∘", show(a)));
      }
    }
  for (int a = 0; a < g.n_mor; ++a) {
    require(g.comp(a, g.idm[g.src[a]]) == a && g.comp(g.idm[g.tgt[a]], a) == a,
            "BadIdentity", cat("identities are not neutral for ", show(a)));
    require(g.src[g.inv[a]] == g.tgt[a] && g.tgt[g.inv[a]] == g.src[a] &&
                g.comp(g.inv[a], a) == g.idm[g.src[a]] &&
                g.comp(a, g.inv[a]) == g.idm[g.tgt[a]],
            "BadInverse", cat("morphism ", show(a)));
  }
  for (int a = 0; a < g.n_mor; ++a)
    for (int b = 0; b < g.n_mor; ++b) {
      if (!g.composable(b, a)) continue;
      for (int c = 0; c < g.n_mor; ++c) {
        if (!g.composable(c, b)) continue;
        require(g.comp(c, g.comp(b, a)) == g.comp(g.comp(c, b), a), "NotAssociative",
                cat(show(c), "∘", show(b), "∘", show(a)));
      }
    }
}

inline FiniteGroupoid discrete_groupoid(int n) {
  FiniteGroupoid g;
  g.n_obj = g.n_mor = n;
  g.src.resize(n);
  g.tgt.resize(n);
  g.idm.resize(n);
  g.inv.resize(n);
  std::iota(g.src.begin(), g.src.end(), 0);
  g.tgt = g.src;
  g.idm = g.src;
  g.inv = g.src;
  g.cmp.assign(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) g.set_comp(i, i, i);
  return g;
}

inline FiniteGroupoid delooping(FiniteGroup const& grp) {
  FiniteGroupoid g;
  g.n_obj = 1;
  g.n_mor = grp.order;
  g.src.assign(grp.order, 0);
  g.tgt.assign(grp.order, 0);
  g.idm = {0};
  g.inv = grp.inv;
  g.cmp.assign(static_cast<size_t>(grp.order) * grp.order, -1);
  for (int a = 0; a < grp.order; ++a)
    for (int b = 0; b < grp.order; ++b) g.set_comp(a, b, grp.op(a, b));
  return g;
}

/// Left action of a group H on a finite set {0..n-1} as a table.
struct SetAction {
  FiniteGroup group;
  int set_size = 0;
  std::vector<int> rho;  // h*set_size + x -> h.x

  int operator()(int h, int x) const { return rho[h * set_size + x]; }
};

inline SetAction validate_set_action(FiniteGroup const& h, int n, std::vector<int> rho) {
  require(static_cast<int>(rho.size()) == h.order * n, "BadLength",
          "action table size mismatch");
  SetAction a{h, n, std::move(rho)};
  for (int x = 0; x < n; ++x)
    require(a(0, x) == x, "InvalidAction", cat("identity moves ", show(x)));
  for (int g1 = 0; g1 < h.order; ++g1)
    for (int g2 = 0; g2 < h.order; ++g2)
      for (int x = 0; x < n; ++x)
        require(a(h.op(g2, g1), x) == a(g2, a(g1, x)), "InvalidAction",
                cat("at (", show(g2), ",", show(g1), ",", show(x), ")"));
  return a;
}

/// Action groupoid X⋊H: objects X, morphisms H×X encoded h*|X|+x with
/// s(h,x)=x, t(h,x)=h.x and (h2,x2)∘(h1,x1)=(h2h1,x1).
inline FiniteGroupoid action_groupoid(SetAction const& a) {
  FiniteGroup const& h = a.group;
  int n = a.set_size;
  check_groupoid_size(static_cast<long>(h.order) * n);
  FiniteGroupoid g;
  g.n_obj = n;
  g.n_mor = h.order * n;
  auto enc = [&](int hh, int x) { return hh * n + x; };
  g.src.resize(g.n_mor);
  g.tgt.resize(g.n_mor);
  g.inv.resize(g.n_mor);
  g.idm.resize(n);
  g.cmp.assign(static_cast<size_t>(g.n_mor) * g.n_mor, -1);
  for (int hh = 0; hh < h.order; ++hh)
    for (int x = 0; x < n; ++x) {
      int m = enc(hh, x);
      g.src[m] = x;
      g.tgt[m] = a(hh, x);
      g.inv[m] = enc(h.invert(hh), a(hh, x));
    }
  for (int x = 0; x < n; ++x) g.idm[x] = enc(0, x);
  for (int h2 = 0; h2 < h.order; ++h2)
    for (int h1 = 0; h1 < h.order; ++h1)
      for (int x = 0; x < n; ++x)
        g.set_comp(enc(h2, a(h1, x)), enc(h1, x), enc(h.op(h2, h1), x));
  return g;
}

inline FiniteGroupoid opposite(FiniteGroupoid const& g) {
  FiniteGroupoid o = g;
  std::swap(o.src, o.tgt);
  o.cmp.assign(g.cmp.size(), -1);
  for (int b = 0; b < g.n_mor; ++b)
    for (int a = 0; a < g.n_mor; ++a)
      if (g.composable(b, a)) o.set_comp(a, b, g.comp(b, a));
  return o;
}

/// Product groupoid X×Y with objects x*|Y₀|+y and morphisms f*|Y₁|+g.
inline FiniteGroupoid product_groupoid(FiniteGroupoid const& x, FiniteGroupoid const& y) {
  check_groupoid_size(static_cast<long>(x.n_mor) * y.n_mor);
  FiniteGroupoid p;
  p.n_obj = x.n_obj * y.n_obj;
  p.n_mor = x.n_mor * y.n_mor;
  auto eo = [&](int a, int b) { return a * y.n_obj + b; };
  auto em = [&](int a, int b) { return a * y.n_mor + b; };
  p.src.resize(p.n_mor);
  p.tgt.resize(p.n_mor);
  p.inv.resize(p.n_mor);
  p.idm.resize(p.n_obj);
  for (int a = 0; a < x.n_mor; ++a)
    for (int b = 0; b < y.n_mor; ++b) {
      int m = em(a, b);
      p.src[m] = eo(x.src[a], y.src[b]);
      p.tgt[m] = eo(x.tgt[a], y.tgt[b]);
      p.inv[m] = em(x.inv[a], y.inv[b]);
    }
  for (int a = 0; a < x.n_obj; ++a)
    for (int b = 0; b < y.n_obj; ++b) p.idm[eo(a, b)] = em(x.idm[a], y.idm[b]);
  p.cmp.assign(static_cast<size_t>(p.n_mor) * p.n_mor, -1);
  for (int a2 = 0; a2 < x.n_mor; ++a2)
    for (int a1 = 0; a1 < x.n_mor; ++a1) {
      if (!x.composable(a2, a1)) continue;
      int ca = x.comp(a2, a1);
      for (int b2 = 0; b2 < y.n_mor; ++b2)
        for (int b1 = 0; b1 < y.n_mor; ++b1) {
          if (!y.composable(b2, b1)) continue;
          p.set_comp(em(a2, b2), em(a1, b1), em(ca, y.comp(b2, b1)));
        }
    }
  return p;
}

/// Full subcategory on a subset of objects, with index maps back to the parent.
struct SubGroupoid {
  FiniteGroupoid gpd;
  std::vector<int> obj_to_parent, mor_to_parent;
  std::vector<int> obj_from_parent, mor_from_parent;  // -1 where absent
};

inline SubGroupoid full_subgroupoid(FiniteGroupoid const& g, std::vector<int> const& objects) {
  SubGroupoid s;
  s.obj_to_parent = objects;
  s.obj_from_parent.assign(g.n_obj, -1);
  for (int i = 0; i < static_cast<int>(objects.size()); ++i)
    s.obj_from_parent[objects[i]] = i;
  s.mor_from_parent.assign(g.n_mor, -1);
  for (int m = 0; m < g.n_mor; ++m)
    if (s.obj_from_parent[g.src[m]] >= 0 && s.obj_from_parent[g.tgt[m]] >= 0) {
      s.mor_from_parent[m] = static_cast<int>(s.mor_to_parent.size());
      s.mor_to_parent.push_back(m);
    }
  FiniteGroupoid& out = s.gpd;
  out.n_obj = static_cast<int>(objects.size());
  out.n_mor = static_cast<int>(s.mor_to_parent.size());
  check_groupoid_size(out.n_mor);
  out.src.resize(out.n_mor);
  out.tgt.resize(out.n_mor);
  out.inv.resize(out.n_mor);
  out.idm.resize(out.n_obj);
  for (int m = 0; m < out.n_mor; ++m) {
    int pm = s.mor_to_parent[m];
    out.src[m] = s.obj_from_parent[g.src[pm]];
    out.tgt[m] = s.obj_from_parent[g.tgt[pm]];
    out.inv[m] = s.mor_from_parent[g.inv[pm]];
  }
  for (int x = 0; x < out.n_obj; ++x)
    out.idm[x] = s.mor_from_parent[g.idm[s.obj_to_parent[x]]];
  out.cmp.assign(static_cast<size_t>(out.n_mor) * out.n_mor, -1);
  for (int b = 0; b < out.n_mor; ++b)
    for (int a = 0; a < out.n_mor; ++a)
      if (out.composable(b, a))
        out.set_comp(b, a, s.mor_from_parent[g.comp(s.mor_to_parent[b], s.mor_to_parent[a])]);
  return s;
}

/// Functor between finite groupoids, stored as index maps.
struct GroupoidFunctor {
  FiniteGroupoid source, target;
  std::vector<int> obj_map, mor_map;
};

inline void validate_functor(GroupoidFunctor const& f) {
  require(static_cast<int>(f.obj_map.size()) == f.source.n_obj &&
              static_cast<int>(f.mor_map.size()) == f.source.n_mor,
          "BadLength", "functor map sizes");
  for (int m = 0; m < f.source.n_mor; ++m) {
    int fm = f.mor_map[m];
    require(fm >= 0 && fm < f.target.n_mor, "IndexOutOfRange", cat("F(", show(m), ")"));
    require(f.target.src[fm] == f.obj_map[f.source.src[m]] &&
                f.target.tgt[fm] == f.obj_map[f.source.tgt[m]],
            "NotAFunctor", cat("src/tgt not preserved at morphism ", show(m)));
  }
  for (int x = 0; x < f.source.n_obj; ++x)
    require(f.mor_map[f.source.idm[x]] == f.target.idm[f.obj_map[x]], "NotAFunctor",
            cat("identity of object ", show(x), " not preserved"));
  for (int b = 0; b < f.source.n_mor; ++b)
    for (int a = 0; a < f.source.n_mor; ++a)
      if (f.source.composable(b, a))
        require(f.mor_map[f.source.comp(b, a)] ==
                    f.target.comp(f.mor_map[b], f.mor_map[a]),
                "NotAFunctor", cat("composition not preserved at ", show(b), "∘", show(a)));
}

inline GroupoidFunctor identity_functor(FiniteGroupoid const& g) {
  GroupoidFunctor f{g, g, std::vector<int>(g.n_obj), std::vector<int>(g.n_mor)};
  std::iota(f.obj_map.begin(), f.obj_map.end(), 0);
  std::iota(f.mor_map.begin(), f.mor_map.end(), 0);
  return f;
}

inline GroupoidFunctor compose_functors(GroupoidFunctor const& g, GroupoidFunctor const& f) {
  GERBES_CHECK(f.target == g.source, "functor composition mismatch");
  GroupoidFunctor h{f.source, g.target, std::vector<int>(f.source.n_obj),
                    std::vector<int>(f.source.n_mor)};
  for (int x = 0; x < f.source.n_obj; ++x) h.obj_map[x] = g.obj_map[f.obj_map[x]];
  for (int m = 0; m < f.source.n_mor; ++m) h.mor_map[m] = g.mor_map[f.mor_map[m]];
  return h;
}

/// Natural transformation F ⇒ F′ between functors with common source/target.
struct NatTransformation {
  std::vector<int> component;  // source object -> target morphism
};

inline void validate_nat_transformation(GroupoidFunctor const& f, GroupoidFunctor const& f2,
                                        NatTransformation const& eta) {
  GERBES_CHECK(f.source == f2.source && f.target == f2.target,
               "natural transformation between incompatible functors");
  require(static_cast<int>(eta.component.size()) == f.source.n_obj, "BadLength",
          "component array");
  for (int x = 0; x < f.source.n_obj; ++x) {
    int c = eta.component[x];
    require(f.target.src[c] == f.obj_map[x] && f.target.tgt[c] == f2.obj_map[x],
            "BadComponent", cat("object ", show(x)));
  }
  for (int m = 0; m < f.source.n_mor; ++m)
    require(f.target.comp(eta.component[f.source.tgt[m]], f.mor_map[m]) ==
                f.target.comp(f2.mor_map[m], eta.component[f.source.src[m]]),
            "NotNatural", cat("morphism ", show(m)));
}

/// Backtracking search for a natural transformation F ⇒ F′; returns the
/// lexicographically least one if any exists.
inline std::optional<NatTransformation> find_natural_transformation(
    GroupoidFunctor const& f, GroupoidFunctor const& f2) {
  int n = f.source.n_obj;
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> cand(n);
  for (int x = 0; x < n; ++x) {
    cand[x] = f.target.hom(f.obj_map[x], f2.obj_map[x]);
    if (cand[x].empty()) return std::nullopt;
  }
  auto natural_ok = [&](int x) {
    for (int m = 0; m < f.source.n_mor; ++m) {
      int sxx = f.source.src[m], txx = f.source.tgt[m];
      if (comp[sxx] < 0 || comp[txx] < 0) continue;
      if (f.target.comp(comp[txx], f.mor_map[m]) !=
          f.target.comp(f2.mor_map[m], comp[sxx]))
        return false;
    }
    return true;
  };
  std::function<bool(int)> rec = [&](int x) {
    if (x == n) return true;
    for (int c : cand[x]) {
      comp[x] = c;
      if (natural_ok(x) && rec(x + 1)) return true;
      comp[x] = -1;
    }
    return false;
  };
  if (rec(0)) return NatTransformation{comp};
  return std::nullopt;
}

/// Weak-equivalence test per the two finite conditions: essential
/// surjectivity and bijectivity of (src,tgt,F): X₁ → (X₀×X₀) ×_{Y₀×Y₀} Y₁.
/// On failure, `witness` describes the offending object or hom-pair.
struct WeakEquivalenceResult {
  bool ok = false;
  std::string witness;
};

inline WeakEquivalenceResult is_weak_equivalence_functor(GroupoidFunctor const& f) {
  FiniteGroupoid const& x = f.source;
  FiniteGroupoid const& y = f.target;
  // (a) every object of the target is isomorphic to some F(obj)
  std::vector<char> hit(y.n_obj, 0);
  for (int xo = 0; xo < x.n_obj; ++xo) hit[f.obj_map[xo]] = 1;
  std::vector<char> reached = hit;
  for (int m = 0; m < y.n_mor; ++m) {
    if (hit[y.src[m]]) reached[y.tgt[m]] = 1;
    if (hit[y.tgt[m]]) reached[y.src[m]] = 1;
  }
  for (int yo = 0; yo < y.n_obj; ++yo)
    if (!reached[yo])
      return {false, cat("target object ", show(yo), " has empty essential preimage")};
  // (b) X₁ → (X₀×X₀) ×_{Y₀×Y₀} Y₁ is a bijection
  std::vector<std::vector<int>> count(static_cast<size_t>(x.n_obj) * x.n_obj);
  for (int m = 0; m < x.n_mor; ++m)
    count[static_cast<size_t>(x.src[m]) * x.n_obj + x.tgt[m]].push_back(f.mor_map[m]);
  for (int a = 0; a < x.n_obj; ++a)
    for (int b = 0; b < x.n_obj; ++b) {
      auto images = count[static_cast<size_t>(a) * x.n_obj + b];
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end())
        return {false, cat("hom(", show(a), ",", show(b), ") maps non-injectively")};
      auto expect = y.hom(f.obj_map[a], f.obj_map[b]);
      std::sort(expect.begin(), expect.end());
      if (images != expect)
        return {false, cat("hom(", show(a), ",", show(b),
                           ") is not in bijection with its image hom-set")};
    }
  return {true, ""};
}

/// Connected components of a groupoid under isomorphism.
inline std::vector<int> pi0(FiniteGroupoid const& g) {
  UnionFind uf(g.n_obj);
  for (int m = 0; m < g.n_mor; ++m) uf.unite(g.src[m], g.tgt[m]);
  return uf.compress().first;
}

/// Automorphism group of an object, as a FiniteGroup; the identity morphism
/// is relabeled to index 0.
struct HomGroupData {
  FiniteGroup group;
  std::vector<int> morphisms;  // group element -> groupoid morphism
};

inline HomGroupData hom_group(FiniteGroupoid const& g, int x) {
  std::vector<int> mors = g.hom(x, x);
  // rotate the identity to the front
  auto it = std::find(mors.begin(), mors.end(), g.idm[x]);
  GERBES_CHECK(it != mors.end(), "identity missing from hom set");
  std::iter_swap(mors.begin(), it);
  int n = static_cast<int>(mors.size());
  std::vector<int> pos(g.n_mor, -1);
  for (int i = 0; i < n; ++i) pos[mors[i]] = i;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = pos[g.comp(mors[a], mors[b])];
  return {validate_group(t), mors};
}

}  // namespace gerbes

#endif  // GERBES_GROUPOID_HPP
