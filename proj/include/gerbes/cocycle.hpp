#ifndef GERBES_COCYCLE_HPP
#define GERBES_COCYCLE_HPP

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <thread>

#include "gerbes/nerve.hpp"
#include "gerbes/tensor.hpp"

namespace gerbes {

inline long default_enumeration_cap() {
  if (char const* env = std::getenv("GERBECALC_CAP")) {
    long v = std::atol(env);
    if (v > 0) return v;
  }
  return 10'000'000L;
}

// --- degree 1 ---------------------------------------------------------------

/// Γ-1-cocycle on a nerve: f on increasing edges (Γ₀), g on increasing
/// triangles (Γ₁) with s(g_{αβγ}) = f_{βγ}·f_{αβ}, t(g_{αβγ}) = f_{αγ} and the
/// tetrahedron condition
///   g_{αβδ}∘(g_{βγδ}·id_{f_{αβ}}) = g_{αγδ}∘(id_{f_{γδ}}·g_{αβγ}).
struct H1Cocycle {
  std::vector<int> f;  // per edge
  std::vector<int> g;  // per triangle

  bool operator==(H1Cocycle const& o) const { return f == o.f && g == o.g; }
  bool operator<(H1Cocycle const& o) const {
    return f != o.f ? f < o.f : g < o.g;
  }
};

/// Equivalence witness: h on vertices (Γ₀), s on edges (Γ₁) with
/// s(s_{αβ}) = f′_{αβ}·h_α, t(s_{αβ}) = h_β·f_{αβ} and the triangle condition
///   (id_{h_γ}·g_{αβγ})∘(s_{βγ}·id_{f_{αβ}})∘(id_{f′_{βγ}}·s_{αβ})
///     = s_{αγ}∘(g′_{αβγ}·id_{h_α}).
struct CoboundaryWitness1 {
  std::vector<int> h;
  std::vector<int> s;
};

inline void validate_h1(CoverNerve const& k, TwoGroup const& tg, H1Cocycle const& c) {
  require(c.f.size() == k.edges.size() && c.g.size() == k.triangles.size(),
          "BadLength", "cocycle arrays");
  for (int v : c.f)
    require(0 <= v && v < tg.n_obj(), "IndexOutOfRange", "edge datum");
  for (int t = 0; t < static_cast<int>(k.triangles.size()); ++t) {
    auto const& tr = k.triangles[t];
    int fab = c.f[k.edge_index(tr[0], tr[1])];
    int fbc = c.f[k.edge_index(tr[1], tr[2])];
    int fac = c.f[k.edge_index(tr[0], tr[2])];
    int g = c.g[t];
    require(0 <= g && g < tg.n_mor(), "IndexOutOfRange", "triangle datum");
    require(tg.src(g) == tg.obj_mul(fbc, fab) && tg.tgt(g) == fac,
            "SourceTargetMismatch",
            cat("triangle (", show(tr[0]), ",", show(tr[1]), ",", show(tr[2]), ")"));
  }
  for (auto const& q : k.tetras) {
    int a = q[0], b = q[1], cc = q[2], d = q[3];
    int gabd = c.g[k.triangle_index(a, b, d)];
    int gbcd = c.g[k.triangle_index(b, cc, d)];
    int gacd = c.g[k.triangle_index(a, cc, d)];
    int gabc = c.g[k.triangle_index(a, b, cc)];
    int fab = c.f[k.edge_index(a, b)];
    int fcd = c.f[k.edge_index(cc, d)];
    int lhs = tg.comp(gabd, tg.mor_mul(gbcd, tg.id_mor(fab)));
    int rhs = tg.comp(gacd, tg.mor_mul(tg.id_mor(fcd), gabc));
    require(lhs == rhs, "CocycleConditionFails",
            cat("tetra (", show(a), ",", show(b), ",", show(cc), ",", show(d), ")"));
  }
}

inline H1Cocycle unit_h1_cocycle(CoverNerve const& k, TwoGroup const& tg) {
  H1Cocycle c;
  c.f.assign(k.edges.size(), tg.unit());
  c.g.assign(k.triangles.size(), tg.id_mor(tg.unit()));
  validate_h1(k, tg, c);
  return c;
}

/// Applies a coboundary witness: f′ and g′ are solved from the witness
/// equations; the witness must satisfy t(s_e) = h_β·f_e on every edge.
inline H1Cocycle apply_coboundary_h1(CoverNerve const& k, TwoGroup const& tg,
                                     H1Cocycle const& c, std::vector<int> const& h,
                                     std::vector<int> const& s) {
  H1Cocycle out;
  out.f.resize(k.edges.size());
  for (int e = 0; e < static_cast<int>(k.edges.size()); ++e) {
    auto [a, b] = k.edges[e];
    GERBES_CHECK(tg.tgt(s[e]) == tg.obj_mul(h[b], c.f[e]),
                 "witness violates t(s_e) = h_β·f_e");
    out.f[e] = tg.obj_mul(tg.src(s[e]), tg.obj_inv(h[a]));
  }
  out.g.resize(k.triangles.size());
  for (int t = 0; t < static_cast<int>(k.triangles.size()); ++t) {
    auto const& tr = k.triangles[t];
    int a = tr[0], b = tr[1], cc = tr[2];
    int eab = k.edge_index(a, b), ebc = k.edge_index(b, cc), eac = k.edge_index(a, cc);
    int chain = tg.comp(
        tg.comp(tg.mor_mul(tg.id_mor(h[cc]), c.g[t]),
                tg.mor_mul(s[ebc], tg.id_mor(c.f[eab]))),
        tg.mor_mul(tg.id_mor(out.f[ebc]), s[eab]));
    int solved = tg.comp(tg.mor_cinv(s[eac]), chain);
    out.g[t] = tg.mor_mul(solved, tg.id_mor(tg.obj_inv(h[a])));
  }
  validate_h1(k, tg, out);
  return out;
}

/// Exhaustive search for a coboundary witness between two cocycles; intended
/// for tiny nerves. Returns the lexicographically least witness.
inline std::optional<CoboundaryWitness1> are_equivalent_h1(CoverNerve const& k,
                                                           TwoGroup const& tg,
                                                           H1Cocycle const& c,
                                                           H1Cocycle const& c2,
                                                           long cap = 1 << 22) {
  int nv = k.n_vertices, ne = static_cast<int>(k.edges.size());
  std::vector<int> h(nv, 0), s(ne, -1);
  long nodes = 0;
  // candidates per edge once h is fixed at both ends
  auto edge_candidates = [&](int e) {
    auto [a, b] = k.edges[e];
    std::vector<int> out;
    int want_t = tg.obj_mul(h[b], c.f[e]);
    int want_s = tg.obj_mul(c2.f[e], h[a]);
    for (int m = 0; m < tg.n_mor(); ++m)
      if (tg.tgt(m) == want_t && tg.src(m) == want_s) out.push_back(m);
    return out;
  };
  auto triangles_ok = [&]() {
    for (int t = 0; t < static_cast<int>(k.triangles.size()); ++t) {
      auto const& tr = k.triangles[t];
      int eab = k.edge_index(tr[0], tr[1]);
      int ebc = k.edge_index(tr[1], tr[2]);
      int eac = k.edge_index(tr[0], tr[2]);
      int lhs = tg.comp(
          tg.comp(tg.mor_mul(tg.id_mor(h[tr[2]]), c.g[t]),
                  tg.mor_mul(s[ebc], tg.id_mor(c.f[eab]))),
          tg.mor_mul(tg.id_mor(c2.f[ebc]), s[eab]));
      int rhs = tg.comp(s[eac], tg.mor_mul(c2.g[t], tg.id_mor(h[tr[0]])));
      if (lhs != rhs) return false;
    }
    return true;
  };
  std::function<bool(int)> edge_rec = [&](int e) -> bool {
    if (++nodes > cap) throw cap_error("SizeLimitExceeded", "witness search cap hit");
    if (e == ne) return triangles_ok();
    for (int m : edge_candidates(e)) {
      s[e] = m;
      if (edge_rec(e + 1)) return true;
      s[e] = -1;
    }
    return false;
  };
  std::function<bool(int)> vertex_rec = [&](int v) -> bool {
    if (v == nv) return edge_rec(0);
    for (int g = 0; g < tg.n_obj(); ++g) {
      h[v] = g;
      if (vertex_rec(v + 1)) return true;
    }
    h[v] = 0;
    return false;
  };
  if (vertex_rec(0)) return CoboundaryWitness1{h, s};
  return std::nullopt;
}

namespace detail {

/// enumerate all valid cocycles with pruning; deterministic order
inline std::vector<H1Cocycle> enumerate_h1_cocycles(CoverNerve const& k,
                                                    TwoGroup const& tg, long cap,
                                                    int jobs) {
  int ne = static_cast<int>(k.edges.size());
  int nt = static_cast<int>(k.triangles.size());
  // connectivity on Γ₀: conn[a][b] iff some morphism a -> b exists
  std::vector<char> conn(static_cast<size_t>(tg.n_obj()) * tg.n_obj(), 0);
  for (int m = 0; m < tg.n_mor(); ++m)
    conn[static_cast<size_t>(tg.src(m)) * tg.n_obj() + tg.tgt(m)] = 1;
  std::vector<std::vector<int>> mor_by_st(static_cast<size_t>(tg.n_obj()) * tg.n_obj());
  for (int m = 0; m < tg.n_mor(); ++m)
    mor_by_st[static_cast<size_t>(tg.src(m)) * tg.n_obj() + tg.tgt(m)].push_back(m);

  // triangles / tetras indexed by the last edge / triangle that completes them
  std::vector<std::vector<int>> tri_by_edge(ne);
  for (int t = 0; t < nt; ++t) {
    auto const& tr = k.triangles[t];
    int last = std::max({k.edge_index(tr[0], tr[1]), k.edge_index(tr[1], tr[2]),
                         k.edge_index(tr[0], tr[2])});
    tri_by_edge[last].push_back(t);
  }
  std::vector<std::vector<int>> tet_by_tri(nt);
  for (auto const& q : k.tetras) {
    int last = std::max({k.triangle_index(q[0], q[1], q[2]),
                         k.triangle_index(q[0], q[1], q[3]),
                         k.triangle_index(q[0], q[2], q[3]),
                         k.triangle_index(q[1], q[2], q[3])});
    tet_by_tri[last].push_back(static_cast<int>(&q - k.tetras.data()));
  }

  auto run = [&](std::vector<int> const& f_prefix, std::vector<int> const& g_prefix,
                 std::vector<H1Cocycle>& out) {
    long nodes = 0;
    std::vector<int> f(f_prefix);
    int fstart = static_cast<int>(f.size());
    f.resize(ne, -1);
    std::vector<int> g(g_prefix);
    int gstart = static_cast<int>(g.size());
    g.resize(nt, -1);
    auto tri_feasible = [&](int t) {
      auto const& tr = k.triangles[t];
      int fab = f[k.edge_index(tr[0], tr[1])];
      int fbc = f[k.edge_index(tr[1], tr[2])];
      int fac = f[k.edge_index(tr[0], tr[2])];
      return conn[static_cast<size_t>(tg.obj_mul(fbc, fab)) * tg.n_obj() + fac] != 0;
    };
    auto tet_ok = [&](int q) {
      auto const& te = k.tetras[q];
      int gabd = g[k.triangle_index(te[0], te[1], te[3])];
      int gbcd = g[k.triangle_index(te[1], te[2], te[3])];
      int gacd = g[k.triangle_index(te[0], te[2], te[3])];
      int gabc = g[k.triangle_index(te[0], te[1], te[2])];
      int fab = f[k.edge_index(te[0], te[1])];
      int fcd = f[k.edge_index(te[2], te[3])];
      return tg.comp(gabd, tg.mor_mul(gbcd, tg.id_mor(fab))) ==
             tg.comp(gacd, tg.mor_mul(tg.id_mor(fcd), gabc));
    };
    auto tri_candidates_ok = [&](int t) {
      for (int q : tet_by_tri[t])
        if (!tet_ok(q)) return false;
      return true;
    };
    // validate the supplied prefixes before recursing
    for (int e = 0; e < fstart; ++e)
      for (int t : tri_by_edge[e])
        if (!tri_feasible(t)) return;
    for (int t = 0; t < gstart; ++t) {
      auto const& tr = k.triangles[t];
      int fab = f[k.edge_index(tr[0], tr[1])];
      int fbc = f[k.edge_index(tr[1], tr[2])];
      int fac = f[k.edge_index(tr[0], tr[2])];
      if (tg.src(g[t]) != tg.obj_mul(fbc, fab) || tg.tgt(g[t]) != fac) return;
      if (!tri_candidates_ok(t)) return;
    }
    std::function<void(int)> tri_rec = [&](int t) {
      if (++nodes > cap)
        throw cap_error("SizeLimitExceeded", "cocycle enumeration cap hit");
      if (t == nt) {
        out.push_back(H1Cocycle{f, g});
        return;
      }
      auto const& tr = k.triangles[t];
      int fab = f[k.edge_index(tr[0], tr[1])];
      int fbc = f[k.edge_index(tr[1], tr[2])];
      int fac = f[k.edge_index(tr[0], tr[2])];
      for (int m : mor_by_st[static_cast<size_t>(tg.obj_mul(fbc, fab)) * tg.n_obj() + fac]) {
        g[t] = m;
        if (tri_candidates_ok(t)) tri_rec(t + 1);
        g[t] = -1;
      }
    };
    std::function<void(int)> edge_rec = [&](int e) {
      if (++nodes > cap)
        throw cap_error("SizeLimitExceeded", "cocycle enumeration cap hit");
      if (e == ne) {
        tri_rec(gstart);
        return;
      }
      for (int v = 0; v < tg.n_obj(); ++v) {
        f[e] = v;
        bool ok = true;
        for (int t : tri_by_edge[e])
          if (!tri_feasible(t)) {
            ok = false;
            break;
          }
        if (ok) edge_rec(e + 1);
        f[e] = -1;
      }
    };
    edge_rec(fstart);
  };

  // prefix partition across workers: first edge when f branches, else the
  // first triangle slot
  std::vector<std::pair<std::vector<int>, std::vector<int>>> prefixes;
  if (jobs > 1 && ne > 0 && tg.n_obj() > 1) {
    for (int v = 0; v < tg.n_obj(); ++v) prefixes.push_back({{v}, {}});
  } else if (jobs > 1 && nt > 0 && ne > 0) {
    for (int m = 0; m < tg.n_mor(); ++m) prefixes.push_back({{}, {m}});
  } else {
    prefixes.push_back({{}, {}});
  }
  std::vector<std::vector<H1Cocycle>> results(prefixes.size());
  if (jobs <= 1 || prefixes.size() == 1) {
    for (size_t i = 0; i < prefixes.size(); ++i)
      run(prefixes[i].first, prefixes[i].second, results[i]);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    std::atomic<bool> capped{false};
    int nworkers = std::min<int>(jobs, static_cast<int>(prefixes.size()));
    for (int w = 0; w < nworkers; ++w)
      pool.emplace_back([&]() {
        while (true) {
          size_t i = next.fetch_add(1);
          if (i >= prefixes.size()) return;
          try {
            run(prefixes[i].first, prefixes[i].second, results[i]);
          } catch (cap_error const&) {
            capped.store(true);
            return;
          }
        }
      });
    for (auto& t : pool) t.join();
    if (capped.load())
      throw cap_error("SizeLimitExceeded", "cocycle enumeration cap hit");
  }
  std::vector<H1Cocycle> all;
  for (auto& r : results)
    for (auto& c : r) all.push_back(std::move(c));
  std::sort(all.begin(), all.end());
  return all;
}

/// mixed-radix encoding of cocycles; falls back to map lookup when the key
/// would overflow 63 bits
struct CocycleIndex {
  bool encodable = true;
  int ne = 0, nt = 0, base_f = 1, base_g = 1;
  std::vector<unsigned long long> wf, wg;  // digit weights
  std::vector<unsigned long long> keys;    // sorted, parallel to cocycle list
  std::map<H1Cocycle, int> by_value;       // fallback
  std::vector<int> order;                  // key rank -> cocycle id

  unsigned long long encode(H1Cocycle const& c) const {
    unsigned long long k = 0;
    for (int v : c.f) k = k * base_f + static_cast<unsigned long long>(v);
    for (int v : c.g) k = k * base_g + static_cast<unsigned long long>(v);
    return k;
  }
  void decode(unsigned long long k, std::vector<int>& f, std::vector<int>& g) const {
    f.resize(ne);
    g.resize(nt);
    for (int t = nt - 1; t >= 0; --t) {
      g[t] = static_cast<int>(k % base_g);
      k /= base_g;
    }
    for (int e = ne - 1; e >= 0; --e) {
      f[e] = static_cast<int>(k % base_f);
      k /= base_f;
    }
  }
  int find_key(unsigned long long k) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), k);
    GERBES_CHECK(it != keys.end() && *it == k, "cocycle missing from enumeration");
    return order[it - keys.begin()];
  }
  int find(H1Cocycle const& c) const {
    if (!encodable) {
      auto it = by_value.find(c);
      GERBES_CHECK(it != by_value.end(), "cocycle missing from enumeration");
      return it->second;
    }
    return find_key(encode(c));
  }
};

inline CocycleIndex build_cocycle_index(std::vector<H1Cocycle> const& all, int base_f,
                                        int base_g, int ne, int nt) {
  CocycleIndex idx;
  idx.ne = ne;
  idx.nt = nt;
  idx.base_f = std::max(base_f, 1);
  idx.base_g = std::max(base_g, 1);
  long double bits = ne * std::log2(static_cast<long double>(idx.base_f)) +
                     nt * std::log2(static_cast<long double>(idx.base_g));
  idx.encodable = bits < 62.0L;
  if (idx.encodable) {
    idx.wf.assign(ne, 1);
    idx.wg.assign(nt, 1);
    unsigned long long w = 1;
    for (int t = nt - 1; t >= 0; --t) {
      idx.wg[t] = w;
      w *= idx.base_g;
    }
    for (int e = ne - 1; e >= 0; --e) {
      idx.wf[e] = w;
      w *= idx.base_f;
    }
    std::vector<std::pair<unsigned long long, int>> kv(all.size());
    for (int i = 0; i < static_cast<int>(all.size()); ++i)
      kv[i] = {idx.encode(all[i]), i};
    std::sort(kv.begin(), kv.end());
    idx.keys.resize(kv.size());
    idx.order.resize(kv.size());
    for (size_t i = 0; i < kv.size(); ++i) {
      idx.keys[i] = kv[i].first;
      idx.order[i] = kv[i].second;
    }
  } else {
    for (int i = 0; i < static_cast<int>(all.size()); ++i) idx.by_value[all[i]] = i;
  }
  return idx;
}

/// greedy generating subset of ker(s) ⊂ Γ₁ under the morphism product; the
/// star {σ : t(σ) = a} is ker(s) transported along the encoding, and iterated
/// single-edge moves realize arbitrary star elements from these generators
inline std::vector<int> kernel_generators(TwoGroup const& tg) {
  std::vector<int> ker;
  for (int m = 0; m < tg.n_mor(); ++m)
    if (tg.src(m) == tg.unit()) ker.push_back(m);
  auto closure = [&](std::vector<int> const& gens) {
    std::vector<char> in(tg.n_mor(), 0);
    std::vector<int> stack = {tg.id_mor(0)};
    in[tg.id_mor(0)] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int g : gens)
        for (int y : {tg.mor_mul(x, g), tg.mor_mul(g, x)})
          if (!in[y]) {
            in[y] = 1;
            stack.push_back(y);
          }
    }
    return in;
  };
  std::vector<int> gens;
  auto in = closure(gens);
  for (int m : ker)
    if (!in[m]) {
      gens.push_back(m);
      in = closure(gens);
    }
  return gens;
}

}  // namespace detail

/// Classification output: class count plus deterministic least representatives.
struct H1Classes {
  long long cocycle_count = 0;
  std::vector<H1Cocycle> representatives;
  std::vector<int> class_of;  // cocycle id (enumeration order) -> class
  std::vector<H1Cocycle> cocycles;
};

/// Enumerates all cocycles and joins them by BFS over generator coboundaries:
/// all witnesses with h supported on one vertex (canonical s) or s supported
/// on one edge. Equivalence of this generating set with the full witness
/// relation is property-tested against are_equivalent_h1 on tiny instances.
inline H1Classes enumerate_h1_classes(CoverNerve const& k, TwoGroup const& tg,
                                      long cap = default_enumeration_cap(),
                                      int jobs = 1) {
  auto all = detail::enumerate_h1_cocycles(k, tg, cap, jobs);
  auto idx = detail::build_cocycle_index(all, tg.n_obj(), tg.n_mor(),
                                         static_cast<int>(k.edges.size()),
                                         static_cast<int>(k.triangles.size()));
  int n = static_cast<int>(all.size());
  int nv = k.n_vertices, ne = static_cast<int>(k.edges.size());
  UnionFind uf(n);

  if (idx.encodable) {
    // per-edge triangle incidence with the edge position inside the triangle
    struct TriAt {
      int t;
      int pos;         // 0 = (a,b), 1 = (b,c), 2 = (a,c)
      int other_edge;  // f needed by the whisker (pos 0: bc, pos 1: ab)
    };
    std::vector<std::vector<TriAt>> tris_at(ne);
    for (int t = 0; t < static_cast<int>(k.triangles.size()); ++t) {
      auto const& tr = k.triangles[t];
      int eab = k.edge_index(tr[0], tr[1]);
      int ebc = k.edge_index(tr[1], tr[2]);
      int eac = k.edge_index(tr[0], tr[2]);
      tris_at[eab].push_back({t, 0, ebc});
      tris_at[ebc].push_back({t, 1, eab});
      tris_at[eac].push_back({t, 2, -1});
    }
    auto gens = detail::kernel_generators(tg);
    int ng = tg.n_obj();
    // single-edge generator move: returns the encoded key of the image
    auto edge_move_key = [&](H1Cocycle const& c, unsigned long long key, int e,
                             int kappa) {
      int fe = c.f[e];
      int hpart = kappa / ng;
      int sigma = hpart * ng + tg.obj_mul(tg.obj_inv(tg.tgt(kappa)), fe);
      unsigned long long nk =
          key + static_cast<unsigned long long>(tg.src(sigma)) * idx.wf[e] -
          static_cast<unsigned long long>(fe) * idx.wf[e];
      for (auto const& ta : tris_at[e]) {
        int old = c.g[ta.t];
        int gnew;
        if (ta.pos == 0)
          gnew = tg.comp(old, tg.mor_mul(tg.id_mor(c.f[ta.other_edge]), sigma));
        else if (ta.pos == 1)
          gnew = tg.comp(old, tg.mor_mul(sigma, tg.id_mor(c.f[ta.other_edge])));
        else
          gnew = tg.comp(tg.mor_cinv(sigma), old);
        nk += static_cast<unsigned long long>(gnew) * idx.wg[ta.t] -
              static_cast<unsigned long long>(old) * idx.wg[ta.t];
      }
      return nk;
    };
    std::vector<int> h(nv), sv(ne);
    auto process = [&](int i, std::vector<std::pair<int, int>>* sink) {
      H1Cocycle const& c = all[i];
      unsigned long long key = idx.encode(c);
      for (int e = 0; e < ne; ++e)
        for (int kappa : gens) {
          int j = idx.find_key(edge_move_key(c, key, e, kappa));
          if (sink)
            sink->push_back({i, j});
          else
            uf.unite(i, j);
        }
      if (tg.n_obj() > 1) {
        for (int v = 0; v < nv; ++v)
          for (int g0 = 1; g0 < tg.n_obj(); ++g0) {
            std::fill(h.begin(), h.end(), tg.unit());
            h[v] = g0;
            for (int e = 0; e < ne; ++e)
              sv[e] = tg.id_mor(tg.obj_mul(h[k.edges[e][1]], c.f[e]));
            int j = idx.find(apply_coboundary_h1(k, tg, c, h, sv));
            if (sink)
              sink->push_back({i, j});
            else
              uf.unite(i, j);
          }
      }
    };
    if (jobs > 1 && n > 200000 && tg.n_obj() == 1) {
      int const chunk = 100000;
      for (int lo = 0; lo < n; lo += chunk * jobs) {
        std::vector<std::vector<std::pair<int, int>>> sinks(jobs);
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) {
          int wlo = lo + w * chunk;
          if (wlo >= n) break;
          int whi = std::min(n, wlo + chunk);
          pool.emplace_back([&, wlo, whi, w]() {
            for (int i = wlo; i < whi; ++i) process(i, &sinks[w]);
          });
        }
        for (auto& t : pool) t.join();
        for (auto& sk : sinks)
          for (auto& [a, b] : sk) uf.unite(a, b);
      }
    } else {
      for (int i = 0; i < n; ++i) process(i, nullptr);
    }
  } else {
    std::vector<int> h(nv), sv(ne);
    for (int i = 0; i < n; ++i) {
      H1Cocycle const& c = all[i];
      for (int v = 0; v < nv; ++v)
        for (int g0 = 1; g0 < tg.n_obj(); ++g0) {
          std::fill(h.begin(), h.end(), tg.unit());
          h[v] = g0;
          for (int e = 0; e < ne; ++e)
            sv[e] = tg.id_mor(tg.obj_mul(h[k.edges[e][1]], c.f[e]));
          uf.unite(i, idx.find(apply_coboundary_h1(k, tg, c, h, sv)));
        }
      std::fill(h.begin(), h.end(), tg.unit());
      for (int e = 0; e < ne; ++e) sv[e] = tg.id_mor(c.f[e]);
      for (int e0 = 0; e0 < ne; ++e0) {
        int keep = sv[e0];
        for (int m = 0; m < tg.n_mor(); ++m) {
          if (tg.tgt(m) != c.f[e0] || m == keep) continue;
          sv[e0] = m;
          uf.unite(i, idx.find(apply_coboundary_h1(k, tg, c, h, sv)));
        }
        sv[e0] = keep;
      }
    }
  }
  auto [cls, ncls] = uf.compress();
  H1Classes out;
  out.cocycle_count = n;
  out.class_of = cls;
  out.cocycles = std::move(all);
  out.representatives.resize(ncls);
  std::vector<char> seen(ncls, 0);
  for (int i = 0; i < n; ++i)
    if (!seen[cls[i]]) {
      seen[cls[i]] = 1;
      out.representatives[cls[i]] = out.cocycles[i];
    }
  return out;
}

/// Componentwise pushforward of a cocycle along a strict 2-group hom.
inline H1Cocycle push_cocycle(CoverNerve const& k, TwoGroupHom const& f,
                              H1Cocycle const& c) {
  H1Cocycle out;
  out.f.resize(c.f.size());
  out.g.resize(c.g.size());
  for (size_t e = 0; e < c.f.size(); ++e) out.f[e] = f.phi(c.f[e]);
  for (size_t t = 0; t < c.g.size(); ++t) out.g[t] = f.psi(c.g[t]);
  validate_h1(k, f.target, out);
  return out;
}

// --- degree 0 ---------------------------------------------------------------

/// Γ-0-cocycle for a groupoid Γ: f on vertices (objects), g on increasing
/// edges with s(g_{αβ}) = f_α, t(g_{αβ}) = f_β and g_{βγ}∘g_{αβ} = g_{αγ}.
struct H0Cocycle {
  std::vector<int> f;
  std::vector<int> g;

  bool operator==(H0Cocycle const& o) const { return f == o.f && g == o.g; }
  bool operator<(H0Cocycle const& o) const {
    return f != o.f ? f < o.f : g < o.g;
  }
};

inline void validate_h0(CoverNerve const& k, FiniteGroupoid const& gamma,
                        H0Cocycle const& c) {
  require(c.f.size() == static_cast<size_t>(k.n_vertices) &&
              c.g.size() == k.edges.size(),
          "BadLength", "cocycle arrays");
  for (int v : c.f)
    require(0 <= v && v < gamma.n_obj, "IndexOutOfRange", "vertex datum");
  for (int e = 0; e < static_cast<int>(k.edges.size()); ++e) {
    auto [a, b] = k.edges[e];
    require(0 <= c.g[e] && c.g[e] < gamma.n_mor, "IndexOutOfRange", "edge datum");
    require(gamma.src[c.g[e]] == c.f[a] && gamma.tgt[c.g[e]] == c.f[b],
            "SourceTargetMismatch", cat("edge (", show(a), ",", show(b), ")"));
  }
  for (auto const& tr : k.triangles) {
    int gab = c.g[k.edge_index(tr[0], tr[1])];
    int gbc = c.g[k.edge_index(tr[1], tr[2])];
    int gac = c.g[k.edge_index(tr[0], tr[2])];
    require(gamma.comp(gbc, gab) == gac, "CocycleConditionFails",
            cat("triangle (", show(tr[0]), ",", show(tr[1]), ",", show(tr[2]), ")"));
  }
}

inline H0Cocycle apply_coboundary_h0(CoverNerve const& k, FiniteGroupoid const& gamma,
                                     H0Cocycle const& c, std::vector<int> const& h) {
  H0Cocycle out;
  out.f.resize(c.f.size());
  out.g.resize(c.g.size());
  for (int v = 0; v < k.n_vertices; ++v) {
    GERBES_CHECK(gamma.src[h[v]] == c.f[v], "witness source mismatch");
    out.f[v] = gamma.tgt[h[v]];
  }
  for (int e = 0; e < static_cast<int>(k.edges.size()); ++e) {
    auto [a, b] = k.edges[e];
    out.g[e] = gamma.comp(gamma.comp(h[b], c.g[e]), gamma.inv[h[a]]);
  }
  validate_h0(k, gamma, out);
  return out;
}

inline std::optional<std::vector<int>> are_equivalent_h0(CoverNerve const& k,
                                                         FiniteGroupoid const& gamma,
                                                         H0Cocycle const& c,
                                                         H0Cocycle const& c2) {
  int nv = k.n_vertices;
  std::vector<int> h(nv, -1);
  std::function<bool(int)> rec = [&](int v) -> bool {
    if (v == nv) {
      for (int e = 0; e < static_cast<int>(k.edges.size()); ++e) {
        auto [a, b] = k.edges[e];
        if (gamma.comp(gamma.comp(h[b], c.g[e]), gamma.inv[h[a]]) != c2.g[e])
          return false;
      }
      return true;
    }
    for (int m = 0; m < gamma.n_mor; ++m) {
      if (gamma.src[m] != c.f[v] || gamma.tgt[m] != c2.f[v]) continue;
      h[v] = m;
      if (rec(v + 1)) return true;
      h[v] = -1;
    }
    return false;
  };
  if (rec(0)) return h;
  return std::nullopt;
}

struct H0Classes {
  long long cocycle_count = 0;
  std::vector<H0Cocycle> representatives;
  std::vector<int> class_of;
  std::vector<H0Cocycle> cocycles;
};

inline H0Classes enumerate_h0_classes(CoverNerve const& k, FiniteGroupoid const& gamma,
                                      long cap = default_enumeration_cap()) {
  int nv = k.n_vertices, ne = static_cast<int>(k.edges.size());
  std::vector<std::vector<int>> mor_by_st(static_cast<size_t>(gamma.n_obj) * gamma.n_obj);
  for (int m = 0; m < gamma.n_mor; ++m)
    mor_by_st[static_cast<size_t>(gamma.src[m]) * gamma.n_obj + gamma.tgt[m]].push_back(m);
  std::vector<std::vector<int>> tri_by_edge(ne);
  for (int t = 0; t < static_cast<int>(k.triangles.size()); ++t) {
    auto const& tr = k.triangles[t];
    int last = std::max({k.edge_index(tr[0], tr[1]), k.edge_index(tr[1], tr[2]),
                         k.edge_index(tr[0], tr[2])});
    tri_by_edge[last].push_back(t);
  }
  std::vector<H0Cocycle> all;
  std::vector<int> f(nv, -1), g(ne, -1);
  long nodes = 0;
  std::function<void(int)> edge_rec = [&](int e) {
    if (++nodes > cap) throw cap_error("SizeLimitExceeded", "enumeration cap hit");
    if (e == ne) {
      all.push_back(H0Cocycle{f, g});
      return;
    }
    auto [a, b] = k.edges[e];
    for (int m : mor_by_st[static_cast<size_t>(f[a]) * gamma.n_obj + f[b]]) {
      g[e] = m;
      bool ok = true;
      for (int t : tri_by_edge[e]) {
        auto const& tr = k.triangles[t];
        int gab = g[k.edge_index(tr[0], tr[1])];
        int gbc = g[k.edge_index(tr[1], tr[2])];
        int gac = g[k.edge_index(tr[0], tr[2])];
        if (gamma.comp(gbc, gab) != gac) {
          ok = false;
          break;
        }
      }
      if (ok) edge_rec(e + 1);
      g[e] = -1;
    }
  };
  std::function<void(int)> vert_rec = [&](int v) {
    if (++nodes > cap) throw cap_error("SizeLimitExceeded", "enumeration cap hit");
    if (v == nv) {
      edge_rec(0);
      return;
    }
    for (int o = 0; o < gamma.n_obj; ++o) {
      f[v] = o;
      vert_rec(v + 1);
    }
    f[v] = -1;
  };
  vert_rec(0);
  std::sort(all.begin(), all.end());
  int n = static_cast<int>(all.size());
  std::map<H0Cocycle, int> index;
  for (int i = 0; i < n; ++i) index[all[i]] = i;
  UnionFind uf(n);
  std::vector<int> h(nv);
  for (int i = 0; i < n; ++i) {
    // single-vertex natural-transformation moves generate all equivalences
    for (int v = 0; v < nv; ++v) {
      for (int m = 0; m < gamma.n_mor; ++m) {
        if (gamma.src[m] != all[i].f[v]) continue;
        for (int w = 0; w < nv; ++w) h[w] = gamma.idm[all[i].f[w]];
        h[v] = m;
        auto moved = apply_coboundary_h0(k, gamma, all[i], h);
        auto it = index.find(moved);
        GERBES_CHECK(it != index.end(), "moved cocycle missing");
        uf.unite(i, it->second);
      }
    }
  }
  auto [cls, ncls] = uf.compress();
  H0Classes out;
  out.cocycle_count = n;
  out.class_of = cls;
  out.cocycles = std::move(all);
  out.representatives.resize(ncls);
  std::vector<char> seen(ncls, 0);
  for (int i = 0; i < n; ++i)
    if (!seen[cls[i]]) {
      seen[cls[i]] = 1;
      out.representatives[cls[i]] = out.cocycles[i];
    }
  return out;
}

// --- cocycles vs bundles over concrete covers -------------------------------

/// Glue a principal Γ-bundle from degree-0 cocycle data over a concrete
/// cover: total points (i, m, γ) with m ∈ U_i and t(γ) = f_i, identified by
/// (i, m, γ) ~ (j, m, g_{ij}∘γ) over intersections.
struct GluedBundle {
  PrincipalBundle bundle;
  std::vector<std::array<int, 3>> points;  // raw -> (i, m, γ)
  std::vector<int> class_of_point;

  int class_of(int i, int m, int g) const {
    auto it = std::lower_bound(points.begin(), points.end(), std::array<int, 3>{i, m, g});
    GERBES_CHECK(it != points.end() && (*it) == (std::array<int, 3>{i, m, g}),
                 "glued point not found");
    return class_of_point[it - points.begin()];
  }
};

inline GluedBundle h0_to_bundle(ConcreteCover const& cover, FiniteGroupoid const& gamma,
                                H0Cocycle const& c) {
  auto k = nerve_of_cover(cover);
  validate_h0(k, gamma, c);
  GluedBundle out;
  int nsets = static_cast<int>(cover.sets.size());
  for (int i = 0; i < nsets; ++i)
    for (int m : cover.sets[i])
      for (int g = 0; g < gamma.n_mor; ++g)
        if (gamma.tgt[g] == c.f[i]) out.points.push_back({i, m, g});
  int n = static_cast<int>(out.points.size());
  auto rawidx = [&](int i, int m, int g) {
    auto it = std::lower_bound(out.points.begin(), out.points.end(),
                               std::array<int, 3>{i, m, g});
    GERBES_CHECK(it != out.points.end() && (*it) == (std::array<int, 3>{i, m, g}),
                 "glued point not found");
    return static_cast<int>(it - out.points.begin());
  };
  UnionFind uf(n);
  for (int e = 0; e < static_cast<int>(k.edges.size()); ++e) {
    auto [i, j] = k.edges[e];
    for (int m : intersect_sorted(cover.sets[i], cover.sets[j]))
      for (int g = 0; g < gamma.n_mor; ++g)
        if (gamma.tgt[g] == c.f[i])
          uf.unite(rawidx(i, m, g), rawidx(j, m, gamma.comp(c.g[e], g)));
  }
  auto [cls, ncls] = uf.compress();
  out.class_of_point = cls;
  PrincipalBundle& b = out.bundle;
  b.structure = gamma;
  b.base_size = cover.n_points;
  b.total_size = ncls;
  b.proj.assign(ncls, -1);
  b.anchor.assign(ncls, -1);
  for (int r = 0; r < n; ++r) {
    auto [i, m, g] = out.points[r];
    int cl = cls[r];
    require((b.proj[cl] < 0 || b.proj[cl] == m) &&
                (b.anchor[cl] < 0 || b.anchor[cl] == gamma.src[g]),
            "QuotientIllDefined", cat("glued class ", show(cl)));
    b.proj[cl] = m;
    b.anchor[cl] = gamma.src[g];
  }
  b.act.assign(static_cast<size_t>(ncls) * gamma.n_mor, -1);
  for (int r = 0; r < n; ++r) {
    auto [i, m, g] = out.points[r];
    int cl = cls[r];
    for (int w = 0; w < gamma.n_mor; ++w) {
      if (gamma.src[g] != gamma.tgt[w]) continue;
      int img = cls[rawidx(i, m, gamma.comp(g, w))];
      int& slot = b.act[static_cast<size_t>(cl) * gamma.n_mor + w];
      require(slot < 0 || slot == img, "QuotientActionIllDefined",
              cat("glued action on class ", show(cl)));
      slot = img;
    }
  }
  validate_bundle(b);
  return out;
}

/// Extract a degree-0 cocycle by choosing, per patch, a constant-anchor
/// section of the bundle. `section_choice` optionally overrides the greedy
/// defaults (one total point per (patch, base point)).
inline H0Cocycle bundle_to_h0(ConcreteCover const& cover, PrincipalBundle const& p,
                              std::vector<std::vector<int>> const* section_choice = nullptr) {
  auto k = nerve_of_cover(cover);
  int nsets = static_cast<int>(cover.sets.size());
  auto fib = p.fibers();
  // choose u_i: U_i -> total with a constant anchor f_i on each patch
  std::vector<std::vector<int>> u(nsets);
  std::vector<int> f(nsets, -1);
  for (int i = 0; i < nsets; ++i) {
    if (section_choice) {
      u[i] = (*section_choice)[i];
      require(!u[i].empty(), "BadSection", cat("patch ", show(i)));
      f[i] = p.anchor[u[i][0]];
      for (size_t idx = 0; idx < u[i].size(); ++idx) {
        require(p.proj[u[i][idx]] == cover.sets[i][idx], "BadSection",
                cat("patch ", show(i)));
        require(p.anchor[u[i][idx]] == f[i], "SectionAnchorNotConstant",
                cat("patch ", show(i)));
      }
      continue;
    }
    // greedy: least anchor present in every fiber of the patch
    std::vector<int> common;
    for (int a = 0; a < p.structure.n_obj; ++a) {
      bool ok = true;
      for (int m : cover.sets[i]) {
        bool found = false;
        for (int x : fib[m])
          if (p.anchor[x] == a) found = true;
        if (!found) {
          ok = false;
          break;
        }
      }
      if (ok) common.push_back(a);
    }
    require(!common.empty(), "NoConstantSection",
            cat("patch ", show(i), " admits no constant-anchor section"));
    f[i] = common[0];
    for (int m : cover.sets[i])
      for (int x : fib[m])
        if (p.anchor[x] == f[i]) {
          u[i].push_back(x);
          break;
        }
  }
  H0Cocycle c;
  c.f = f;
  c.g.assign(k.edges.size(), -1);
  for (int e = 0; e < static_cast<int>(k.edges.size()); ++e) {
    auto [i, j] = k.edges[e];
    auto inter = intersect_sorted(cover.sets[i], cover.sets[j]);
    int g = -1;
    for (int m : inter) {
      auto pos = [&](int set, int mm) {
        auto const& s = cover.sets[set];
        return static_cast<int>(std::lower_bound(s.begin(), s.end(), mm) - s.begin());
      };
      int ui = u[i][pos(i, m)], uj = u[j][pos(j, m)];
      int gm = transporter(p, uj, ui);  // u_j ∘ g = u_i
      require(g < 0 || g == gm, "TransitionNotConstant",
              cat("edge (", show(i), ",", show(j), ")"));
      g = gm;
    }
    c.g[e] = g;
  }
  validate_h0(k, p.structure, c);
  return c;
}

}  // namespace gerbes

#endif  // GERBES_COCYCLE_HPP
