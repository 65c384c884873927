#include <catch2/catch_amalgamated.hpp>

#include "gerbes/bundle.hpp"

using namespace gerbes;

namespace {

// the exact-sequence bundle 1 → Z/2 → Z/4 → Z/2 → 1: total Z/4 over K = Z/2
// with structure 2-group Z/2 ⋉ Z/4, anchor the identity and ρ(g,(h,g')) = g'
PrincipalBundle exact_sequence_bundle(TwoGroup const& tg) {
  auto z4 = cyclic_group(4);
  PrincipalBundle p;
  p.structure = tg.gpd;
  p.base_size = 2;
  p.total_size = 4;
  p.proj = {0, 1, 0, 1};
  p.anchor = {0, 1, 2, 3};
  p.act.assign(static_cast<size_t>(4) * tg.n_mor(), -1);
  for (int g = 0; g < 4; ++g)
    for (int m = 0; m < tg.n_mor(); ++m)
      if (tg.tgt(m) == g) p.set_act(g, m, tg.src(m));
  validate_bundle(p);
  return p;
}

}  // namespace

TEST_CASE("trivial bundles") {
  auto bz2 = delooping(cyclic_group(2));
  auto t = trivial_bundle_const(bz2, 2, 0);
  REQUIRE(t.bundle.total_size == 4);
  validate_bundle(t.bundle);

  auto empty = trivial_bundle(bz2, 0, {});
  validate_bundle(empty.bundle);
  REQUIRE(empty.bundle.total_size == 0);

  // for a discrete structure groupoid the trivial bundle is the graph of f,
  // and the only self-morphism is the identity
  auto disc = discrete_groupoid(3);
  auto g = trivial_bundle(disc, 2, {2, 0});
  validate_bundle(g.bundle);
  REQUIRE(g.bundle.total_size == 2);
  REQUIRE(hom_trivials(disc, {2, 0}, {2, 0}).size() == 1);
  REQUIRE(hom_trivials(disc, {2, 0}, {0, 0}).empty());
}

TEST_CASE("trivialize") {
  auto tg = crossed_to_twogroup(z2_in_z4());

  // a trivial bundle trivializes back to an isomorphic trivial bundle
  auto t = trivial_bundle(tg.gpd, 3, {1, 0, 3});
  auto tr = trivialize(t.bundle);
  REQUIRE(tr.has_value());
  REQUIRE(find_bundle_iso(tr->trivial.bundle, t.bundle).has_value());

  // the exact-sequence bundle over Z/2 trivializes
  auto p = exact_sequence_bundle(tg);
  auto tr2 = trivialize(p);
  REQUIRE(tr2.has_value());
  validate_bundle_morphism(tr2->trivial.bundle, p, tr2->iso);
}

TEST_CASE("hom sets of trivial bundles") {
  // Γ = BA: morphisms triv_1 -> triv_1 over M are maps M -> A
  auto ba = crossed_to_twogroup(b_crossed_module(cyclic_group(3)));
  auto homs = hom_trivials(ba.gpd, {0, 0}, {0, 0});
  REQUIRE(homs.size() == 9);
  // identity element corresponds to g = id ∘ f1
  bool has_id = false;
  for (auto const& h : homs)
    if (h == std::vector<int>{ba.id_mor(0), ba.id_mor(0)}) has_id = true;
  REQUIRE(has_id);
}

TEST_CASE("principality catches broken actions") {
  auto bz2 = delooping(cyclic_group(2));
  auto t = trivial_bundle_const(bz2, 1, 0);
  auto broken = t.bundle;
  // swap the action of the identity with the action of the flip at point 0
  int a = broken.ract(0, 0), b = broken.ract(0, 1);
  broken.set_act(0, 0, b);
  broken.set_act(0, 1, a);
  REQUIRE_THROWS_AS(validate_bundle(broken), validation_error);
}

TEST_CASE("H-bundle translation") {
  auto cm = z2_in_z4();
  auto tg = crossed_to_twogroup(cm);
  auto p = exact_sequence_bundle(tg);

  auto hb = to_h_bundle(p, cm, tg);
  REQUIRE(hb.total_size == 4);
  // f is the anchor, anti-equivariant
  REQUIRE(hb.fmap == p.anchor);
  auto back = from_h_bundle(hb, tg);
  REQUIRE(back.act == p.act);
  REQUIRE(back.anchor == p.anchor);

  // trivial Γ-bundle → trivial H-bundle whose f is the trivializing map
  auto t = trivial_bundle(tg.gpd, 2, {1, 2});
  auto thb = to_h_bundle(t.bundle, cm, tg);
  validate_h_bundle(thb);
  for (int m = 0; m < 2; ++m) {
    int s = t.section[m];
    REQUIRE(thb.fmap[s] == std::vector<int>({1, 2})[m]);
  }

  // Γ = discrete(G): H trivial, f is the classifying function
  auto dg = discrete_crossed_module(cyclic_group(3));
  auto dtg = crossed_to_twogroup(dg);
  auto dt = trivial_bundle(dtg.gpd, 2, {2, 1});
  auto dhb = to_h_bundle(dt.bundle, dg, dtg);
  REQUIRE(dhb.cm.h.order == 1);
  REQUIRE(dhb.fmap == dt.bundle.anchor);
}

TEST_CASE("every validated bundle over a 3-point base trivializes") {
  auto tg = crossed_to_twogroup(aut_two_group(cyclic_group(3)));
  // a few deterministic fixtures: trivial bundles with scrambled labels
  for (int seed = 0; seed < 5; ++seed) {
    std::vector<int> f = {(seed * 7 + 1) % 2, seed % 2, (seed + 1) % 2};
    auto t = trivial_bundle(tg.gpd, 3, f);
    // relabel total points by a rotation
    int n = t.bundle.total_size;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = (i + seed) % n;
    PrincipalBundle q;
    q.structure = t.bundle.structure;
    q.base_size = t.bundle.base_size;
    q.total_size = n;
    q.proj.resize(n);
    q.anchor.resize(n);
    q.act.assign(static_cast<size_t>(n) * tg.n_mor(), -1);
    for (int i = 0; i < n; ++i) {
      q.proj[perm[i]] = t.bundle.proj[i];
      q.anchor[perm[i]] = t.bundle.anchor[i];
    }
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < tg.n_mor(); ++m)
        if (t.bundle.ract_raw(i, m) >= 0)
          q.set_act(perm[i], m, perm[t.bundle.ract(i, m)]);
    validate_bundle(q);
    REQUIRE(trivialize(q).has_value());
  }
}
