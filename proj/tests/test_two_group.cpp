#include <catch2/catch_amalgamated.hpp>

#include "gerbes/iso_search.hpp"
#include "gerbes/two_group.hpp"

using namespace gerbes;

TEST_CASE("crossed module validation") {
  // discrete(G) and BA are valid for any G / abelian A
  validate_twogroup(crossed_to_twogroup(discrete_crossed_module(symmetric_group(3))));
  validate_twogroup(crossed_to_twogroup(b_crossed_module(cyclic_group(3))));

  // (A -> 1) with A = S3 fails the Peiffer identity
  auto s3 = symmetric_group(3);
  std::vector<int> act(s3.order);
  std::iota(act.begin(), act.end(), 0);
  try {
    validate_crossed_module(s3, trivial_group(), std::vector<int>(6, 0), act);
    FAIL("expected PeifferFails");
  } catch (validation_error const& e) {
    REQUIRE(e.code() == "PeifferFails");
  }

  // (Z/3 -> Z/2 = Aut(Z/3)) with trivial t and the evaluation action
  auto z3 = cyclic_group(3);
  auto a = automorphism_group(z3);
  std::vector<int> ev(2 * 3);
  for (int g = 0; g < 2; ++g)
    for (int x = 0; x < 3; ++x) ev[g * 3 + x] = a.perms[g][x];
  auto cm = validate_crossed_module(z3, a.aut, {0, 0, 0}, ev);
  REQUIRE(cm.t(1) == 0);
}

TEST_CASE("crossed module to 2-group") {
  // discrete(G): morphisms ≅ G, only identities
  auto dg = crossed_to_twogroup(discrete_crossed_module(cyclic_group(3)));
  validate_twogroup(dg);
  REQUIRE(dg.n_obj() == 3);
  REQUIRE(dg.n_mor() == 3);
  for (int m = 0; m < 3; ++m) REQUIRE(dg.src(m) == dg.tgt(m));

  // BA: one object group, morphisms A
  auto ba = crossed_to_twogroup(b_crossed_module(cyclic_group(2)));
  validate_twogroup(ba);
  REQUIRE(ba.n_obj() == 1);
  REQUIRE(ba.n_mor() == 2);

  // AUT(Z/3): |Γ₀| = 2, |Γ₁| = 6
  auto aut = crossed_to_twogroup(aut_two_group(cyclic_group(3)));
  validate_twogroup(aut);
  REQUIRE(aut.n_obj() == 2);
  REQUIRE(aut.n_mor() == 6);
}

TEST_CASE("2-group to crossed module round trip") {
  auto fixtures = std::vector<CrossedModule>{
      discrete_crossed_module(cyclic_group(2)), b_crossed_module(cyclic_group(3)),
      aut_two_group(cyclic_group(3)), z2_in_z4(), z4_onto_z2()};
  for (auto const& cm : fixtures) {
    auto tg = crossed_to_twogroup(cm);
    validate_twogroup(tg);
    auto rc = twogroup_to_crossed(tg);
    // exact table equality after the canonical relabeling
    REQUIRE(rc.g == cm.g);
    REQUIRE(rc.h == cm.h);
    REQUIRE(rc.t.map == cm.t.map);
    REQUIRE(rc.act.act == cm.act.act);
    // the explicit map is a strict isomorphism of 2-groups
    auto rtg = crossed_to_twogroup(rc);
    auto map = crossed_roundtrip_morphism_map(tg, rc);
    std::vector<int> phi(tg.n_obj());
    std::iota(phi.begin(), phi.end(), 0);
    auto hom = validate_twogroup_hom(tg, rtg, phi, map);
    std::vector<char> seen(tg.n_mor(), 0);
    for (int m = 0; m < tg.n_mor(); ++m) seen[hom.psi(m)] = 1;
    for (int m = 0; m < tg.n_mor(); ++m) REQUIRE(seen[m] == 1);
  }
}

TEST_CASE("aut 2-groups") {
  auto a3 = aut_two_group(cyclic_group(3));
  REQUIRE(a3.g.order == 2);
  auto a2 = aut_two_group(cyclic_group(2));
  REQUIRE(a2.g.order == 1);
  auto a1 = aut_two_group(trivial_group());
  REQUIRE(a1.g.order == 1);
  REQUIRE(a1.h.order == 1);
}

TEST_CASE("pi0 and pi1") {
  auto p = pi0_pi1(z2_in_z4());
  REQUIRE(groups_isomorphic(p.first, cyclic_group(2)));
  REQUIRE(p.second.order == 1);
  auto q = pi0_pi1(z4_onto_z2());
  REQUIRE(q.first.order == 1);
  REQUIRE(groups_isomorphic(q.second, cyclic_group(2)));
  auto d = pi0_pi1(discrete_crossed_module(symmetric_group(3)));
  REQUIRE(groups_isomorphic(d.first, symmetric_group(3)));
  REQUIRE(d.second.order == 1);
}

TEST_CASE("weak equivalences of 2-group homomorphisms") {
  auto src = crossed_to_twogroup(z2_in_z4());
  REQUIRE(is_weak_equivalence_2group(identity_twogroup_hom(src)).ok);

  // (Z/2 ↪ Z/4) -> discrete(Z/2): phi = mod 2, psi(h,g) = g mod 2
  auto dst = crossed_to_twogroup(discrete_crossed_module(cyclic_group(2)));
  std::vector<int> phi = {0, 1, 0, 1};
  std::vector<int> psi(src.n_mor());
  for (int h = 0; h < 2; ++h)
    for (int g = 0; g < 4; ++g) psi[h * 4 + g] = g % 2;
  auto f = validate_twogroup_hom(src, dst, phi, psi);
  REQUIRE(is_weak_equivalence_2group(f).ok);

  // (Z/4 ↠ Z/2) -> discrete(1): pi1 mismatch caught by condition (b)
  auto src2 = crossed_to_twogroup(z4_onto_z2());
  auto dst2 = crossed_to_twogroup(discrete_crossed_module(trivial_group()));
  auto f2 = validate_twogroup_hom(src2, dst2, std::vector<int>(2, 0),
                                  std::vector<int>(8, 0));
  auto r = is_weak_equivalence_2group(f2);
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.witness.find("hom") != std::string::npos);
}

TEST_CASE("strict hom weak equivalence matches pi0/pi1 comparison on fixtures") {
  struct Case {
    CrossedModule s, t;
    std::vector<int> phi, psi;
  };
  auto mk = [&](CrossedModule s, CrossedModule t, std::vector<int> phi,
                std::vector<int> psi) {
    return Case{std::move(s), std::move(t), std::move(phi), std::move(psi)};
  };
  std::vector<Case> cases;
  cases.push_back(mk(z2_in_z4(), discrete_crossed_module(cyclic_group(2)),
                     {0, 1, 0, 1}, {0, 1, 2, 3, 0, 1, 2, 3}));
  // fix: psi for first case computed properly below
  cases[0].psi.assign(8, 0);
  for (int h = 0; h < 2; ++h)
    for (int g = 0; g < 4; ++g) cases[0].psi[h * 4 + g] = g % 2;
  cases.push_back(mk(z4_onto_z2(), discrete_crossed_module(trivial_group()),
                     std::vector<int>(2, 0), std::vector<int>(8, 0)));
  for (auto const& c : cases) {
    auto s = crossed_to_twogroup(c.s);
    auto t = crossed_to_twogroup(c.t);
    auto f = validate_twogroup_hom(s, t, c.phi, c.psi);
    auto [s0, s1] = pi0_pi1(c.s);
    auto [t0, t1] = pi0_pi1(c.t);
    bool pis_match = groups_isomorphic(s0, t0) && groups_isomorphic(s1, t1);
    REQUIRE(is_weak_equivalence_2group(f).ok == pis_match);
  }
}
