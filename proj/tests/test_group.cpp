#include <catch2/catch_amalgamated.hpp>

#include "gerbes/group.hpp"
#include "gerbes/iso_search.hpp"

using namespace gerbes;

TEST_CASE("validate_group accepts the trivial group and cyclic tables") {
  auto t = validate_group({{0}});
  REQUIRE(t.order == 1);

  auto z4 = cyclic_group(4);
  REQUIRE(z4.order == 4);
  REQUIRE(z4.op(3, 2) == 1);
  REQUIRE(z4.invert(3) == 1);
}

TEST_CASE("validate_group rejects broken tables with a witness") {
  // 2-element table where row 1 is not a permutation
  REQUIRE_THROWS_AS(validate_group({{0, 1}, {1, 1}}), validation_error);
  try {
    validate_group({{0, 1}, {1, 1}});
  } catch (validation_error const& e) {
    REQUIRE(e.code() == "NotInvertible");
  }
  // identity not at index 0
  REQUIRE_THROWS_AS(validate_group({{1, 0}, {0, 1}}), validation_error);
  // out of range entry
  REQUIRE_THROWS_AS(validate_group({{0, 1}, {1, 7}}), validation_error);
  // non-associative latin square (order 5 loop)
  REQUIRE_THROWS_AS(validate_group({{0, 1, 2, 3, 4},
                                    {1, 0, 3, 4, 2},
                                    {2, 4, 0, 1, 3},
                                    {3, 2, 4, 0, 1},
                                    {4, 3, 1, 2, 0}}),
                    validation_error);
}

TEST_CASE("symmetric_group sizes and non-commutativity") {
  auto s3 = symmetric_group(3);
  REQUIRE(s3.order == 6);
  REQUIRE_FALSE(is_abelian(s3));
  REQUIRE(is_abelian(cyclic_group(4)));
  REQUIRE(conjugacy_class_count(s3) == 3);
  REQUIRE(conjugacy_class_count(cyclic_group(4)) == 4);
  REQUIRE(conjugacy_class_count(cyclic_group(2)) == 2);
}

TEST_CASE("automorphism groups by brute force") {
  // Aut(Z/3) has order 2 (inversion), Aut(trivial) is trivial
  auto a3 = automorphism_group(cyclic_group(3));
  REQUIRE(a3.aut.order == 2);
  REQUIRE(a3.perms[0] == std::vector<int>({0, 1, 2}));

  auto a1 = automorphism_group(trivial_group());
  REQUIRE(a1.aut.order == 1);

  // Aut(S3) has order 6 and the inner homomorphism is injective
  auto s3 = symmetric_group(3);
  auto as3 = automorphism_group(s3);
  REQUIRE(as3.aut.order == 6);
  std::vector<char> seen(6, 0);
  for (int x = 0; x < 6; ++x) seen[as3.inner(x)] = 1;
  for (int x = 0; x < 6; ++x) REQUIRE(seen[x] == 1);

  REQUIRE_THROWS_AS(automorphism_group(symmetric_group(5)), cap_error);
}

TEST_CASE("Aut(G) order divides |G|! and Inner(G) = G/Z(G) on test groups") {
  for (auto const& g : {cyclic_group(3), cyclic_group(4), symmetric_group(3)}) {
    auto a = automorphism_group(g);
    long fact = 1;
    for (int i = 2; i <= g.order; ++i) fact *= i;
    REQUIRE(fact % a.aut.order == 0);
    // center by brute force
    std::vector<int> center;
    for (int x = 0; x < g.order; ++x) {
      bool c = true;
      for (int y = 0; y < g.order; ++y)
        if (g.op(x, y) != g.op(y, x)) c = false;
      if (c) center.push_back(x);
    }
    auto q = quotient_group(g, center);
    auto img = subgroup_generated(a.aut, a.inner.map);
    REQUIRE(groups_isomorphic(q.group, img.group));
  }
}

TEST_CASE("semidirect products") {
  auto z2 = cyclic_group(2);
  auto z3 = cyclic_group(3);

  // trivial action gives the direct product; all elements self-inverse for Z2xZ2
  auto d = semidirect_product(trivial_action(z2, z2));
  REQUIRE(d.order == 4);
  for (int x = 0; x < 4; ++x) REQUIRE(d.op(x, x) == 0);
  REQUIRE(groups_isomorphic(d, product_group(z2, z2)));

  // Z2 acting on Z3 by inversion gives S3
  GroupAction inv_act = validate_action(z2, z3, {0, 1, 2, 0, 2, 1});
  auto s = semidirect_product(inv_act);
  REQUIRE(s.order == 6);
  REQUIRE(groups_isomorphic(s, symmetric_group(3)));
  REQUIRE_FALSE(is_abelian(s));

  // (0,0) is the unit by the pair encoding h*|G|+g
  REQUIRE(s.op(0, 5) == 5);
}

TEST_CASE("semidirect product with trivial action is the direct product, orders <= 12") {
  auto z3 = cyclic_group(3);
  auto z4 = cyclic_group(4);
  REQUIRE(groups_isomorphic(semidirect_product(trivial_action(z4, z3)),
                            product_group(z3, z4)));
}

TEST_CASE("action validation rejects non-actions") {
  auto z2 = cyclic_group(2);
  auto z3 = cyclic_group(3);
  // not an automorphism: swaps identity
  REQUIRE_THROWS_AS(validate_action(z2, z3, {0, 1, 2, 1, 0, 2}), validation_error);
}

TEST_CASE("quotients and subgroups") {
  auto z4 = cyclic_group(4);
  auto q = quotient_group(z4, {0, 2});
  REQUIRE(q.group.order == 2);
  auto s = subgroup_generated(z4, {2});
  REQUIRE(s.group.order == 2);
  REQUIRE(s.elements == std::vector<int>({0, 2}));
}
