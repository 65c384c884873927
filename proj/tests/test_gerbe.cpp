#include <catch2/catch_amalgamated.hpp>

#include "gerbes/gerbe_morphism.hpp"

using namespace gerbes;

namespace {

TwoGroup bz2() { return crossed_to_twogroup(b_crossed_module(cyclic_group(2))); }
TwoGroup aut3() { return crossed_to_twogroup(aut_two_group(cyclic_group(3))); }

}  // namespace

TEST_CASE("trivial gerbes validate") {
  auto g = trivial_gerbe(bz2(), 2);
  REQUIRE(g.gerbe.y_size == 2);
  REQUIRE(g.gerbe.p.total_size == 4);
  // unit section is the identity-like element, inverses are group inverses
  for (int y = 0; y < 2; ++y)
    REQUIRE(g.gerbe.p.anchor[g.gerbe.unit_t[y]] == 0);

  auto ga = trivial_gerbe(aut3(), 3);
  REQUIRE(ga.gerbe.p.total_size == 9);
}

TEST_CASE("corrupting mu is caught") {
  auto g = trivial_gerbe(aut3(), 1).gerbe;
  // swap two distinct mu values in one row
  int a = -1, b = -1;
  for (int p2 = 0; p2 < g.p.total_size && a < 0; ++p2)
    for (int p1 = 0; p1 < g.p.total_size && a < 0; ++p1)
      if (g.mu_raw(p2, p1) >= 0)
        for (int p1b = p1 + 1; p1b < g.p.total_size; ++p1b)
          if (g.mu_raw(p2, p1b) >= 0 && g.mu_raw(p2, p1b) != g.mu_raw(p2, p1)) {
            a = g.mu_raw(p2, p1);
            b = g.mu_raw(p2, p1b);
            g.set_mu(p2, p1, b);
            g.set_mu(p2, p1b, a);
            break;
          }
  REQUIRE(a >= 0);
  REQUIRE_THROWS_AS(validate_gerbe(g), validation_error);
}

TEST_CASE("gerbes glued from cocycles") {
  // nontrivial class over the sphere with B Z/2
  auto tg = bz2();
  auto cover = validate_cover(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  auto k = nerve_of_cover(cover);
  REQUIRE(k.triangles.size() == 4);
  REQUIRE(k.tetras.empty());
  auto cls = enumerate_h1_classes(k, tg);
  REQUIRE(cls.representatives.size() == 2);
  for (auto const& rep : cls.representatives) {
    auto cg = gerbe_from_cocycle(cover, tg, rep);
    REQUIRE(cg.gerbe.base_size == 4);
    // extraction with canonical sections lands in the same class
    auto sections = default_sections(cg.gerbe, cover);
    auto back = extract_cocycle(cg.gerbe, cover, sections);
    REQUIRE(are_equivalent_h1(k, tg, rep, back).has_value());
  }

  // nonabelian coefficients over a 3-patch cover of a 3-point circle
  auto tga = aut3();
  auto cover3 = validate_cover(3, {{0, 1}, {1, 2}, {0, 2}});
  auto k3 = nerve_of_cover(cover3);
  auto cls3 = enumerate_h1_classes(k3, tga);
  for (size_t i = 0; i < cls3.representatives.size(); ++i) {
    auto cg = gerbe_from_cocycle(cover3, tga, cls3.representatives[i]);
    auto back = extract_cocycle(cg.gerbe, cover3, default_sections(cg.gerbe, cover3));
    REQUIRE(are_equivalent_h1(k3, tga, cls3.representatives[i], back).has_value());
  }
}

TEST_CASE("identity morphism and 2-morphisms") {
  auto g = trivial_gerbe(bz2(), 2).gerbe;
  auto id1 = identity_gerbe_morphism(g);
  auto id2 = identity_gerbe_morphism(g);
  auto m = find_fp_2morphism(id1, id2);
  REQUIRE(m.has_value());
  validate_gerbe_2morphism(id1, id2, *m);
}

TEST_CASE("iso from refinement") {
  auto g = trivial_gerbe(aut3(), 2).gerbe;

  // identity refinement
  std::vector<int> idmap(g.y_size);
  std::iota(idmap.begin(), idmap.end(), 0);
  auto r0 = iso_from_refinement(g, g.y_size, idmap, g.pi);
  REQUIRE(r0.refined.gerbe.p.total_size == g.p.total_size);

  // doubling refinement W = Y ⊔ Y
  std::vector<int> dbl(2 * g.y_size), omega(2 * g.y_size);
  for (int w = 0; w < 2 * g.y_size; ++w) {
    dbl[w] = w % g.y_size;
    omega[w] = g.pi[dbl[w]];
  }
  auto r1 = iso_from_refinement(g, 2 * g.y_size, dbl, omega);
  REQUIRE(r1.refined.gerbe.y_size == 2 * g.y_size);

  // extraction from isomorphic gerbes gives equivalent cocycles
  auto tg = bz2();
  auto cover = validate_cover(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
  auto k = nerve_of_cover(cover);
  auto cls = enumerate_h1_classes(k, tg);
  auto cg = gerbe_from_cocycle(cover, tg, cls.representatives[1]);
  std::vector<int> idy(cg.gerbe.y_size);
  std::iota(idy.begin(), idy.end(), 0);
  auto riso = iso_from_refinement(cg.gerbe, cg.gerbe.y_size, idy, cg.gerbe.pi);
  auto c1 = extract_cocycle(cg.gerbe, cover, default_sections(cg.gerbe, cover));
  auto c2 = extract_cocycle(riso.refined.gerbe, cover,
                            default_sections(riso.refined.gerbe, cover));
  REQUIRE(are_equivalent_h1(k, tg, c1, c2).has_value());
}

TEST_CASE("unit and inverse laws hold in validated gerbes") {
  auto tg = aut3();
  auto cover = validate_cover(2, {{0, 1}, {1}});
  auto k = nerve_of_cover(cover);
  auto cls = enumerate_h1_classes(k, tg);
  auto g = gerbe_from_cocycle(cover, tg, cls.representatives[0]).gerbe;
  for (int pe = 0; pe < g.p.total_size; ++pe) {
    auto [y1, y2] = g.chi(pe);
    REQUIRE(g.mu_of(g.unit_t[y2], pe) == pe);
    REQUIRE(g.mu_of(pe, g.unit_t[y1]) == pe);
    REQUIRE(g.mu_of(g.inv_i[pe], pe) == g.unit_t[y1]);
    REQUIRE(g.mu_of(pe, g.inv_i[pe]) == g.unit_t[y2]);
    REQUIRE(g.p.anchor[g.inv_i[pe]] == tg.obj_inv(g.p.anchor[pe]));
  }
}
