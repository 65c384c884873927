#include <catch2/catch_amalgamated.hpp>

#include "gerbes/groupoid.hpp"
#include "gerbes/iso_search.hpp"
#include "gerbes/nerve.hpp"

using namespace gerbes;

TEST_CASE("discrete groupoids") {
  auto d3 = discrete_groupoid(3);
  validate_groupoid(d3);
  REQUIRE(d3.n_obj == 3);
  REQUIRE(d3.n_mor == 3);
  auto d0 = discrete_groupoid(0);
  validate_groupoid(d0);

  // unique functor |X|=2 -> point fails the fully-faithful pullback count
  auto d2 = discrete_groupoid(2);
  GroupoidFunctor f{d2, discrete_groupoid(1), {0, 0}, {0, 0}};
  validate_functor(f);
  auto w = is_weak_equivalence_functor(f);
  REQUIRE_FALSE(w.ok);
}

TEST_CASE("delooping") {
  auto bz2 = delooping(cyclic_group(2));
  validate_groupoid(bz2);
  REQUIRE(bz2.n_obj == 1);
  REQUIRE(bz2.n_mor == 2);
  validate_groupoid(delooping(trivial_group()));

  auto hg = hom_group(delooping(symmetric_group(3)), 0);
  REQUIRE(hg.group == symmetric_group(3));
}

TEST_CASE("action groupoids") {
  auto z2 = cyclic_group(2);
  // trivial action on 3 points: disjoint union of deloopings
  auto triv = validate_set_action(z2, 3, {0, 1, 2, 0, 1, 2});
  auto g = action_groupoid(triv);
  validate_groupoid(g);
  REQUIRE(g.n_obj == 3);
  REQUIRE(g.n_mor == 6);
  REQUIRE(pi0(g) == std::vector<int>({0, 1, 2}));
  REQUIRE(hom_group(g, 0).group == z2);

  // Z/2 acting on itself by translation: all hom-sets have one element
  auto trans = validate_set_action(z2, 2, {0, 1, 1, 0});
  auto t = action_groupoid(trans);
  validate_groupoid(t);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) REQUIRE(t.hom(x, y).size() == 1);
  GroupoidFunctor to_pt{t, discrete_groupoid(1), {0, 0}, {0, 0, 0, 0}};
  validate_functor(to_pt);
  REQUIRE(is_weak_equivalence_functor(to_pt).ok);

  // t: H→G induces the action groupoid H⋉G with ρ(h,g) = t(h)g
  auto z4 = cyclic_group(4);
  GroupHom emb = validate_hom(z2, z4, {0, 2});
  std::vector<int> rho(2 * 4);
  for (int h = 0; h < 2; ++h)
    for (int x = 0; x < 4; ++x) rho[h * 4 + x] = z4.op(emb(h), x);
  auto hg = action_groupoid(validate_set_action(z2, 4, rho));
  validate_groupoid(hg);
  REQUIRE(hg.n_obj == 4);
  REQUIRE(hg.n_mor == 8);
  REQUIRE(pi0(hg) == std::vector<int>({0, 1, 0, 1}));
  REQUIRE_THROWS_AS(validate_set_action(z2, 2, {0, 1, 1, 1}), validation_error);
}

TEST_CASE("opposite groupoid") {
  auto z3 = cyclic_group(3);
  auto b = delooping(z3);
  auto op = opposite(b);
  validate_groupoid(op);
  REQUIRE(opposite(op) == b);
  // delooping(Z/3)ᵒᵖ ≅ delooping(Z/3) via inversion
  GroupoidFunctor invf{b, op, {0}, z3.inv};
  validate_functor(invf);
  REQUIRE(is_weak_equivalence_functor(invf).ok);
  auto d = discrete_groupoid(4);
  REQUIRE(opposite(d) == d);
}

TEST_CASE("weak equivalence of functors") {
  auto bz2 = delooping(cyclic_group(2));
  REQUIRE(is_weak_equivalence_functor(identity_functor(bz2)).ok);
  GroupoidFunctor collapse{bz2, discrete_groupoid(1), {0}, {0, 0}};
  validate_functor(collapse);
  auto r = is_weak_equivalence_functor(collapse);
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.witness.find("hom") != std::string::npos);
}

TEST_CASE("pi0 and hom groups") {
  auto g = cech_groupoid(nerve_sphere_tetra());
  validate_groupoid(g);
  // pair groupoid on 4 objects: single class, trivial isotropy
  auto classes = pi0(g);
  REQUIRE(*std::max_element(classes.begin(), classes.end()) == 0);
  REQUIRE(hom_group(g, 2).group.order == 1);
}

TEST_CASE("cech groupoid closure") {
  // full 2-simplex nerve gives the pair groupoid on 3 objects
  auto full = validate_nerve(3, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1, 2}}, {});
  auto g = cech_groupoid(full);
  validate_groupoid(g);
  REQUIRE(g.n_obj == 3);
  REQUIRE(g.n_mor == 9);

  // single vertex: terminal groupoid
  auto pt = cech_groupoid(validate_nerve(1, {}, {}, {}));
  REQUIRE(pt.n_obj == 1);
  REQUIRE(pt.n_mor == 1);

  // path graph: (0,1) and (1,2) are not composable without the triangle
  auto path = validate_nerve(3, {{0, 1}, {1, 2}}, {}, {});
  try {
    cech_groupoid(path);
    FAIL("expected CompositionNotClosed");
  } catch (validation_error const& e) {
    REQUIRE(e.code() == "CompositionNotClosed");
  }
}

TEST_CASE("natural transformations to a discrete groupoid exist only between equal functors") {
  auto z2 = cyclic_group(2);
  auto src = delooping(z2);
  auto dst = discrete_groupoid(2);
  GroupoidFunctor f{src, dst, {0}, {0, 0}};
  GroupoidFunctor g{src, dst, {1}, {1, 1}};
  validate_functor(f);
  validate_functor(g);
  REQUIRE(find_natural_transformation(f, f).has_value());
  REQUIRE_FALSE(find_natural_transformation(f, g).has_value());
}

TEST_CASE("weak equivalence implies pi0 bijection and matching hom groups") {
  auto z2 = cyclic_group(2);
  auto trans = validate_set_action(z2, 2, {0, 1, 1, 0});
  auto t = action_groupoid(trans);
  GroupoidFunctor to_pt{t, discrete_groupoid(1), {0, 0}, {0, 0, 0, 0}};
  REQUIRE(is_weak_equivalence_functor(to_pt).ok);
  auto p_src = pi0(t);
  auto p_dst = pi0(to_pt.target);
  REQUIRE(*std::max_element(p_src.begin(), p_src.end()) ==
          *std::max_element(p_dst.begin(), p_dst.end()));
  for (int x = 0; x < t.n_obj; ++x)
    REQUIRE(groups_isomorphic(hom_group(t, x).group,
                              hom_group(to_pt.target, to_pt.obj_map[x]).group));
}

TEST_CASE("product and full subgroupoid") {
  auto p = product_groupoid(delooping(cyclic_group(2)), discrete_groupoid(2));
  validate_groupoid(p);
  REQUIRE(p.n_obj == 2);
  REQUIRE(p.n_mor == 4);
  auto s = full_subgroupoid(p, {0});
  validate_groupoid(s.gpd);
  REQUIRE(s.gpd.n_mor == 2);
}
