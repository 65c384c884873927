#include <catch2/catch_amalgamated.hpp>

#include "gerbes/cocycle.hpp"

using namespace gerbes;

namespace {

TwoGroup discrete_tg(FiniteGroup const& g) {
  return crossed_to_twogroup(discrete_crossed_module(g));
}
TwoGroup b_tg(FiniteGroup const& a) { return crossed_to_twogroup(b_crossed_module(a)); }

}  // namespace

TEST_CASE("H1 validation") {
  auto k = nerve_simplex3();
  auto tg = b_tg(cyclic_group(2));
  validate_h1(k, tg, unit_h1_cocycle(k, tg));

  // over the full simplex with B Z/2 the tetra relation g013+g123 = g023+g012
  // cuts 16 assignments down to 8
  int valid = 0;
  for (int mask = 0; mask < 16; ++mask) {
    H1Cocycle c;
    c.f.assign(6, 0);
    c.g = {(mask >> 0) & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1};
    try {
      validate_h1(k, tg, c);
      ++valid;
    } catch (validation_error const&) {
    }
  }
  REQUIRE(valid == 8);

  // circle3 with a discrete 2-group: any f is a valid cocycle
  auto kc = nerve_circle3();
  auto dtg = discrete_tg(symmetric_group(3));
  REQUIRE(detail::enumerate_h1_cocycles(kc, dtg, 1 << 20, 1).size() == 216);
}

TEST_CASE("H1 equivalence on the circle via holonomy") {
  auto k = nerve_circle3();
  auto z2 = cyclic_group(2);
  auto tg = discrete_tg(z2);
  // edge order (0,1),(0,2),(1,2); two holonomy-1 cocycles are equivalent
  H1Cocycle a{{1, 0, 0}, {}};
  H1Cocycle b{{0, 1, 0}, {}};
  validate_h1(k, tg, a);
  validate_h1(k, tg, b);
  REQUIRE(cycle_holonomy(k, z2, a.f) == 1);
  REQUIRE(cycle_holonomy(k, z2, b.f) == 1);
  REQUIRE(are_equivalent_h1(k, tg, a, a).has_value());
  REQUIRE(are_equivalent_h1(k, tg, a, b).has_value());
  // holonomy 0 vs holonomy 1: inequivalent
  H1Cocycle u{{0, 0, 0}, {}};
  REQUIRE(cycle_holonomy(k, z2, u.f) == 0);
  REQUIRE_FALSE(are_equivalent_h1(k, tg, a, u).has_value());
}

TEST_CASE("H1 class counts against the holonomy oracle") {
  auto k = nerve_circle3();
  for (auto const& g : {cyclic_group(2), cyclic_group(4), symmetric_group(3)}) {
    auto classes = enumerate_h1_classes(k, discrete_tg(g));
    REQUIRE(static_cast<long long>(classes.representatives.size()) ==
            holonomy_oracle_class_count(k, g));
  }
}

TEST_CASE("H1 class counts against the abelian oracle") {
  auto z2 = cyclic_group(2);
  auto z3 = cyclic_group(3);
  REQUIRE(enumerate_h1_classes(nerve_sphere_tetra(), b_tg(z2)).representatives.size() == 2);
  REQUIRE(enumerate_h1_classes(nerve_sphere_tetra(), b_tg(z3)).representatives.size() == 3);
  REQUIRE(enumerate_h1_classes(nerve_simplex3(), b_tg(z2)).representatives.size() == 1);
  REQUIRE(enumerate_h1_classes(nerve_simplex3(), b_tg(z3)).representatives.size() == 1);
  // nonabelian coefficients over the full simplex: still a single class
  REQUIRE(enumerate_h1_classes(nerve_simplex3(),
                               crossed_to_twogroup(aut_two_group(cyclic_group(3))))
              .representatives.size() == 1);
}

TEST_CASE("generator moves produce the same partition as the full witness search") {
  // tiny instances: every pair within a class has a witness; across classes none
  struct Case {
    CoverNerve k;
    TwoGroup tg;
  };
  std::vector<Case> cases;
  cases.push_back({nerve_circle3(), discrete_tg(cyclic_group(2))});
  cases.push_back({nerve_circle3(), crossed_to_twogroup(z2_in_z4())});
  cases.push_back({nerve_sphere_tetra(), b_tg(cyclic_group(2))});
  for (auto const& [k, tg] : cases) {
    auto cls = enumerate_h1_classes(k, tg);
    int n = static_cast<int>(cls.cocycles.size());
    for (int i = 0; i < n; ++i)
      for (int j = i; j < std::min(n, i + 6); ++j) {
        bool same = cls.class_of[i] == cls.class_of[j];
        bool witness =
            are_equivalent_h1(k, tg, cls.cocycles[i], cls.cocycles[j]).has_value();
        REQUIRE(same == witness);
      }
  }
}

TEST_CASE("coboundary witnesses compose as an equivalence relation") {
  auto k = nerve_circle3();
  auto tg = crossed_to_twogroup(z2_in_z4());
  auto cls = enumerate_h1_classes(k, tg);
  // reflexive witness and symmetric witness exist for adjacent members
  auto const& c0 = cls.cocycles[0];
  REQUIRE(are_equivalent_h1(k, tg, c0, c0).has_value());
  for (int j = 1; j < static_cast<int>(cls.cocycles.size()); ++j)
    if (cls.class_of[j] == cls.class_of[0]) {
      REQUIRE(are_equivalent_h1(k, tg, c0, cls.cocycles[j]).has_value());
      REQUIRE(are_equivalent_h1(k, tg, cls.cocycles[j], c0).has_value());
      break;
    }
}

TEST_CASE("pushforward along 2-group homs") {
  auto k = nerve_circle3();
  auto src = crossed_to_twogroup(z2_in_z4());
  auto idh = identity_twogroup_hom(src);
  auto cls = enumerate_h1_classes(k, src);
  REQUIRE(push_cocycle(k, idh, cls.cocycles[0]) == cls.cocycles[0]);

  // weak equivalence Z2_in_Z4 -> discrete(Z2): bijection on classes over C3
  auto dst = discrete_tg(cyclic_group(2));
  std::vector<int> psi(src.n_mor());
  for (int h = 0; h < 2; ++h)
    for (int g = 0; g < 4; ++g) psi[h * 4 + g] = g % 2;
  auto f = validate_twogroup_hom(src, dst, {0, 1, 0, 1}, psi);
  auto dst_cls = enumerate_h1_classes(k, dst);
  REQUIRE(cls.representatives.size() == dst_cls.representatives.size());
  // the induced map on classes is well-defined and bijective
  std::vector<int> image_class(cls.representatives.size(), -1);
  for (size_t i = 0; i < cls.cocycles.size(); ++i) {
    auto pushed = push_cocycle(k, f, cls.cocycles[i]);
    int dc = -1;
    for (size_t j = 0; j < dst_cls.cocycles.size(); ++j)
      if (dst_cls.cocycles[j] == pushed) dc = dst_cls.class_of[j];
    REQUIRE(dc >= 0);
    int sc = cls.class_of[i];
    REQUIRE((image_class[sc] < 0 || image_class[sc] == dc));
    image_class[sc] = dc;
  }
  std::sort(image_class.begin(), image_class.end());
  for (size_t i = 0; i < image_class.size(); ++i)
    REQUIRE(image_class[i] == static_cast<int>(i));

  // non-weak-equivalence (Z4 ↠ Z2) -> discrete(1) collapses classes on S²
  auto ks = nerve_sphere_tetra();
  auto src2 = crossed_to_twogroup(z4_onto_z2());
  auto dst2 = discrete_tg(trivial_group());
  auto f2 = validate_twogroup_hom(src2, dst2, std::vector<int>(2, 0),
                                  std::vector<int>(8, 0));
  auto s2 = enumerate_h1_classes(ks, src2);
  auto d2 = enumerate_h1_classes(ks, dst2);
  REQUIRE(s2.representatives.size() == 2);
  REQUIRE(d2.representatives.size() == 1);
  (void)f2;
}

TEST_CASE("H0 classes") {
  // single vertex with delooping(G): one class
  auto pt = validate_nerve(1, {}, {}, {});
  auto bz3 = delooping(cyclic_group(3));
  REQUIRE(enumerate_h0_classes(pt, bz3).representatives.size() == 1);

  // circle with delooping(G): conjugacy classes of G
  auto k = nerve_circle3();
  REQUIRE(enumerate_h0_classes(k, delooping(symmetric_group(3))).representatives.size() == 3);
  REQUIRE(enumerate_h0_classes(k, delooping(cyclic_group(4))).representatives.size() == 4);

  // circle with discrete(X): locally constant maps, |X| classes
  REQUIRE(enumerate_h0_classes(k, discrete_groupoid(3)).representatives.size() == 3);
}

TEST_CASE("H0 to bundle and back") {
  auto tg = crossed_to_twogroup(z2_in_z4());
  // unit cocycle over a 2-set cover of a 2-point base glues a trivial bundle
  auto cover = validate_cover(2, {{0, 1}, {1}});
  auto k = nerve_of_cover(cover);
  H0Cocycle unit{{0, 0}, std::vector<int>(k.edges.size(), tg.id_mor(0))};
  validate_h0(k, tg.gpd, unit);
  auto glued = h0_to_bundle(cover, tg.gpd, unit);
  auto triv = trivial_bundle_const(tg.gpd, 2, 0);
  REQUIRE(find_bundle_iso(glued.bundle, triv.bundle).has_value());

  // extraction from the glued bundle lands in the same class
  auto back = bundle_to_h0(cover, glued.bundle);
  REQUIRE(are_equivalent_h0(k, tg.gpd, unit, back).has_value());

  // exact-sequence bundle over the 2-point base: its fibers carry different
  // anchor sets, so only the disjoint 2-set cover is good for it
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
  auto cover2 = validate_cover(2, {{0}, {1}});
  auto k2 = nerve_of_cover(cover2);
  auto c = bundle_to_h0(cover2, p);
  auto reglued = h0_to_bundle(cover2, tg.gpd, c);
  REQUIRE(find_bundle_iso(reglued.bundle, p).has_value());
  // the overlapping cover is not good for this bundle and is rejected
  REQUIRE_THROWS_AS(bundle_to_h0(cover, p), validation_error);

  // class of the extracted cocycle is independent of the section choice,
  // exercised on the glued bundle over the overlapping cover
  auto fib = glued.bundle.fibers();
  std::vector<H0Cocycle> extracted;
  auto const& gb = glued.bundle;
  for (int a0 : fib[0])
    for (int a1 : fib[1]) {
      if (gb.anchor[a0] != gb.anchor[a1]) continue;
      for (int b1 : fib[1]) {
        std::vector<std::vector<int>> choice = {{a0, a1}, {b1}};
        try {
          extracted.push_back(bundle_to_h0(cover, gb, &choice));
        } catch (validation_error const&) {
          // section with non-constant transition on the overlap: skip
        }
      }
    }
  REQUIRE(extracted.size() >= 2);
  for (auto const& e : extracted)
    REQUIRE(are_equivalent_h0(k, tg.gpd, extracted[0], e).has_value());
}

TEST_CASE("bundle classification over the singleton cover counts pi0 components") {
  auto tg = crossed_to_twogroup(aut_two_group(cyclic_group(3)));
  // singleton cover of a 2-point base: nerve is two disjoint vertices
  auto cover = validate_cover(2, {{0}, {1}});
  auto k = nerve_of_cover(cover);
  auto cls = enumerate_h0_classes(k, tg.gpd);
  // |pi0(Γ)|^|M| classes; AUT(Z/3) has pi0 = Z/2 on 2 objects -> wait:
  // pi0 of the underlying groupoid of AUT(Z3): objects Aut(Z3) = 2 elements,
  // morphisms t(h)g: component of 1 under im(t) = inner = trivial -> 2 objects
  // connected iff they differ by im(t) = {id}: two components
  auto p = pi0(tg.gpd);
  int ncomp = *std::max_element(p.begin(), p.end()) + 1;
  REQUIRE(static_cast<int>(cls.representatives.size()) == ncomp * ncomp);
  // every bundle over M is triv_f and classes biject with pointwise pi0 data
  std::vector<std::vector<int>> fs;
  for (int a = 0; a < tg.n_obj(); ++a)
    for (int b = 0; b < tg.n_obj(); ++b) fs.push_back({a, b});
  int iso_classes = 0;
  std::vector<char> used(fs.size(), 0);
  for (size_t i = 0; i < fs.size(); ++i) {
    if (used[i]) continue;
    ++iso_classes;
    for (size_t j = i; j < fs.size(); ++j)
      if (!hom_trivials(tg.gpd, fs[i], fs[j]).empty()) used[j] = 1;
  }
  REQUIRE(iso_classes == static_cast<int>(cls.representatives.size()));
}

TEST_CASE("enumeration cap") {
  auto k = nerve_torus_min();
  auto tg = crossed_to_twogroup(z2_in_z4());
  REQUIRE_THROWS_AS(enumerate_h1_classes(k, tg, 100000), cap_error);
}
