#include "deltafan/catalog.hpp"
#include "deltafan/fan.hpp"
#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace deltafan;

namespace {

// Number of max cones containing x, by Cramer's rule. A complete fan whose
// cones meet properly has exactly one for a generic x.
std::size_t cones_hit(const Fan& f, const oracle::Vec& x) {
  std::size_t hits = 0;
  for (const auto& c : f.max_cones()) {
    std::vector<oracle::Vec> g;
    for (auto i : c) g.push_back(oracle::to_vec(f.points()[i]));
    hits += oracle::simplicial_contains(g, x);
  }
  return hits;
}

bool ray_shooting_complete(const Fan& f) {
  for (const auto& x : oracle::ray_directions(f.dim(), 64, 99)) {
    if (cones_hit(f, x) != 1) return false;
  }
  return true;
}

// Cone over the twisted triangulation of two concentric triangles at height
// 1, closed off by the downward ray. Complete, simplicial and not projective.
Fan twisted_fan() {
  std::vector<IntVector> pts{{3, 0, 1},  {0, 3, 1},  {-3, -3, 1}, {1, 0, 1},
                             {0, 1, 1},  {-1, -1, 1}, {0, 0, -1}};
  // a_i = 0..2, b_i = 3..5, down = 6
  std::vector<ConeIndices> cones{{3, 4, 5}, {6, 0, 1}, {6, 1, 2}, {6, 2, 0}};
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3;
    cones.push_back({i, j, 3 + i});
    cones.push_back({j, 3 + i, 3 + j});
  }
  return Fan(3, pts, cones);
}

// Checks heights h against Cramer coefficients computed independently.
bool strictly_convex(const Fan& f, const std::vector<Rational>& h) {
  const auto used = f.used_points();
  for (const auto& c : f.max_cones()) {
    const std::size_t d = f.dim();
    std::vector<oracle::Vec> m(d, oracle::Vec(d));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < d; ++k) m[r][k] = oracle::to_vec(f.points()[c[k]])[r];
    const long long D = oracle::laplace_det(m);
    for (auto w : used) {
      if (std::find(c.begin(), c.end(), w) != c.end()) continue;
      const auto x = oracle::to_vec(f.points()[w]);
      Rational s = Rational(D) * h[w];
      for (std::size_t k = 0; k < d; ++k) {
        auto mk = m;
        for (std::size_t r = 0; r < d; ++r) mk[r][k] = x[r];
        s -= Rational(oracle::laplace_det(mk)) * h[c[k]];
      }
      if (D < 0) s = -s;
      if (s <= 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("Fan canonicalizes and rejects malformed input") {
  Fan f(2, {{0, 1}, {1, 0}, {-1, -1}}, {{1, 0}, {2, 1}, {0, 2}});
  CHECK(f.points() == std::vector<IntVector>{{-1, -1}, {0, 1}, {1, 0}});
  CHECK(f.max_cones() == std::vector<ConeIndices>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(f.index_of(IntVector{1, 0}) == std::size_t{2});
  CHECK_FALSE(f.index_of(IntVector{1, 1}));

  CHECK_THROWS_AS(Fan(2, {{0, 0}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Fan(2, {{2, 0}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Fan(2, {{1, 0}, {1, 0}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Fan(2, {{1, 0}}, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Fan(2, {{1, 0, 0}}, {}), std::invalid_argument);
}

TEST_CASE("cone_contains and is_unimodular examples") {
  std::vector<IntVector> g{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 1, 1}};
  CHECK(is_unimodular(g));
  CHECK(cone_contains(g, IntVector{2, 2, 2, 1}));
  CHECK_FALSE(cone_contains(g, IntVector{0, 0, 0, 1}));

  std::vector<IntVector> h{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 1, 1, 2}};
  CHECK_FALSE(is_unimodular(h));
  std::vector<IntVector> dep{{1, 0}, {2, 0}};
  CHECK_THROWS_AS(is_unimodular(dep), std::invalid_argument);

  // non-simplicial cone over a square
  std::vector<IntVector> sq{{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}};
  CHECK(cone_contains(sq, IntVector{0, 0, 1}));
  CHECK(cone_contains(sq, IntVector{1, 0, 1}));
  CHECK_FALSE(cone_contains(sq, IntVector{2, 0, 1}));
}

TEST_CASE("cone_facets of simplicial and non-simplicial cones") {
  std::vector<IntVector> pts{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const auto f = cone_facets(pts, {0, 1, 2});
  REQUIRE(f.size() == 3);
  CHECK(f[0].rays == ConeIndices{0, 1});
  CHECK(f[0].normal == IntVector{0, 0, 1});

  std::vector<IntVector> sq{{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}};
  const auto g = cone_facets(sq, {0, 1, 2, 3});
  REQUIRE(g.size() == 4);
  for (const auto& fc : g) {
    CHECK(fc.rays.size() == 2);
    for (std::size_t i = 0; i < 4; ++i) CHECK(dot(fc.normal, sq[i]) >= 0);
  }
  CHECK(cone_facets(pts, {0, 1}).empty());
}

TEST_CASE("face fans of reflexive polytopes are complete and projective") {
  for (const auto& p : {catalog::cross_polytope(4), catalog::blowup_example(), catalog::projective_simplex(4),
                        catalog::square_sum(), catalog::cube(3)}) {
    const auto f = face_fan(p);
    CHECK(f.complete == Tristate::yes);
    CHECK(is_complete(f));
    if (f.simplicial == Tristate::yes) CHECK(ray_shooting_complete(f));
    const auto h = support_function(f);
    REQUIRE(h);
    if (f.simplicial == Tristate::yes) CHECK(strictly_convex(f, *h));
  }
  CHECK(face_fan(catalog::cube(3)).simplicial == Tristate::no);
  CHECK(face_fan(catalog::cross_polytope(3)).simplicial == Tristate::yes);
}

TEST_CASE("the face fan of the cube is projective through the non-simplicial path") {
  const auto f = face_fan(catalog::cube(4));
  CHECK(f.max_cones().size() == 8);
  CHECK(is_complete(f));
  CHECK(is_projective(f));
}

TEST_CASE("twisted fan is complete but not projective") {
  const auto tw = twisted_fan();
  CHECK(ray_shooting_complete(tw));
  CHECK(is_complete(tw));
  CHECK_FALSE(is_projective(tw));
}

TEST_CASE("is_complete detects gaps and overlaps") {
  const auto f = face_fan(catalog::cross_polytope(3));
  auto cones = f.max_cones();
  cones.pop_back();
  const Fan gap(3, f.points(), cones);
  CHECK_FALSE(is_complete(gap));
  CHECK_FALSE(ray_shooting_complete(gap));

  // Replace one octant by a cone poking into its neighbours.
  std::vector<IntVector> pts = f.points();
  pts.push_back({1, 1, -1});
  cones = f.max_cones();
  const std::size_t extra = pts.size() - 1;
  cones.front() = {cones.front()[0], cones.front()[1], extra};
  const Fan bad(3, pts, cones);
  CHECK_FALSE(is_complete(bad));
}

TEST_CASE("is_complete rejects a fan that winds twice around the origin") {
  // Five rays roughly 72 degrees apart, joined every second one: each ray is
  // shared by two cones on opposite sides, yet every direction is covered twice.
  const std::vector<IntVector> pts{{1, 0}, {1, 3}, {-4, 3}, {-4, -3}, {1, -3}};
  const Fan f(2, pts, {{0, 2}, {2, 4}, {4, 1}, {1, 3}, {3, 0}});
  CHECK(cones_hit(f, {3, 1}) == 2);
  CHECK_FALSE(is_complete(f));
  const auto report = validate_delta_maximal(f, LatticePolytope::hull(pts));
  CHECK_FALSE(report.verdict);
}

TEST_CASE("accepted fans pass the pairwise intersection test") {
  std::vector<Fan> fans{twisted_fan(), face_fan(catalog::cross_polytope(4)),
                        face_fan(catalog::blowup_example()), face_fan(catalog::projective_simplex_dual(3))};
  for (const auto& f : fans) {
    REQUIRE(is_complete(f));
    const auto& cones = f.max_cones();
    for (std::size_t i = 0; i < cones.size(); ++i) {
      const auto fi = cone_facets(f.points(), cones[i]);
      for (std::size_t j = i + 1; j < cones.size(); ++j)
        CHECK(intersect_properly(f.points(), cones[i], fi, cones[j], cone_facets(f.points(), cones[j])));
    }
  }
}

TEST_CASE("is_complete agrees with ray shooting on perturbed cross-polytope fans") {
  // Moving one ray of the cross-polytope fan keeps the combinatorics but may
  // fold cones over each other; both checks must see the same thing.
  std::mt19937_64 gen(31);
  const auto base = face_fan(catalog::cross_polytope(3));
  int agree = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<IntVector> pts = base.points();
    IntVector v(3);
    for (auto& c : v) c = static_cast<long long>(gen() % 7) - 3;
    if (v.is_zero()) continue;
    v = primitive(v);
    const std::size_t k = gen() % pts.size();
    bool dup = false;
    for (const auto& p : pts) dup |= p == v;
    if (dup) continue;
    pts[k] = v;
    Fan f(3, pts, std::vector<ConeIndices>(base.max_cones()));
    bool full = true;
    for (const auto& c : f.max_cones()) full &= rank(f.generators(c)) == 3;
    if (!full) continue;
    CHECK(is_complete(f) == ray_shooting_complete(f));
    ++agree;
  }
  CHECK(agree > 20);
}

TEST_CASE("skeleton counts") {
  const auto f = face_fan(catalog::cross_polytope(4));
  CHECK(skeleton(f, 1).size() == 8);
  CHECK(skeleton(f, 2).size() == 8 + 24);
  CHECK(skeleton(f, 4).size() == 8 + 24 + 32 + 16);
  const auto c = face_fan(catalog::cube(3));
  CHECK(skeleton(c, 1).size() == 8);
  CHECK(skeleton(c, 2).size() == 8 + 12);
  CHECK(skeleton(c, 3).size() == 8 + 12 + 6);
}

TEST_CASE("refines") {
  const auto cube = face_fan(catalog::cube(3));
  const auto oct = face_fan(catalog::cross_polytope(3));
  CHECK(refines(cube, cube));
  CHECK_FALSE(refines(cube, oct));
  CHECK_FALSE(refines(oct, cube));
}

TEST_CASE("validate_delta_maximal") {
  const auto ex = catalog::blowup_example();
  const auto r = validate_delta_maximal(face_fan(ex), ex);
  CHECK(r.verdict);
  CHECK(r.violations.empty());

  const auto cross = catalog::cross_polytope(4);
  CHECK(validate_delta_maximal(face_fan(cross), cross).verdict);

  const auto cube = catalog::cube(3);
  const auto rc = validate_delta_maximal(face_fan(cube), cube);
  CHECK_FALSE(rc.verdict);
  bool missing = false, nonsimp = false;
  for (const auto& v : rc.violations) {
    missing |= v.kind == Violation::Kind::missing_ray;
    nonsimp |= v.kind == Violation::Kind::non_simplicial;
  }
  CHECK(missing);
  CHECK(nonsimp);

  // Face fan of the 3-cross-polytope judged against the 3-cube: the cone over
  // each octant contains the lattice point (1,1,1).
  const auto ro = validate_delta_maximal(face_fan(catalog::cross_polytope(3)), cube);
  bool interior = false;
  for (const auto& v : ro.violations) interior |= v.kind == Violation::Kind::interior_point;
  CHECK(interior);

  auto cones = face_fan(ex).max_cones();
  cones.pop_back();
  const auto rg = validate_delta_maximal(Fan(4, face_fan(ex).points(), cones), ex);
  CHECK_FALSE(rg.verdict);
  bool incomplete = false;
  for (const auto& v : rg.violations) incomplete |= v.kind == Violation::Kind::incomplete;
  CHECK(incomplete);
}
