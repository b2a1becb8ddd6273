#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <fstream>

#include "doctest.h"
#include "hilbert/bodies.hpp"
#include "hilbert/body_io.hpp"
#include "hilbert/projective.hpp"
#include "hilbert/rng.hpp"

using namespace hilbert;

namespace {

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

// Independent oracle: bisect contains() down to absolute tolerance.
double bisect_exit(const ConvexBody& body, const Vec& p, const Vec& u, double hi) {
  double lo = 0.0;
  while (body.contains(p + hi * u)) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * (1.0 + hi); ++i) {
    double mid = 0.5 * (lo + hi);
    (body.contains(p + mid * u) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("exit times: closed-form spot checks") {
  auto disk = make_unit_disk();
  auto t = exit_time(*disk, Vec::Zero(2), vec2(1, 0));
  REQUIRE(t.is_finite());
  CHECK(t.value() == doctest::Approx(1.0).epsilon(1e-14));

  auto sq = make_square01();
  auto ts = exit_time(*sq, vec2(0.25, 0.5), vec2(1, 0));
  REQUIRE(ts.is_finite());
  CHECK(ts.value() == doctest::Approx(0.75).epsilon(1e-14));

  auto quad = make_quadrant();
  auto tq = exit_time(*quad, vec2(1, 1), vec2(1, 0).normalized());
  CHECK(tq.is_infinite());
  auto tq2 = exit_time(*quad, vec2(1, 1), vec2(-1, 0));
  REQUIRE(tq2.is_finite());
  CHECK(tq2.value() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("chord combines both rays") {
  auto disk = make_unit_disk();
  auto c = chord(*disk, vec2(0.5, 0), vec2(1, 0));
  REQUIRE(c.t_plus.is_finite());
  REQUIRE(c.t_minus.is_finite());
  CHECK(c.t_plus.value() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c.t_minus.value() == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("oracle front ends reject bad queries") {
  auto disk = make_unit_disk();
  CHECK_THROWS_AS(exit_time(*disk, vec2(2, 0), vec2(1, 0)), PointOutsideBody);
  CHECK_THROWS_AS(exit_time(*disk, Vec::Zero(2), Vec::Zero(2)), ZeroDirection);
}

TEST_CASE("properness: slab is rejected with a witness direction") {
  std::vector<HalfSpace> hs = {{vec2(0, 1), 1.0}, {vec2(0, -1), 1.0}};
  CHECK_THROWS_AS((HPolytope(hs)), ImproperBody);

  auto quad = make_quadrant();
  CHECK_NOTHROW(validate_proper(*quad));
  auto disk = make_unit_disk();
  CHECK_NOTHROW(validate_proper(*disk));
}

TEST_CASE("polytope exit agrees with membership bisection") {
  Rng rng(7);
  auto tri = make_triangle();
  auto sq = make_square01();
  for (int trial = 0; trial < 1000; ++trial) {
    const ConvexBody& body = (trial % 2) ? *tri : *sq;
    Vec p = rng.interior_point(body);
    Vec u = rng.direction(2);
    auto t = exit_time(body, p, u);
    REQUIRE(t.is_finite());
    CHECK(std::abs(t.value() - bisect_exit(body, p, u, 0.5)) < 1e-10);
  }
}

TEST_CASE("curved-body exits agree with membership bisection") {
  Rng rng(8);
  auto ell = make_ellipse(2.0, 1.0);
  LpBall lp(Vec::Zero(2), 1.0, 4.0);
  for (int trial = 0; trial < 500; ++trial) {
    const ConvexBody& body = (trial % 2) ? *ell : static_cast<const ConvexBody&>(lp);
    Vec p = rng.interior_point(body);
    Vec u = rng.direction(2);
    auto t = exit_time(body, p, u);
    REQUIRE(t.is_finite());
    CHECK(std::abs(t.value() - bisect_exit(body, p, u, 0.5)) < 1e-9);
  }
}

TEST_CASE("lp-ball pnorm and exponent fast path") {
  LpBall lp(Vec::Zero(2), 1.0, 4.0);
  CHECK(lp.pnorm(vec2(3, 4)) == doctest::Approx(std::pow(81.0 + 256.0, 0.25)).epsilon(1e-14));
  CHECK(lp.contains(vec2(0.8, 0.8)));         // inside l^4, outside l^2
  CHECK_FALSE(lp.contains(vec2(0.95, 0.95)));
  auto t = exit_time(lp, Vec::Zero(2), vec2(1, 0));
  REQUIRE(t.is_finite());
  CHECK(t.value() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("2-D vertex enumeration recovers the square corners") {
  auto sq = std::dynamic_pointer_cast<const HPolytope>(make_square01());
  REQUIRE(sq);
  auto verts = polytope_vertices_2d(*sq);
  REQUIRE(verts.size() == 4);
  double sx = 0, sy = 0;
  for (const auto& v : verts) {
    sx += v(0);
    sy += v(1);
    CHECK(std::abs(v(0) - std::round(v(0))) < 1e-12);
    CHECK(std::abs(v(1) - std::round(v(1))) < 1e-12);
  }
  CHECK(sx == doctest::Approx(2.0));
  CHECK(sy == doctest::Approx(2.0));
}

TEST_CASE("projective image routes the oracle through the inverse map") {
  auto tri = make_triangle();
  auto map = triangle_to_quadrant_map();
  auto img = apply_projective(map, tri);
  auto quad = make_quadrant();
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Vec p = rng.interior_point(*quad);
    Vec u = rng.direction(2);
    CHECK(img->contains(p));
    auto a = exit_time(*img, p, u);
    auto b = exit_time(*quad, p, u);
    REQUIRE(a.is_finite() == b.is_finite());
    if (a.is_finite()) {
      CHECK(a.value() == doctest::Approx(b.value()).epsilon(1e-9));
    }
  }
}

TEST_CASE("body JSON: all kinds load, malformed inputs throw") {
  auto disk = body_from_file(std::string(FIXTURES_DIR) + "/disk.json");
  CHECK(disk->dim() == 2);
  auto tri = body_from_json(R"({"kind":"vpolytope","vertices":[[0,0],[1,0],[0,1]]})");
  CHECK(tri->contains(vec2(0.25, 0.25)));
  auto lp = body_from_file(std::string(FIXTURES_DIR) + "/lp4.json");
  CHECK(lp->contains(vec2(0.8, 0.8)));
  auto ell = body_from_file(std::string(FIXTURES_DIR) + "/ellipse.json");
  CHECK(ell->contains(vec2(0.9, 0.0)));
  auto quad = body_from_json(R"({"kind":"quadrant","dim":2})");
  CHECK(quad->contains(vec2(5, 5)));

  CHECK_THROWS_AS(body_from_json("{"), MalformedInput);
  CHECK_THROWS_AS(body_from_json(R"({"kind":"nope"})"), MalformedInput);
  CHECK_THROWS_AS(body_from_json(R"({"kind":"lp_ball","center":[0,0]})"), MalformedInput);
  CHECK_THROWS_AS(body_from_file("/nonexistent/body.json"), MalformedInput);
  CHECK_THROWS_AS(body_from_file(std::string(FIXTURES_DIR) + "/slab.json"), ImproperBody);
}
