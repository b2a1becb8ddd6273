#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "hilbert/bodies.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/projective.hpp"
#include "hilbert/rng.hpp"

using namespace hilbert;

namespace {

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

std::vector<BodyPtr> shipped_bodies() {
  return {make_interval(), make_unit_disk(), make_ellipse(2.0, 1.0), make_square01(),
          make_triangle(), make_quadrant(),  make_unit_ball3(),      make_cube01()};
}

}  // namespace

TEST_CASE("distance: closed-form spot checks") {
  auto disk = make_unit_disk();
  CHECK(hilbert_distance(*disk, Vec::Zero(2), vec2(0.5, 0)) ==
        doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));

  // Klein model: d(0, tanh(r) e1) = r. Rounding tanh(r) toward 1 costs
  // ~e^{2r} ulps of boundary gap, so the large-radius check is looser.
  for (double r : {0.1, 1.0, 3.0, 5.0}) {
    CHECK(hilbert_distance(*disk, Vec::Zero(2), vec2(std::tanh(r), 0)) ==
          doctest::Approx(r).epsilon(1e-12));
  }
  CHECK(hilbert_distance(*disk, Vec::Zero(2), vec2(std::tanh(10.0), 0)) ==
        doctest::Approx(10.0).epsilon(1e-7));

  // Quadrant: axis-aligned moves are logarithmic coordinates.
  auto quad = make_quadrant();
  CHECK(hilbert_distance(*quad, vec2(1, 1), vec2(std::exp(1.0), 1)) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("1-D distances are additive along the interval") {
  auto iv = make_interval();
  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    double a = 2.0 * rng.uniform01() - 1.0;
    double b = 2.0 * rng.uniform01() - 1.0;
    double c = 2.0 * rng.uniform01() - 1.0;
    if (a > c) std::swap(a, c);
    if (b < a || b > c) continue;
    Vec pa(1), pb(1), pc(1);
    pa << a;
    pb << b;
    pc << c;
    double lhs = hilbert_distance(*iv, pa, pc);
    double rhs = hilbert_distance(*iv, pa, pb) + hilbert_distance(*iv, pb, pc);
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + lhs));
  }
}

TEST_CASE("metric axioms on all shipped bodies") {
  Rng rng(17);
  auto bodies = shipped_bodies();
  for (int trial = 0; trial < 1000; ++trial) {
    const ConvexBody& body = *bodies[trial % bodies.size()];
    Vec p = rng.interior_point(body);
    Vec q = rng.interior_point(body);
    Vec m = rng.interior_point(body);
    double dpq = hilbert_distance(body, p, q);
    double dqp = hilbert_distance(body, q, p);
    CHECK(dpq >= 0.0);
    CHECK(std::abs(dpq - dqp) < 1e-10 * (1.0 + dpq));
    CHECK(hilbert_distance(body, p, p) == 0.0);
    if ((p - q).norm() > 1e-9) CHECK(dpq > 0.0);
    double detour = hilbert_distance(body, p, m) + hilbert_distance(body, m, q);
    CHECK(dpq <= detour + 1e-10 * (1.0 + detour));
  }
}

TEST_CASE("projective invariance of the distance") {
  Rng rng(29);
  Mat lin(2, 2);
  lin << 2.0, 0.5, -0.25, 1.5;
  auto affine = ProjectiveMap::affine(lin, vec2(0.3, -0.2));
  Mat proj(3, 3);
  proj << 1.0, 0.2, 0.0, -0.1, 1.1, 0.0, 0.05, 0.1, 1.0;
  auto tilt = ProjectiveMap(proj);

  for (const auto& body : {make_unit_disk(), make_triangle(), make_square01()}) {
    for (const auto* map : {&affine, &tilt}) {
      auto image = apply_projective(*map, body);
      for (int trial = 0; trial < 170; ++trial) {
        Vec p = rng.interior_point(*body, 2.5);
        Vec q = rng.interior_point(*body, 2.5);
        double d0 = hilbert_distance(*body, p, q);
        double d1 = hilbert_distance(*image, map->apply(p), map->apply(q));
        CHECK(std::abs(d0 - d1) < 1e-7 * (1.0 + d0));
      }
    }
  }
}

TEST_CASE("inclusion monotonicity: bigger body, smaller distances") {
  Rng rng(31);
  auto disk = make_unit_disk();
  auto big = make_ellipse(1.5, 1.2);  // contains the unit disk
  auto tri = make_triangle();
  auto quad = make_quadrant();  // contains the triangle
  for (int trial = 0; trial < 1000; ++trial) {
    Vec p = rng.interior_point(*disk, 2.0);
    Vec q = rng.interior_point(*disk, 2.0);
    CHECK(hilbert_distance(*big, p, q) <= hilbert_distance(*disk, p, q) + 1e-6);
    Vec s = rng.interior_point(*tri, 2.0);
    Vec t = rng.interior_point(*tri, 2.0);
    CHECK(hilbert_distance(*quad, s, t) <= hilbert_distance(*tri, s, t) + 1e-6);
  }
}

TEST_CASE("Finsler norm: homogeneity and convexity") {
  Rng rng(41);
  auto bodies = shipped_bodies();
  for (int trial = 0; trial < 1000; ++trial) {
    const ConvexBody& body = *bodies[trial % bodies.size()];
    Vec p = rng.interior_point(body);
    int n = body.dim();
    Vec v = rng.direction(n);
    Vec w = rng.direction(n);
    double lam = 0.1 + 5.0 * rng.uniform01();
    double fv = finsler_norm(body, p, v);
    CHECK(finsler_norm(body, p, lam * v) == doctest::Approx(lam * fv).epsilon(1e-10));
    CHECK(finsler_norm(body, p, -v) >= 0.0);
    double fsum = finsler_norm(body, p, v + w);
    CHECK(fsum <= fv + finsler_norm(body, p, w) + 1e-10);
  }
  CHECK(finsler_norm(*make_unit_disk(), Vec::Zero(2), Vec::Zero(2)) == 0.0);
}

TEST_CASE("Finsler norm matches the distance differential") {
  auto disk = make_unit_disk();
  // Klein model at the origin: F(0,v) = |v|.
  CHECK(finsler_norm(*disk, Vec::Zero(2), vec2(3, 4)) == doctest::Approx(5.0).epsilon(1e-12));
  double eps = 1e-6;
  Vec p = vec2(0.3, -0.2);
  Vec v = vec2(0.6, 0.8);
  double fd = hilbert_distance(*disk, p, p + eps * v) / eps;
  CHECK(finsler_norm(*disk, p, v) == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("radial reach round-trips the distance") {
  Rng rng(53);
  auto bodies = shipped_bodies();
  for (double r : {0.1, 1.0, 5.0}) {
    for (int trial = 0; trial < 333; ++trial) {
      const ConvexBody& body = *bodies[trial % bodies.size()];
      Vec x = rng.interior_point(body);
      Vec u = rng.direction(body.dim());
      Vec y = sphere_point(body, x, u, r);
      CHECK(std::abs(hilbert_distance(body, x, y) - r) < 1e-9 * (1.0 + r));
    }
  }
  // Large radii are only representable along chords whose forward endpoint
  // is at infinity; on bounded chords t+ - t underflows past r ~ 18.
  auto quad = make_quadrant();
  Rng rng2(54);
  for (int trial = 0; trial < 100; ++trial) {
    Vec x = rng2.interior_point(*quad);
    Vec u = rng2.direction(2).cwiseAbs();  // recession direction
    Vec y = sphere_point(*quad, x, u, 20.0);
    CHECK(std::abs(hilbert_distance(*quad, x, y) - 20.0) < 1e-9 * 21.0);
  }
}

TEST_CASE("radius cap and radial speed") {
  auto disk = make_unit_disk();
  CHECK_THROWS_AS(sphere_point(*disk, Vec::Zero(2), vec2(1, 0), 400.0), RadiusTooLarge);
  // Klein model from the center: t(r) = tanh r, dt/dr = sech^2 r.
  auto c = chord(*disk, Vec::Zero(2), vec2(1, 0));
  for (double r : {0.3, 1.0, 2.5}) {
    CHECK(radial_reach_from_chord(c, r) == doctest::Approx(std::tanh(r)).epsilon(1e-12));
    double sech = 1.0 / std::cosh(r);
    CHECK(radial_speed_from_chord(c, r) == doctest::Approx(sech * sech).epsilon(1e-10));
  }
}
