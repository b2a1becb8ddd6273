// Acceptance gate: one line per criterion, PASS/FAIL, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "golden.hpp"
#include "hilbert/bodies.hpp"
#include "hilbert/body_io.hpp"
#include "hilbert/experiments.hpp"
#include "hilbert/measures.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/projective.hpp"
#include "hilbert/rng.hpp"
#include "hilbert/volumetrics.hpp"

using namespace hilbert;
namespace nb = std::numbers;

namespace {

int failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail = "") {
  std::printf("criterion %d [%s]: %s%s%s\n", idx, what, ok ? "PASS" : "FAIL",
              detail.empty() ? "" : " — ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

GrowthCurve curve_for(const ConvexBody& body, const Vec& x, const std::vector<double>& radii) {
  VolumeConfig config;
  return growth_curve(body, x, radii, DensityModel::defaults(DensityKind::Busemann, body.dim()),
                      config);
}

void criterion1() {
  auto iv = make_interval();
  auto model = DensityModel::defaults(DensityKind::Busemann, 1);
  VolumeConfig config;
  bool ok = true;
  for (double r : {0.5, 5.0, 50.0}) {
    auto v = ball_volume(*iv, Vec::Zero(1), r, model, config);
    ok = ok && v.value == 2.0 * r && v.err == 0.0;
  }
  report(1, "1-D exactness", ok);
}

void criterion2() {
  auto disk = make_unit_disk();
  auto model = DensityModel::defaults(DensityKind::Busemann, 2);
  VolumeConfig config;
  bool ok = true;
  char detail[160] = "";
  for (double r : {0.5, 1.0, 2.0, 4.0, 6.0, 8.0}) {
    double vol = ball_volume(*disk, Vec::Zero(2), r, model, config).value;
    double vol_exact = 2 * nb::pi * (std::cosh(r) - 1.0);
    double len = sphere_length_2d(*disk, Vec::Zero(2), r).value;
    double len_exact = 2 * nb::pi * std::sinh(r);
    double ev = std::abs(vol / vol_exact - 1.0);
    double el = std::abs(len / len_exact - 1.0);
    if (ev > 0.005 || el > 0.01) {
      ok = false;
      std::snprintf(detail, sizeof detail, "r=%g vol rel %.2e len rel %.2e", r, ev, el);
    }
  }
  report(2, "Klein-model oracle", ok, detail);
}

void criterion3() {
  auto tri = make_triangle();
  Vec c = vec2(1.0 / 3, 1.0 / 3);
  auto curve = curve_for(*tri, c, {4, 5, 6, 7, 8, 9, 10, 11, 12});
  bool ok = true;
  double lo = 1e300, hi = 0;
  for (const auto& rec : curve.records) {
    double ratio = rec.volume / (rec.r * rec.r);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    if (rec.r == 6.0 || rec.r == 10.0) ok = ok && std::abs(ratio / nb::pi - 1.0) <= 0.03;
  }
  ok = ok && hi / lo <= 1.05;
  char detail[96];
  std::snprintf(detail, sizeof detail, "ratio range [%.4f, %.4f], pi=%.4f", lo, hi, nb::pi);
  report(3, "simplex flat ratio", ok, detail);
}

void criterion4() {
  Window w{6, 12};
  std::vector<double> radii = {1, 2, 4, 6, 8, 10, 12};
  bool ok = true;
  std::string detail;

  auto check = [&](const ConvexBody& body, const Vec& x, GrowthClass want, const char* name) {
    auto curve = curve_for(body, x, radii);
    auto got = classify_growth(curve, 2, w);
    if (got != want) {
      ok = false;
      detail += std::string(name) + "->" + to_string(got) + " ";
    }
  };
  check(*make_triangle(), vec2(1.0 / 3, 1.0 / 3), GrowthClass::PolytopeLike, "triangle");
  check(*make_square01(), vec2(0.5, 0.5), GrowthClass::PolytopeLike, "square");
  check(*make_quadrant(), vec2(1, 1), GrowthClass::PolytopeLike, "quadrant");
  check(*make_unit_disk(), Vec::Zero(2), GrowthClass::SuperPolynomial, "disk");
  check(*make_ellipse(2.0, 1.0), Vec::Zero(2), GrowthClass::SuperPolynomial, "ellipse");
  LpBall lp4(Vec::Zero(2), 1.0, 4.0);
  check(lp4, Vec::Zero(2), GrowthClass::SuperPolynomial, "lp4");
  report(4, "polytope classification", ok, detail);
}

void criterion5() {
  auto disk = make_unit_disk();
  auto dcurve = curve_for(*disk, Vec::Zero(2), {1, 2, 3, 4, 5, 6, 7, 8});
  double ent = entropy_estimate(dcurve, {4, 8}).value;

  auto sq = make_square01();
  auto scurve = curve_for(*sq, vec2(0.5, 0.5), {1, 2, 3, 4, 6, 8, 10, 12});
  double pol = polent_estimate(scurve, {6, 12}).value;

  bool ok = ent >= 0.85 && ent <= 1.15 && pol >= 1.85 && pol <= 2.15;
  char detail[96];
  std::snprintf(detail, sizeof detail, "disk entropy %.4f, square polent %.4f", ent, pol);
  report(5, "entropy/polent fits", ok, detail);
}

void criterion6() {
  PackingConfig config;
  config.body = make_unit_disk();
  config.center = Vec::Zero(2);
  config.boundary_points = boundary_points_smooth(*config.body, config.center, 16);
  config.radius = 8.0;
  config.model = DensityModel::defaults(DensityKind::Busemann, 2);

  double sep = separation_scan(config);
  auto check = packing_check(config);
  auto bound = packing_volume_bound(config);
  bool ok = sep > 8.0 && check.r_ok && check.disjoint && check.included && bound.holds;
  char detail[96];
  std::snprintf(detail, sizeof detail, "separation %.3f, 16*Vol(2)=%.2f <= Vol(8)=%.2f", sep,
                bound.lhs, bound.rhs);
  report(6, "packing suite", ok, detail);
}

void criterion7() {
  std::vector<BodyPtr> bodies = {make_interval(), make_unit_disk(), make_ellipse(2.0, 1.0),
                                 make_square01(), make_triangle(),  make_quadrant(),
                                 make_unit_ball3(), make_cube01()};
  bool ok = true;
  std::string detail;

  {  // metric axioms, 1e-10
    Rng rng(1001);
    for (int trial = 0; trial < 1000 && ok; ++trial) {
      const ConvexBody& body = *bodies[trial % bodies.size()];
      Vec p = rng.interior_point(body), q = rng.interior_point(body),
          m = rng.interior_point(body);
      double dpq = hilbert_distance(body, p, q);
      double detour = hilbert_distance(body, p, m) + hilbert_distance(body, m, q);
      if (dpq < 0.0 || std::abs(dpq - hilbert_distance(body, q, p)) > 1e-10 * (1 + dpq) ||
          dpq > detour + 1e-10 * (1 + detour)) {
        ok = false;
        detail = "metric axioms";
      }
    }
  }
  {  // projective invariance, 1e-7
    Rng rng(1002);
    auto tri = make_triangle();
    auto map = triangle_to_quadrant_map();
    auto image = apply_projective(map, tri);
    for (int trial = 0; trial < 1000 && ok; ++trial) {
      Vec p = rng.interior_point(*tri, 2.5), q = rng.interior_point(*tri, 2.5);
      double d0 = hilbert_distance(*tri, p, q);
      double d1 = hilbert_distance(*image, map.apply(p), map.apply(q));
      if (std::abs(d0 - d1) > 1e-7 * (1 + d0)) {
        ok = false;
        detail = "projective invariance";
      }
    }
  }
  {  // inclusion monotonicity of distances and densities, 1e-6
    Rng rng(1003);
    auto disk = make_unit_disk();
    auto big = make_ellipse(1.5, 1.2);
    auto grid = circle_grid(512);
    for (int trial = 0; trial < 1000 && ok; ++trial) {
      Vec p = rng.interior_point(*disk, 2.0), q = rng.interior_point(*disk, 2.0);
      if (hilbert_distance(*big, p, q) > hilbert_distance(*disk, p, q) + 1e-6 ||
          busemann_density(*big, p, grid) > busemann_density(*disk, p, grid) * (1 + 1e-6)) {
        ok = false;
        detail = "inclusion monotonicity";
      }
    }
  }
  {  // Finsler homogeneity/convexity, 1e-10
    Rng rng(1004);
    for (int trial = 0; trial < 1000 && ok; ++trial) {
      const ConvexBody& body = *bodies[trial % bodies.size()];
      Vec p = rng.interior_point(body);
      Vec v = rng.direction(body.dim()), w = rng.direction(body.dim());
      double lam = 0.1 + 5.0 * rng.uniform01();
      double fv = finsler_norm(body, p, v);
      if (std::abs(finsler_norm(body, p, lam * v) - lam * fv) > 1e-10 * (1 + lam * fv) ||
          finsler_norm(body, p, v + w) > fv + finsler_norm(body, p, w) + 1e-10) {
        ok = false;
        detail = "homogeneity/convexity";
      }
    }
  }
  {  // radial round trip, 1e-9
    Rng rng(1005);
    for (int trial = 0; trial < 1000 && ok; ++trial) {
      const ConvexBody& body = *bodies[trial % bodies.size()];
      Vec x = rng.interior_point(body);
      Vec u = rng.direction(body.dim());
      double r = 0.1 + 5.0 * rng.uniform01();
      Vec y = sphere_point(body, x, u, r);
      if (std::abs(hilbert_distance(body, x, y) - r) > 1e-9 * (1 + r)) {
        ok = false;
        detail = "radial round trip";
      }
    }
  }
  report(7, "property suites", ok, detail);
}

void criterion8() {
  auto disk = make_unit_disk();
  Rng rng(42);
  std::vector<Vec> samples;
  for (int i = 0; i < 100; ++i) samples.push_back(rng.interior_point(*disk));
  auto scan = density_ratio_scan(*disk, samples);
  bool ok = scan.min_ratio >= 0.99 && scan.max_ratio <= 1.01;

  auto sq = make_square01();
  Rng rng2(42);
  std::vector<Vec> sq_samples;
  for (int i = 0; i < 100; ++i) sq_samples.push_back(rng2.interior_point(*sq));
  auto sq_scan = density_ratio_scan(*sq, sq_samples);
  if (auto g = load_golden("square_ratio_scan")) {
    ok = ok && std::abs(sq_scan.min_ratio / (*g)["min"].get<double>() - 1.0) <= 0.01 &&
         std::abs(sq_scan.max_ratio / (*g)["max"].get<double>() - 1.0) <= 0.01;
  } else {
    save_golden("square_ratio_scan", {{"min", sq_scan.min_ratio}, {"max", sq_scan.max_ratio}});
    ok = ok && sq_scan.min_ratio > 0.0 && std::isfinite(sq_scan.max_ratio);
  }
  char detail[128];
  std::snprintf(detail, sizeof detail, "disk [%.6f, %.6f], square [%.4f, %.4f]", scan.min_ratio,
                scan.max_ratio, sq_scan.min_ratio, sq_scan.max_ratio);
  report(8, "density comparison", ok, detail);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion9() {
  std::string fixture = std::string(FIXTURES_DIR) + "/square.json";
  bool ok = true;
  std::string first;
  for (int workers : {1, 4, 8}) {
    std::string out = "/tmp/acceptance_w" + std::to_string(workers) + ".csv";
    std::string cmd = std::string(CLI_PATH) + " growth --body " + fixture +
                      " --center 0.5,0.5 --radii 1:6:6 --grid 64 --workers " +
                      std::to_string(workers) + " --out " + out + " > /dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) ok = false;
    std::string text = slurp(out);
    if (workers == 1) {
      first = text;
    } else if (text != first) {
      ok = false;
    }
  }
  ok = ok && !first.empty();
  report(9, "determinism across workers", ok);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
  return failures == 0 ? 0 : 1;
}
