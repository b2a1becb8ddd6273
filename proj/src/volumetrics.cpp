#include "hilbert/volumetrics.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "hilbert/metric.hpp"
#include "hilbert/parallel.hpp"

namespace hilbert {

namespace {

// Half-step rotation in 2-D: polytope integrands have near-singular spikes
// along vertex directions, and symmetric fixtures put vertices exactly on
// the unrotated nodes. Equal-weight shifted rules keep trigonometric
// exactness, so smooth bodies are unaffected.
DirectionGrid integration_grid(int dim, int m) {
  DirectionGrid g = direction_grid(dim, m);
  if (dim == 2) {
    double half = std::numbers::pi / m;
    double c = std::cos(half), s = std::sin(half);
    for (Vec& u : g.nodes) {
      double x0 = u[0], y0 = u[1];
      u[0] = c * x0 - s * y0;
      u[1] = s * x0 + c * y0;
    }
  }
  return g;
}

// Full radial integral along one unit direction, in the metric radial
// coordinate s on [0, r].
double radial_integral(const ConvexBody& body, const Vec& x, double r, const DensityModel& model,
                       const RadialRule& rule, const Vec& u) {
  int n = body.dim();
  ChordTimes c{body.exit_time_raw(x, u), body.exit_time_raw(x, -u)};
  double acc = 0.0;
  for (int l = 0; l < rule.order(); ++l) {
    double s = r * rule.nodes[l];
    double t = radial_reach_from_chord(c, s);
    if (t <= 0.0) continue;
    double speed = radial_speed_from_chord(c, s);
    Vec point = x + t * u;
    double h = density(body, point, model);
    acc += rule.weights[l] * r * h * std::pow(t, n - 1) * speed;
  }
  return acc;
}

// 4-point Gauss-Legendre on [a, b] of the radial integral over angle.
struct AngularIntegrand {
  const ConvexBody& body;
  const Vec& x;
  double r;
  const DensityModel& model;
  const RadialRule& rule;

  double at(double theta) const {
    Vec u(2);
    u << std::cos(theta), std::sin(theta);
    return radial_integral(body, x, r, model, rule, u);
  }

  double gauss7(double a, double b) const {
    static constexpr double node[3] = {0.4058451513773972, 0.7415311855993945,
                                       0.9491079123427585};
    static constexpr double weight[3] = {0.3818300505051189, 0.2797053914892767,
                                         0.1294849661688697};
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.4179591836734694 * at(mid);
    for (int i = 0; i < 3; ++i) {
      acc += weight[i] * (at(mid - half * node[i]) + at(mid + half * node[i]));
    }
    return acc * half;
  }

  // The angular integrand of a polytope is a sum of near-singular spikes
  // (width ~ e^{-2r}) toward the vertices plus a smooth background; a
  // fixed grid cannot see the spikes, so each base interval is refined
  // adaptively until its own estimate stabilises.
  double adaptive(double a, double b, double whole, int depth) const {
    double mid = 0.5 * (a + b);
    double left = gauss7(a, mid), right = gauss7(mid, b);
    double sum = left + right;
    if (depth <= 0 || std::abs(whole - sum) <= 1e-6 * std::abs(sum) + 1e-300) return sum;
    return adaptive(a, mid, left, depth - 1) + adaptive(mid, b, right, depth - 1);
  }
};

double ball_volume_pass(const ConvexBody& body, const Vec& x, double r, const DensityModel& model,
                        const DirectionGrid& grid, const RadialRule& rule, int workers) {
  int n = body.dim();
  std::vector<double> contributions(grid.size(), 0.0);
  if (n == 2) {
    // Base intervals from the (rotated) grid angles, refined adaptively.
    AngularIntegrand f{body, x, r, model, rule};
    int m = grid.size();
    parallel_for(m, workers, [&](int j) {
      double a = std::atan2(grid.nodes[j][1], grid.nodes[j][0]);
      double b = a + 2.0 * std::numbers::pi / m;
      contributions[j] = f.adaptive(a, b, f.gauss7(a, b), 52);
    });
  } else {
    parallel_for(grid.size(), workers, [&](int j) {
      contributions[j] =
          grid.weights[j] * radial_integral(body, x, r, model, rule, grid.nodes[j]);
    });
  }
  double total = 0.0;
  for (double c : contributions) total += c;  // fixed order: bit-stable across workers
  return total;
}

struct LinearFit {
  double slope;
  double intercept;
  double rms_residual;
};

LinearFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  size_t m = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = m * sxx - sx * sx;
  LinearFit fit{};
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / m;
  double ss = 0;
  for (size_t i = 0; i < m; ++i) {
    double e = ys[i] - fit.slope * xs[i] - fit.intercept;
    ss += e * e;
  }
  fit.rms_residual = std::sqrt(ss / m);
  return fit;
}

std::vector<GrowthRecord> window_records(const GrowthCurve& curve, Window w) {
  std::vector<GrowthRecord> out;
  for (const auto& rec : curve.records) {
    if (rec.r >= w.lo - 1e-12 && rec.r <= w.hi + 1e-12) out.push_back(rec);
  }
  if (out.size() < 4) throw WindowTooSmall();
  return out;
}

}  // namespace

VolumeConfig VolumeConfig::defaults(int dim) {
  VolumeConfig c;
  c.angular = dim == 3 ? 2048 : 64;
  c.radial = 32;
  return c;
}

ValueWithError ball_volume(const ConvexBody& body, const Vec& x, double r,
                           const DensityModel& model, const VolumeConfig& config) {
  if (!body.contains(x)) throw PointOutsideBody();
  if (r < 0) throw MalformedInput("negative metric radius");
  if (r > kMaxMetricRadius) throw RadiusTooLarge();
  int n = body.dim();
  if (n > 3) throw UnsupportedDimension();
  if (n == 1) return {2.0 * r, 0.0};  // isometric to the real line
  if (r == 0.0) return {0.0, 0.0};

  int m = config.angular > 0 ? config.angular : VolumeConfig::defaults(n).angular;
  // Volume-grade density profile: the grid-doubled Richardson pass controls
  // the integrated error, so the pointwise densities can be looser than for
  // direct density queries.
  DensityModel vm = model;
  vm.angular_tol = 1e-7;
  vm.angular_force = 0;
  double coarse = ball_volume_pass(body, x, r, vm, integration_grid(n, m),
                                   gauss_legendre(config.radial), config.workers);
  double fine = ball_volume_pass(body, x, r, vm.doubled(), integration_grid(n, 2 * m),
                                 gauss_legendre(2 * config.radial), config.workers);
  return {fine, richardson_error(coarse, fine)};
}

namespace {

double sphere_length_pass(const ConvexBody& body, const Vec& x, double r, int m) {
  std::vector<Vec> pts;
  pts.reserve(m);
  for (int j = 0; j < m; ++j) {
    double theta = 2.0 * std::numbers::pi * j / m;
    Vec u(2);
    u << std::cos(theta), std::sin(theta);
    pts.push_back(sphere_point(body, x, u, r));
  }
  double len = 0.0;
  for (int j = 0; j < m; ++j) {
    const Vec& a = pts[j];
    const Vec& b = pts[(j + 1) % m];
    len += finsler_norm(body, 0.5 * (a + b), b - a);
  }
  return len;
}

// Adaptive angular bisection of the polygonal scheme: the circle's length
// piles up in windows of width ~e^{-2r} around vertex directions of polytopal
// bodies, far beyond any uniform segment count.
struct CircleArc {
  const ConvexBody& body;
  const Vec& x;
  double r;

  Vec at(double theta) const {
    Vec u(2);
    u << std::cos(theta), std::sin(theta);
    return sphere_point(body, x, u, r);
  }

  double segment(const Vec& a, const Vec& b) const {
    if ((b - a).norm() < kUnitTol) return 0.0;  // collapsed by double rounding
    return finsler_norm(body, 0.5 * (a + b), b - a);
  }

  double refine(double ta, const Vec& pa, double tb, const Vec& pb, double whole, double atol,
                int depth) const {
    double tm = 0.5 * (ta + tb);
    Vec pm = at(tm);
    double left = segment(pa, pm);
    double right = segment(pm, pb);
    double sum = left + right;
    // atol stays fixed down the tree: halving it collides with the rounding
    // floor of the segment values inside vertex windows and the recursion
    // never terminates early there.
    if (depth <= 0 || std::abs(sum - whole) <= atol) return sum;
    return refine(ta, pa, tm, pm, left, atol, depth - 1) +
           refine(tm, pm, tb, pb, right, atol, depth - 1);
  }
};

double sphere_length_adaptive(const ConvexBody& body, const Vec& x, double r, int base) {
  CircleArc arc{body, x, r};
  double step = 2.0 * std::numbers::pi / base;
  std::vector<Vec> pts;
  pts.reserve(base);
  for (int j = 0; j < base; ++j) pts.push_back(arc.at(j * step));
  std::vector<double> coarse(base);
  double total = 0.0;
  for (int j = 0; j < base; ++j) {
    coarse[j] = arc.segment(pts[j], pts[(j + 1) % base]);
    total += coarse[j];
  }
  double atol = 1e-9 * std::max(total, 2.0 * std::numbers::pi * r) / base;
  double len = 0.0;
  for (int j = 0; j < base; ++j) {
    len += arc.refine(j * step, pts[j], (j + 1) * step, pts[(j + 1) % base], coarse[j], atol, 48);
  }
  return len;
}

}  // namespace

ValueWithError sphere_length_2d(const ConvexBody& body, const Vec& x, double r, int m) {
  if (body.dim() != 2) throw UnsupportedDimension("sphere length is 2-D only");
  if (!body.contains(x)) throw PointOutsideBody();
  if (r > kMaxMetricRadius) throw RadiusTooLarge();
  if (m <= 0) {
    double coarse = sphere_length_adaptive(body, x, r, 64);
    double fine = sphere_length_adaptive(body, x, r, 128);
    return {fine, richardson_error(coarse, fine)};
  }
  double coarse = sphere_length_pass(body, x, r, m);
  double fine = sphere_length_pass(body, x, r, 2 * m);
  return {fine, richardson_error(coarse, fine)};
}

GrowthCurve growth_curve(const ConvexBody& body, const Vec& x, const std::vector<double>& radii,
                         const DensityModel& model, const VolumeConfig& config,
                         const std::string& body_id) {
  if (radii.empty()) throw MalformedInput("empty radii list");
  for (size_t i = 1; i < radii.size(); ++i) {
    if (radii[i] <= radii[i - 1]) throw MalformedInput("radii must be strictly increasing");
  }
  GrowthCurve curve;
  curve.body_id = body_id;
  curve.center = x;
  curve.kind = model.kind;
  for (double r : radii) {
    auto v = ball_volume(body, x, r, model, config);
    if (!curve.records.empty() && v.value <= curve.records.back().volume) {
      throw MonotonicityViolation();
    }
    curve.records.push_back({r, v.value, v.err});
  }
  return curve;
}

Window default_window(const GrowthCurve& curve) {
  double lo = curve.records.front().r;
  double hi = curve.records.back().r;
  return {0.5 * (lo + hi), hi};
}

EstimateReport asvol_estimate(const GrowthCurve& curve, int n, Window window,
                              double slope_threshold) {
  auto recs = window_records(curve, window);
  std::vector<double> rs, ys;
  for (const auto& rec : recs) {
    rs.push_back(rec.r);
    ys.push_back(rec.volume / std::pow(rec.r, n));
  }
  double mean = 0;
  for (double y : ys) mean += y;
  mean /= static_cast<double>(ys.size());
  LinearFit fit = least_squares(rs, ys);
  double normalized_slope = fit.slope * (window.hi - window.lo) / mean;
  EstimateReport rep;
  rep.kind = EstimateKind::Asvol;
  rep.value = mean;
  rep.window_lo = window.lo;
  rep.window_hi = window.hi;
  rep.residual = fit.rms_residual;
  rep.verdict = std::abs(normalized_slope) < slope_threshold ? "finite" : "diverging";
  return rep;
}

EstimateReport entropy_estimate(const GrowthCurve& curve, Window window) {
  auto recs = window_records(curve, window);
  std::vector<double> rs, ys;
  for (const auto& rec : recs) {
    if (rec.volume <= 0) throw NonpositiveVolume();
    rs.push_back(rec.r);
    ys.push_back(std::log(rec.volume));
  }
  LinearFit fit = least_squares(rs, ys);
  EstimateReport rep;
  rep.kind = EstimateKind::Entropy;
  rep.value = fit.slope;
  rep.window_lo = window.lo;
  rep.window_hi = window.hi;
  rep.residual = fit.rms_residual;
  rep.verdict = fit.slope > 0.3 ? "exponential" : "subexponential";
  return rep;
}

EstimateReport polent_estimate(const GrowthCurve& curve, Window window) {
  auto recs = window_records(curve, window);
  std::vector<double> rs, ys;
  for (const auto& rec : recs) {
    if (rec.volume <= 0) throw NonpositiveVolume();
    rs.push_back(std::log(rec.r));
    ys.push_back(std::log(rec.volume));
  }
  LinearFit fit = least_squares(rs, ys);
  EstimateReport rep;
  rep.kind = EstimateKind::PolEnt;
  rep.value = fit.slope;
  rep.window_lo = window.lo;
  rep.window_hi = window.hi;
  rep.residual = fit.rms_residual;
  rep.verdict = "ok";
  return rep;
}

GrowthClass classify_growth(const GrowthCurve& curve, int n, Window window,
                            const ClassifyThresholds& thresholds) {
  auto pol = polent_estimate(curve, window);
  auto ent = entropy_estimate(curve, window);
  auto asv = asvol_estimate(curve, n, window, thresholds.asvol_slope);
  // Strict comparisons throughout: exact threshold ties stay Undetermined.
  if (pol.value > n + thresholds.polent_super || ent.value > thresholds.entropy_super) {
    return GrowthClass::SuperPolynomial;
  }
  if (std::abs(pol.value - n) < thresholds.polent_band && asv.verdict == "finite") {
    return GrowthClass::PolytopeLike;
  }
  return GrowthClass::Undetermined;
}

std::string to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::PolytopeLike:
      return "PolytopeLike";
    case GrowthClass::SuperPolynomial:
      return "SuperPolynomial";
    default:
      return "Undetermined";
  }
}

std::string to_string(EstimateKind k) {
  switch (k) {
    case EstimateKind::Asvol:
      return "asvol";
    case EstimateKind::Entropy:
      return "entropy";
    default:
      return "polent";
  }
}

std::vector<CoareaRecord> coarea_ratio(const ConvexBody& body, const Vec& x,
                                       const std::vector<double>& radii,
                                       const DensityModel& model, const VolumeConfig& config,
                                       int sphere_segments) {
  if (body.dim() != 2) throw UnsupportedDimension("coarea scan is 2-D only");
  // Centered differences with a local step: the curve's own spacing is too
  // coarse on exponential-growth bodies (step 1 already inflates dV/dr by
  // sinh(1)/1 ~ 1.18 on the disk).
  std::vector<CoareaRecord> out;
  for (double r : radii) {
    double h = std::min(0.1, 0.5 * r);
    double lo = ball_volume(body, x, r - h, model, config).value;
    double hi = ball_volume(body, x, r + h, model, config).value;
    double dv = (hi - lo) / (2.0 * h);
    double area = sphere_length_2d(body, x, r, sphere_segments).value;
    out.push_back({r, area / dv});
  }
  return out;
}

std::string curve_to_csv(const GrowthCurve& curve) {
  std::string out = "r,volume,err\n";
  char buf[128];
  for (const auto& rec : curve.records) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", rec.r, rec.volume, rec.err);
    out += buf;
  }
  return out;
}

GrowthCurve curve_from_csv(const std::string& text) {
  GrowthCurve curve;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("r,", 0) == 0) continue;  // header
    }
    GrowthRecord rec{};
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &rec.r, &rec.volume, &rec.err) != 3) {
      throw MalformedInput("bad CSV row: " + line);
    }
    curve.records.push_back(rec);
  }
  if (curve.records.empty()) throw MalformedInput("empty curve CSV");
  return curve;
}

}  // namespace hilbert
