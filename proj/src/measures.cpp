#include "hilbert/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "hilbert/bodies.hpp"

namespace hilbert {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGoldenRatio = 0.6180339887498949;

double finsler_from_exits(const ExitTime& plus, const ExitTime& minus) {
  double f = 0.0;
  if (plus.is_finite()) f += 0.5 / plus.value();
  if (minus.is_finite()) f += 0.5 / minus.value();
  return f;
}

// F(p, u_i) for every grid node; one exit per node on antipodal grids.
std::vector<double> finsler_on_grid(const ConvexBody& body, const Vec& p,
                                    const DirectionGrid& grid) {
  int m = grid.size();
  std::vector<double> f(m);
  if (grid.antipodal) {
    std::vector<ExitTime> exits;
    exits.reserve(m);
    for (const Vec& u : grid.nodes) exits.push_back(body.exit_time_raw(p, u));
    for (int i = 0; i < m; ++i) f[i] = finsler_from_exits(exits[i], exits[grid.antipode(i)]);
  } else {
    for (int i = 0; i < m; ++i) {
      f[i] = finsler_from_exits(body.exit_time_raw(p, grid.nodes[i]),
                                body.exit_time_raw(p, -grid.nodes[i]));
    }
  }
  return f;
}

double finsler_unit(const ConvexBody& body, const Vec& p, const Vec& u) {
  return finsler_from_exits(body.exit_time_raw(p, u), body.exit_time_raw(p, -u));
}

// Golden-section maximizer on [lo, hi] down to bracket width tol.
template <typename F>
double golden_max(F&& f, double lo, double hi, double tol) {
  double x1 = hi - kGoldenRatio * (hi - lo);
  double x2 = lo + kGoldenRatio * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGoldenRatio * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGoldenRatio * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

double dual_objective(const ConvexBody& body, const Vec& p, const Vec& w, const Vec& u) {
  double f = finsler_unit(body, p, u);
  return w.dot(u) / f;
}

double dual_norm_impl(const ConvexBody& body, const Vec& p, const Vec& w,
                      const DirectionGrid& grid, const std::vector<double>& fvals, bool refine,
                      double tol) {
  if (w.norm() < 1e-300) return 0.0;
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.size(); ++i) {
    double v = w.dot(grid.nodes[i]) / fvals[i];
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (!refine || grid.dim == 1) return best_val;

  if (grid.dim == 2) {
    double theta = std::atan2(grid.nodes[best][1], grid.nodes[best][0]);
    double step = 2.0 * kPi / grid.size();
    auto g = [&](double t) {
      Vec u(2);
      u << std::cos(t), std::sin(t);
      return dual_objective(body, p, w, u);
    };
    return std::max(best_val, golden_max(g, theta - step, theta + step, tol));
  }

  // n = 3: alternating golden sweeps along two tangent great circles.
  Vec u0 = grid.nodes[best];
  double step = 2.0 * std::sqrt(4.0 * kPi / grid.size());
  double val = best_val;
  for (int sweep = 0; sweep < 4; ++sweep) {
    Vec ref = std::abs(u0[0]) < 0.9 ? Vec::Unit(3, 0) : Vec::Unit(3, 1);
    Vec e1 = (ref - ref.dot(u0) * u0).normalized();
    Vec e2(3);
    e2 << u0[1] * e1[2] - u0[2] * e1[1], u0[2] * e1[0] - u0[0] * e1[2],
        u0[0] * e1[1] - u0[1] * e1[0];
    for (const Vec& e : {e1, e2}) {
      auto g = [&](double t) { return dual_objective(body, p, w, std::cos(t) * u0 + std::sin(t) * e); };
      double lo = -step, hi = step, x1, x2, f1, f2;
      x1 = hi - kGoldenRatio * (hi - lo);
      x2 = lo + kGoldenRatio * (hi - lo);
      f1 = g(x1);
      f2 = g(x2);
      while (hi - lo > tol) {
        if (f1 < f2) {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + kGoldenRatio * (hi - lo);
          f2 = g(x2);
        } else {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - kGoldenRatio * (hi - lo);
          f1 = g(x1);
        }
      }
      double t_best = 0.5 * (lo + hi);
      double v = g(t_best);
      if (v > val) {
        val = v;
        u0 = (std::cos(t_best) * u0 + std::sin(t_best) * e).normalized();
      }
    }
    step *= 0.25;
  }
  return val;
}

// Adaptive Gauss-4 in angle.  The tangent unit ball of a point close to
// the boundary is a thin sliver whose angular mass sits in a window of
// width comparable to the distance ratio of the two chord halves; a fixed
// direction grid cannot resolve it, so each base interval is refined until
// its own estimate stabilises.
template <typename F>
double gauss7(F&& f, double a, double b) {
  static constexpr double node[3] = {0.4058451513773972, 0.7415311855993945,
                                     0.9491079123427585};
  static constexpr double weight[3] = {0.3818300505051189, 0.2797053914892767,
                                       0.1294849661688697};
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.4179591836734694 * f(mid);
  for (int i = 0; i < 3; ++i) {
    acc += weight[i] * (f(mid - half * node[i]) + f(mid + half * node[i]));
  }
  return acc * half;
}

template <typename F>
double adaptive_angular(F&& f, double a, double b, double whole, int depth, double tol,
                        int force) {
  double mid = 0.5 * (a + b);
  double left = gauss7(f, a, mid), right = gauss7(f, mid, b);
  double sum = left + right;
  if (!std::isfinite(sum)) return sum;
  // force levels are always refined: an integrand kink or spike sitting at an
  // interval edge can make whole and sum agree by accident at the first level.
  if (depth <= 0 || (force <= 0 && std::abs(whole - sum) <= tol * std::abs(sum) + 1e-300)) {
    return sum;
  }
  return adaptive_angular(f, a, mid, left, depth - 1, tol, force - 1) +
         adaptive_angular(f, mid, b, right, depth - 1, tol, force - 1);
}

template <typename F>
double adaptive_circle_integral(F&& f, int base, double tol, int force) {
  double acc = 0.0;
  for (int j = 0; j < base; ++j) {
    double a = 2.0 * kPi * (j + 0.5) / base;
    double b = a + 2.0 * kPi / base;
    acc += adaptive_angular(f, a, b, gauss7(f, a, b), 64, tol, force);
  }
  return acc;
}

// Exact tangent-ball area for a planar polytope.  With g_i = a_i / (b_i -
// a_i p), the reciprocal exit times are max_i (g_i v)_+ and max_i (-g_i v)_+,
// so F(p, .) is piecewise linear and beta(p) is the polygon
// {v : c v <= 1} over c in {g_i / 2, -g_i / 2, (g_i - g_j) / 2}.  Its area
// comes out of polar duality: vertices of beta pair up consecutive vertices
// of the convex hull of the constraint normals.
double polytope_tangent_area_2d(const HPolytope& body, const Vec& p) {
  const auto& hs = body.halfspaces();
  int m = static_cast<int>(hs.size());
  std::vector<Eigen::Vector2d> g(m), c;
  for (int i = 0; i < m; ++i) {
    double slack = hs[i].offset - hs[i].normal.dot(p);
    g[i] = Eigen::Vector2d(hs[i].normal[0], hs[i].normal[1]) / slack;
  }
  c.reserve(m * m + m);
  for (int i = 0; i < m; ++i) {
    c.push_back(0.5 * g[i]);
    c.push_back(-0.5 * g[i]);
    for (int j = 0; j < m; ++j) {
      if (j != i) c.push_back(0.5 * (g[i] - g[j]));
    }
  }
  std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  // Andrew monotone chain, strict turns only.
  std::vector<Eigen::Vector2d> hull;
  for (int pass = 0; pass < 2; ++pass) {
    size_t lower = hull.size();
    for (const auto& q : c) {
      while (hull.size() >= lower + 2 && cross(hull[hull.size() - 2], hull.back(), q) <= 0.0) {
        hull.pop_back();
      }
      hull.push_back(q);
    }
    hull.pop_back();
    std::reverse(c.begin(), c.end());
  }
  int k = static_cast<int>(hull.size());
  if (k < 3) return std::numeric_limits<double>::infinity();
  // beta is bounded iff the origin is strictly inside the hull.
  for (int l = 0; l < k; ++l) {
    if (cross(hull[l], hull[(l + 1) % k], Eigen::Vector2d::Zero()) <= 0.0) {
      return std::numeric_limits<double>::infinity();
    }
  }
  double area = 0.0;
  std::vector<Eigen::Vector2d> verts(k);
  for (int l = 0; l < k; ++l) {
    const auto& h1 = hull[l];
    const auto& h2 = hull[(l + 1) % k];
    double det = h1.x() * h2.y() - h1.y() * h2.x();
    verts[l] = Eigen::Vector2d(h2.y() - h1.y(), h1.x() - h2.x()) / det;
  }
  for (int l = 0; l < k; ++l) {
    const auto& v1 = verts[l];
    const auto& v2 = verts[(l + 1) % k];
    area += v1.x() * v2.y() - v1.y() * v2.x();
  }
  return 0.5 * area;
}

// Exact Busemann density for an ellipsoid: F(p, v)^2 is the quadratic form
// [ (v Q d)^2 + (v Q v)(1 - d Q d) ] / (1 - d Q d)^2 with d = p - center,
// so beta(p) is an ellipsoid and h = sqrt(det M).
double ellipsoid_density(const Ellipsoid& body, const Vec& p) {
  Vec d = p - body.center();
  const Mat& q = body.shape();
  double slack = 1.0 - d.dot(q * d);
  Vec qd = q * d;
  Mat m = (qd * qd.transpose() + slack * q) / (slack * slack);
  return std::sqrt(m.determinant());
}

// Leb(beta(p)) = (1/2) closed integral of F(p, u(theta))^{-2} for n = 2.
// Close to the boundary beta is a thin sliver; an affine substitution
// aligned with its long axis (located by golden-section minimisation of F
// over angle) keeps the adaptive refinement shallow.
double tangent_area_2d(const ConvexBody& body, const Vec& p, int base, double tol,
                       int force) {
  auto f_at = [&](double theta) {
    Vec u(2);
    u << std::cos(theta), std::sin(theta);
    return finsler_unit(body, p, u);
  };
  constexpr int probe = 64;
  std::vector<ExitTime> exits;
  exits.reserve(probe);
  for (int i = 0; i < probe; ++i) {
    Vec u(2);
    u << std::cos(2.0 * kPi * i / probe), std::sin(2.0 * kPi * i / probe);
    exits.push_back(body.exit_time_raw(p, u));
  }
  double best_theta = 0.0, best_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i < probe; ++i) {
    double f = finsler_from_exits(exits[i], exits[(i + probe / 2) % probe]);
    if (f < best_f) {
      best_f = f;
      best_theta = 2.0 * kPi * i / probe;
    }
  }
  double step = 2.0 * kPi / probe;
  double f_min = -golden_max([&](double t) { return -f_at(t); }, best_theta - step,
                             best_theta + step, 1e-12);
  f_min = std::min(f_min, best_f);
  double f_perp = f_at(best_theta + 0.5 * kPi);
  if (!(f_min > 0.0) || !(f_perp > 0.0)) return std::numeric_limits<double>::infinity();
  Eigen::Matrix2d t_map;
  t_map.col(0) = Eigen::Vector2d(std::cos(best_theta), std::sin(best_theta)) / f_min;
  t_map.col(1) = Eigen::Vector2d(-std::sin(best_theta), std::cos(best_theta)) / f_perp;
  auto f = [&](double theta) {
    Eigen::Vector2d w = t_map * Eigen::Vector2d(std::cos(theta), std::sin(theta));
    Vec u(2);
    u << w.x(), w.y();
    double fv = finsler_unit(body, p, u);
    return fv > 0.0 ? 1.0 / (fv * fv) : std::numeric_limits<double>::infinity();
  };
  return 0.5 * adaptive_circle_integral(f, base, tol, force) / (f_min * f_perp);
}

// F*(p, w(phi)) for n = 2: coarse angular sweep plus golden refinement.
double dual_support_2d(const ConvexBody& body, const Vec& p, double phi, int coarse, double tol) {
  Vec w(2);
  w << std::cos(phi), std::sin(phi);
  auto g = [&](double theta) {
    Vec u(2);
    u << std::cos(theta), std::sin(theta);
    return dual_objective(body, p, w, u);
  };
  double best_val = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  for (int i = 0; i < coarse; ++i) {
    double theta = 2.0 * kPi * i / coarse;
    double v = g(theta);
    if (v > best_val) {
      best_val = v;
      best_theta = theta;
    }
  }
  double step = 2.0 * kPi / coarse;
  return std::max(best_val, golden_max(g, best_theta - step, best_theta + step, tol));
}

// Leb(beta*(p)) = (1/2) closed integral of F*(p, w(phi))^{-2} for n = 2.
double dual_area_2d(const ConvexBody& body, const Vec& p, int base, int coarse, double gold_tol,
                    double int_tol, int force) {
  auto f = [&](double phi) {
    double s = dual_support_2d(body, p, phi, coarse, gold_tol);
    return s > 0.0 ? 1.0 / (s * s) : std::numeric_limits<double>::infinity();
  };
  return 0.5 * adaptive_circle_integral(f, base, int_tol, force);
}

}  // namespace

double omega_n(int dim) {
  switch (dim) {
    case 1:
      return 2.0;
    case 2:
      return kPi;
    case 3:
      return 4.0 * kPi / 3.0;
    default:
      throw UnsupportedDimension();
  }
}

DensityModel DensityModel::defaults(DensityKind kind, int dim) {
  DensityModel m;
  m.kind = kind;
  m.grid = direction_grid(dim, dim == 3 ? 2048 : 512);
  return m;
}

DensityModel DensityModel::doubled() const {
  DensityModel m = *this;
  if (grid.dim > 1) m.grid = direction_grid(grid.dim, 2 * grid.size());
  return m;
}

double tangent_ball_volume(const ConvexBody& body, const Vec& p, const DirectionGrid& grid) {
  if (!body.contains(p)) throw PointOutsideBody();
  if (grid.dim != body.dim()) throw MalformedInput("grid/body dimension mismatch");
  auto f = finsler_on_grid(body, p, grid);
  int n = body.dim();
  double acc = 0.0;
  for (int i = 0; i < grid.size(); ++i) acc += grid.weights[i] * std::pow(f[i], -n);
  return acc / n;
}

namespace {

double busemann_density_impl(const ConvexBody& body, const Vec& p, const DirectionGrid& grid,
                             double tol, int force) {
  if (!body.contains(p)) throw PointOutsideBody();
  if (const auto* ell = dynamic_cast<const Ellipsoid*>(&body)) return ellipsoid_density(*ell, p);
  if (body.dim() == 2) {
    if (const auto* poly = dynamic_cast<const HPolytope*>(&body)) {
      return omega_n(2) / polytope_tangent_area_2d(*poly, p);
    }
    int base = std::max(8, grid.size() / 64);
    return omega_n(2) / tangent_area_2d(body, p, base, tol, force);
  }
  return omega_n(body.dim()) / tangent_ball_volume(body, p, grid);
}

}  // namespace

double busemann_density(const ConvexBody& body, const Vec& p, const DirectionGrid& grid) {
  return busemann_density_impl(body, p, grid, 1e-8, 4);
}

double dual_norm(const ConvexBody& body, const Vec& p, const Vec& w, const DensityModel& model) {
  if (!body.contains(p)) throw PointOutsideBody();
  auto f = finsler_on_grid(body, p, model.grid);
  return dual_norm_impl(body, p, w, model.grid, f, model.refine, model.refine_tol);
}

double holmes_thompson_density(const ConvexBody& body, const Vec& p, const DensityModel& model) {
  if (!body.contains(p)) throw PointOutsideBody();
  int n = body.dim();
  if (n == 2) {
    int base = std::max(8, model.grid.size() / 64);
    int coarse = std::max(64, model.grid.size() / 8);
    return dual_area_2d(body, p, base, coarse, model.refine_tol, model.angular_tol,
                        model.angular_force) /
           omega_n(2);
  }
  auto f = finsler_on_grid(body, p, model.grid);
  double acc = 0.0;
  for (int i = 0; i < model.grid.size(); ++i) {
    double support = dual_norm_impl(body, p, model.grid.nodes[i], model.grid, f, model.refine,
                                    model.refine_tol);
    acc += model.grid.weights[i] * std::pow(support, -n);
  }
  return acc / n / omega_n(n);
}

double density(const ConvexBody& body, const Vec& p, const DensityModel& model) {
  return model.kind == DensityKind::Busemann
             ? busemann_density_impl(body, p, model.grid, model.angular_tol, model.angular_force)
             : holmes_thompson_density(body, p, model);
}

RatioScan density_ratio_scan(const ConvexBody& body, const std::vector<Vec>& samples,
                             int grid_size) {
  DensityModel bus = DensityModel::defaults(DensityKind::Busemann, body.dim());
  DensityModel ht = DensityModel::defaults(DensityKind::HolmesThompson, body.dim());
  if (grid_size > 0) {
    bus.grid = direction_grid(body.dim(), grid_size);
    ht.grid = bus.grid;
  }
  RatioScan scan{std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
  for (const Vec& p : samples) {
    double ratio = density(body, p, bus) / density(body, p, ht);
    scan.min_ratio = std::min(scan.min_ratio, ratio);
    scan.max_ratio = std::max(scan.max_ratio, ratio);
  }
  return scan;
}

}  // namespace hilbert
