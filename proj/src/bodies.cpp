#include "hilbert/bodies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace hilbert {

namespace {

// Strictly feasible point by cyclic projections onto margin-shifted
// halfspaces, retrying with smaller margins. Adequate for the small
// systems this toolkit handles; no LP solver needed.
Vec find_interior_point(const std::vector<HalfSpace>& hs, int n) {
  for (double margin = 1.0; margin >= 1e-9; margin *= 0.25) {
    Vec x = Vec::Zero(n);
    bool feasible = false;
    for (int sweep = 0; sweep < 20000 && !feasible; ++sweep) {
      feasible = true;
      for (const auto& h : hs) {
        double an = h.normal.norm();
        double gap = (h.normal.dot(x) - h.offset) / an + margin;
        if (gap > 0) {
          x -= (gap / an) * h.normal;
          feasible = false;
        }
      }
    }
    if (feasible) return x;
  }
  throw MalformedInput("polytope has empty interior");
}

}  // namespace

HPolytope::HPolytope(std::vector<HalfSpace> halfspaces, std::optional<Vec> witness)
    : halfspaces_(std::move(halfspaces)) {
  if (halfspaces_.empty()) throw MalformedInput("polytope needs at least one halfspace");
  n_ = static_cast<int>(halfspaces_[0].normal.size());
  for (const auto& h : halfspaces_) {
    if (h.normal.size() != n_) throw MalformedInput("inconsistent halfspace dimensions");
    if (h.normal.norm() < kUnitTol) throw MalformedInput("zero normal in halfspace");
  }
  if (normal_rank() < n_) {
    throw ImproperBody("halfspace normals do not span the ambient space");
  }
  if (witness) {
    witness_ = *witness;
    if (!contains(witness_)) throw MalformedInput("supplied witness is not strictly feasible");
  } else {
    witness_ = find_interior_point(halfspaces_, n_);
  }
}

bool HPolytope::contains(const Vec& p) const {
  if (p.size() != n_) return false;
  for (const auto& h : halfspaces_) {
    if (h.normal.dot(p) >= h.offset) return false;
  }
  return true;
}

ExitTime HPolytope::exit_time_raw(const Vec& p, const Vec& u) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& h : halfspaces_) {
    double du = h.normal.dot(u);
    if (du > 0) best = std::min(best, (h.offset - h.normal.dot(p)) / du);
  }
  return std::isinf(best) ? ExitTime::infinity() : ExitTime::finite(best);
}

int HPolytope::normal_rank() const {
  // Dynamic matrix: facet counts exceed the capacity-4 ambient type.
  Eigen::MatrixXd a(static_cast<int>(halfspaces_.size()), n_);
  for (size_t i = 0; i < halfspaces_.size(); ++i) {
    a.row(static_cast<int>(i)) = halfspaces_[i].normal.transpose();
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

Ellipsoid::Ellipsoid(Vec center, Mat shape) : center_(std::move(center)), shape_(std::move(shape)) {
  int n = static_cast<int>(center_.size());
  if (shape_.rows() != n || shape_.cols() != n) throw MalformedInput("shape matrix size mismatch");
  if ((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw MalformedInput("shape matrix not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(shape_);
  if (es.eigenvalues().minCoeff() <= 0) throw MalformedInput("shape matrix not positive definite");
}

bool Ellipsoid::contains(const Vec& p) const {
  if (p.size() != center_.size()) return false;
  Vec d = p - center_;
  return d.dot(shape_ * d) < 1.0;
}

ExitTime Ellipsoid::exit_time_raw(const Vec& p, const Vec& u) const {
  // (d + t u)^T Q (d + t u) = 1, positive root.
  Vec d = p - center_;
  double a = u.dot(shape_ * u);
  double b = d.dot(shape_ * u);
  double c = d.dot(shape_ * d) - 1.0;
  double disc = b * b - a * c;  // c < 0 inside, so disc > 0
  return ExitTime::finite((-b + std::sqrt(disc)) / a);
}

LpBall::LpBall(Vec center, double radius, double exponent)
    : center_(std::move(center)), radius_(radius), exponent_(exponent) {
  if (radius_ <= 0) throw MalformedInput("lp ball radius must be positive");
  if (exponent_ < 1.0) throw MalformedInput("lp exponent below 1 is not convex");
  double rounded = std::round(exponent_);
  int_exponent_ =
      (std::abs(exponent_ - rounded) < 1e-14 && rounded <= 16) ? static_cast<int>(rounded) : 0;
}

double LpBall::pnorm(const Vec& x) const {
  if (int_exponent_ > 0) {
    double s = 0;
    for (int i = 0; i < x.size(); ++i) {
      double a = std::abs(x[i]);
      double t = a;
      for (int k = 1; k < int_exponent_; ++k) t *= a;
      s += t;
    }
    return std::pow(s, 1.0 / int_exponent_);
  }
  double s = 0;
  for (int i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), exponent_);
  return std::pow(s, 1.0 / exponent_);
}

bool LpBall::contains(const Vec& p) const {
  if (p.size() != center_.size()) return false;
  return pnorm(p - center_) < radius_;
}

ExitTime LpBall::exit_time_raw(const Vec& p, const Vec& u) const {
  if (std::abs(exponent_ - 2.0) < 1e-14) {
    // Euclidean ball: quadratic closed form.
    Vec d = p - center_;
    double b = d.dot(u);
    double c = d.squaredNorm() - radius_ * radius_;
    return ExitTime::finite(-b + std::sqrt(b * b - c));
  }
  Vec d = p - center_;
  if (int_exponent_ >= 2 && int_exponent_ % 2 == 0) {
    // Even integer exponent: sum_i (d_i + t u_i)^k is a convex polynomial
    // in t, so Newton from an upper bracket converges monotonically.
    int k = int_exponent_;
    std::array<double, 17> coef{};
    for (int i = 0; i < d.size(); ++i) {
      double dp = 1.0;  // d_i^(k-j) built from the top down
      std::array<double, 17> dpow{};
      for (int j = k; j >= 0; --j) {
        dpow[j] = dp;
        dp *= d[i];
      }
      double binom = 1.0, up = 1.0;
      for (int j = 0; j <= k; ++j) {
        coef[j] += binom * dpow[j] * up;
        up *= u[i];
        binom = binom * (k - j) / (j + 1);
      }
    }
    double rk = 1.0;
    for (int j = 0; j < k; ++j) rk *= radius_;
    coef[0] -= rk;
    auto horner = [&](double t, double& g, double& gp) {
      g = coef[k];
      gp = 0.0;
      for (int j = k - 1; j >= 0; --j) {
        gp = gp * t + g;
        g = g * t + coef[j];
      }
    };
    double b = d.dot(u);
    double lo = -b + std::sqrt(std::max(0.0, b * b - (d.squaredNorm() - radius_ * radius_)));
    double t = std::max(lo, radius_);
    double g, gp;
    horner(t, g, gp);
    while (g <= 0.0) {
      t *= 2.0;
      horner(t, g, gp);
    }
    for (int it = 0; it < 100; ++it) {
      double step = g / gp;
      t -= step;
      horner(t, g, gp);
      if (std::abs(step) <= 1e-15 * t) break;
    }
    return ExitTime::finite(t);
  }
  auto gauge = [&](double t) { return pnorm(d + t * u) - radius_; };
  // Bracket by doubling from the Euclidean-sphere exit; the gauge is
  // monotone along rays past the minimum, so a sign flip is guaranteed.
  double b2 = d.dot(u);
  double lo = -b2 + std::sqrt(b2 * b2 - (d.squaredNorm() - radius_ * radius_));
  if (gauge(lo) >= 0) lo = 0;
  double flo = gauge(lo);
  double hi = std::max(lo * 2, radius_);
  double fhi = gauge(hi);
  while (fhi < 0) {
    lo = hi;
    flo = fhi;
    hi *= 2;
    fhi = gauge(hi);
  }
  // Bisection with secant acceleration to 1e-12 relative.
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    double mid = lo + (hi - lo) * 0.5;
    // Secant on alternate iterations only; pure false position can stall
    // on one side of the bracket.
    if (it % 2 == 0 && fhi > flo) {
      double sec = lo - flo * (hi - lo) / (fhi - flo);
      if (sec > lo + 1e-15 * hi && sec < hi - 1e-15 * hi) mid = sec;
    }
    double fmid = gauge(mid);
    if (fmid < 0) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  return ExitTime::finite(0.5 * (lo + hi));
}

namespace {

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

}  // namespace

BodyPtr make_interval(double lo, double hi) {
  Vec plus(1), minus(1);
  plus << 1.0;
  minus << -1.0;
  Vec w(1);
  w << 0.5 * (lo + hi);
  return std::make_shared<HPolytope>(
      std::vector<HalfSpace>{{plus, hi}, {minus, -lo}}, w);
}

BodyPtr make_unit_disk() {
  return std::make_shared<Ellipsoid>(Vec::Zero(2), Mat::Identity(2, 2));
}

BodyPtr make_unit_ball3() {
  return std::make_shared<Ellipsoid>(Vec::Zero(3), Mat::Identity(3, 3));
}

BodyPtr make_ellipse(double a, double b) {
  Mat q = Mat::Zero(2, 2);
  q(0, 0) = 1.0 / (a * a);
  q(1, 1) = 1.0 / (b * b);
  return std::make_shared<Ellipsoid>(Vec::Zero(2), q);
}

BodyPtr make_square01() {
  std::vector<HalfSpace> hs{{vec2(1, 0), 1},
                            {vec2(-1, 0), 0},
                            {vec2(0, 1), 1},
                            {vec2(0, -1), 0}};
  return std::make_shared<HPolytope>(std::move(hs), vec2(0.5, 0.5));
}

BodyPtr make_cube01() {
  std::vector<HalfSpace> hs;
  for (int i = 0; i < 3; ++i) {
    Vec e = Vec::Zero(3);
    e[i] = 1;
    hs.push_back({e, 1.0});
    hs.push_back({-e, 0.0});
  }
  return std::make_shared<HPolytope>(std::move(hs), Vec::Constant(3, 0.5));
}

BodyPtr make_triangle() {
  std::vector<HalfSpace> hs{{vec2(0, -1), 0}, {vec2(-1, 0), 0}, {vec2(1, 1), 1}};
  hs[2].normal /= std::sqrt(2.0);
  hs[2].offset /= std::sqrt(2.0);
  return std::make_shared<HPolytope>(std::move(hs), vec2(0.25, 0.25));
}

BodyPtr make_quadrant(int dim) {
  std::vector<HalfSpace> hs;
  for (int i = 0; i < dim; ++i) {
    Vec e = Vec::Zero(dim);
    e[i] = -1;
    hs.push_back({e, 0.0});
  }
  return std::make_shared<HPolytope>(std::move(hs), Vec::Ones(dim));
}

BodyPtr make_polygon(const std::vector<Vec>& vertices) {
  if (vertices.size() < 3) throw MalformedInput("polygon needs at least 3 vertices");
  for (const auto& v : vertices) {
    if (v.size() != 2) throw MalformedInput("V-representation accepted for n=2 only");
  }
  Vec centroid = Vec::Zero(2);
  for (const auto& v : vertices) centroid += v;
  centroid /= static_cast<double>(vertices.size());

  std::vector<Vec> sorted = vertices;
  std::sort(sorted.begin(), sorted.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(a[1] - centroid[1], a[0] - centroid[0]) <
           std::atan2(b[1] - centroid[1], b[0] - centroid[0]);
  });

  std::vector<HalfSpace> hs;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const Vec& a = sorted[i];
    const Vec& b = sorted[(i + 1) % sorted.size()];
    Vec edge = b - a;
    if (edge.norm() < 1e-12) continue;
    Vec normal = vec2(edge[1], -edge[0]);  // outward for counterclockwise order
    normal.normalize();
    if (normal.dot(centroid - a) > 0) normal = -normal;
    hs.push_back({normal, normal.dot(a)});
  }
  return std::make_shared<HPolytope>(std::move(hs), centroid);
}

std::vector<Vec> polytope_vertices_2d(const HPolytope& poly, double tol) {
  if (poly.dim() != 2) throw UnsupportedDimension("vertex enumeration is 2-D only");
  const auto& hs = poly.halfspaces();
  std::vector<Vec> verts;
  for (size_t i = 0; i < hs.size(); ++i) {
    for (size_t j = i + 1; j < hs.size(); ++j) {
      Mat a(2, 2);
      a.row(0) = hs[i].normal.transpose();
      a.row(1) = hs[j].normal.transpose();
      if (std::abs(a.determinant()) < 1e-12) continue;
      Vec b(2);
      b << hs[i].offset, hs[j].offset;
      Vec v = a.partialPivLu().solve(b);
      bool feasible = true;
      for (const auto& h : hs) {
        if (h.normal.dot(v) > h.offset + tol * (1 + h.normal.norm())) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      bool duplicate = false;
      for (const auto& w : verts) {
        if ((w - v).norm() < 1e-8) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) verts.push_back(v);
    }
  }
  Vec c = poly.witness();
  std::sort(verts.begin(), verts.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  return verts;
}

}  // namespace hilbert
