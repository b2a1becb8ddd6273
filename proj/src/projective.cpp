#include "hilbert/projective.hpp"

#include <cmath>

namespace hilbert {

namespace {
constexpr double kChartTol = 1e-9;
}

ProjectiveMap::ProjectiveMap(Mat matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 2) {
    throw MalformedInput("projective matrix must be square, size >= 2");
  }
  // Scale-invariant invertibility check: normalise rows first.
  Mat scaled = matrix_;
  for (int i = 0; i < scaled.rows(); ++i) {
    double rn = scaled.row(i).norm();
    if (rn < kUnitTol) throw MalformedInput("projective matrix has a zero row");
    scaled.row(i) /= rn;
  }
  if (std::abs(scaled.determinant()) <= 1e-12) {
    throw MalformedInput("projective matrix is singular");
  }
  inverse_ = matrix_.inverse();
}

ProjectiveMap ProjectiveMap::identity(int dim) { return ProjectiveMap(Mat::Identity(dim + 1, dim + 1)); }

ProjectiveMap ProjectiveMap::affine(const Mat& linear, const Vec& shift) {
  int n = static_cast<int>(linear.rows());
  Mat m = Mat::Identity(n + 1, n + 1);
  m.topLeftCorner(n, n) = linear;
  m.topRightCorner(n, 1) = shift;
  return ProjectiveMap(m);
}

Vec ProjectiveMap::apply(const Vec& p) const {
  int n = dim();
  Vec h(n + 1);
  h.head(n) = p;
  h[n] = 1.0;
  Vec image = matrix_ * h;
  if (std::abs(image[n]) <= kChartTol * image.head(n).cwiseAbs().maxCoeff() ||
      std::abs(image[n]) <= 1e-300) {
    throw ChartOverflow();
  }
  return image.head(n) / image[n];
}

ProjectiveImage::ProjectiveImage(ProjectiveMap map, BodyPtr inner)
    : map_(std::move(map)), inner_(std::move(inner)) {
  if (map_.dim() != inner_->dim()) throw MalformedInput("map/body dimension mismatch");
  witness_ = map_.apply(inner_->witness());  // throws ChartOverflow if outside chart
}

bool ProjectiveImage::contains(const Vec& p) const {
  int n = dim();
  if (p.size() != n) return false;
  Vec h(n + 1);
  h.head(n) = p;
  h[n] = 1.0;
  Vec pre = map_.inverse() * h;
  if (std::abs(pre[n]) <= 1e-300) return false;
  return inner_->contains(pre.head(n) / pre[n]);
}

ExitTime ProjectiveImage::exit_time_raw(const Vec& p, const Vec& u) const {
  // Preimage of the ray p + t u is the Moebius line
  //   x(t) = (A + t W) / (alpha + t omega),
  // with [A; alpha] = M^{-1}[p; 1] and [W; omega] = M^{-1}[u; 0].
  // Writing p' = A/alpha and v' = (W alpha - A omega)/alpha^2, the inner
  // arclength along the preimage line is s(t) = t |v'| / (1 + t omega/alpha),
  // monotone up to the chart singularity; inverting s at the inner exit
  // time gives the image exit.
  int n = dim();
  Vec ph(n + 1), uh(n + 1);
  ph.head(n) = p;
  ph[n] = 1.0;
  uh.head(n) = u;
  uh[n] = 0.0;
  Vec a = map_.inverse() * ph;
  Vec w = map_.inverse() * uh;
  double alpha = a[n];
  if (alpha < 0) {
    a = -a;
    w = -w;
    alpha = -alpha;
  }
  Vec pre = a.head(n) / alpha;
  Vec vel = (w.head(n) * alpha - a.head(n) * w[n]) / (alpha * alpha);
  double speed = vel.norm();
  double kappa = w[n] / alpha;

  ExitTime inner_exit = inner_->exit_time_raw(pre, vel / speed);
  if (inner_exit.is_infinite()) {
    // The whole preimage ray stays inside; the image exits only where the
    // preimage chart folds (kappa < 0), at the image of the preimage's
    // point at infinity.
    return kappa < 0 ? ExitTime::finite(-1.0 / kappa) : ExitTime::infinity();
  }
  double denom = speed - inner_exit.value() * kappa;
  // denom vanishes exactly when the inner exit lies on the hyperplane that
  // maps to infinity; rounding leaves it at ~1e-16 of its terms, which would
  // turn a recession direction into a bogus exit near 1e16.
  if (denom <= 1e-12 * (speed + std::abs(inner_exit.value() * kappa))) {
    return ExitTime::infinity();
  }
  return ExitTime::finite(inner_exit.value() / denom);
}

BodyPtr apply_projective(const ProjectiveMap& map, BodyPtr body) {
  return std::make_shared<ProjectiveImage>(map, std::move(body));
}

Vec apply_projective_point(const ProjectiveMap& map, const Vec& p) { return map.apply(p); }

ProjectiveMap triangle_to_quadrant_map() {
  Mat m(3, 3);
  m << 1, 0, 0, 0, 1, 0, -1, -1, 1;
  return ProjectiveMap(m);
}

}  // namespace hilbert
