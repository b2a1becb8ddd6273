#pragma once

#include <optional>
#include <vector>

#include "hilbert/convex_body.hpp"

namespace hilbert {

// Interior is <a, x> < b.
struct HalfSpace {
  Vec normal;
  double offset = 0.0;
};

class HPolytope : public ConvexBody {
 public:
  // Witness found by shrinking-margin projections when not supplied.
  // Throws MalformedInput when no strictly feasible point is found and
  // ImproperBody when the normals do not span the ambient space.
  explicit HPolytope(std::vector<HalfSpace> halfspaces,
                     std::optional<Vec> witness = std::nullopt);

  int dim() const override { return n_; }
  Vec witness() const override { return witness_; }
  bool contains(const Vec& p) const override;
  ExitTime exit_time_raw(const Vec& p, const Vec& u) const override;

  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  int normal_rank() const;

 private:
  std::vector<HalfSpace> halfspaces_;
  int n_;
  Vec witness_;
};

// Interior is (x-c)^T Q (x-c) < 1, Q symmetric positive definite.
class Ellipsoid : public ConvexBody {
 public:
  Ellipsoid(Vec center, Mat shape);

  int dim() const override { return static_cast<int>(center_.size()); }
  Vec witness() const override { return center_; }
  bool contains(const Vec& p) const override;
  ExitTime exit_time_raw(const Vec& p, const Vec& u) const override;

  const Vec& center() const { return center_; }
  const Mat& shape() const { return shape_; }

 private:
  Vec center_;
  Mat shape_;
};

// Interior is ||x - c||_p < radius, exponent >= 1. p = 2 dispatches to the
// ellipsoid closed form; other exponents use a doubling bracket plus
// safeguarded Newton/bisection to 1e-12 relative.
class LpBall : public ConvexBody {
 public:
  LpBall(Vec center, double radius, double exponent);

  int dim() const override { return static_cast<int>(center_.size()); }
  Vec witness() const override { return center_; }
  bool contains(const Vec& p) const override;
  ExitTime exit_time_raw(const Vec& p, const Vec& u) const override;

  double exponent() const { return exponent_; }
  double radius() const { return radius_; }
  const Vec& center() const { return center_; }

  // ||x||_p with the integer-exponent fast path.
  double pnorm(const Vec& x) const;

 private:
  Vec center_;
  double radius_;
  double exponent_;
  int int_exponent_;  // 0 when the exponent is not a small integer
};

// Canonical fixtures.
BodyPtr make_interval(double lo = -1.0, double hi = 1.0);
BodyPtr make_unit_disk();
BodyPtr make_unit_ball3();
BodyPtr make_ellipse(double a, double b);  // semi-axes, centred
BodyPtr make_square01();                   // (0,1)^2
BodyPtr make_cube01();                     // (0,1)^3
BodyPtr make_triangle();                   // vertices (0,0),(1,0),(0,1)
BodyPtr make_quadrant(int dim = 2);        // positive orthant

// 2-D V-representation helper: angular sort around the centroid, one edge
// per consecutive vertex pair. Dimensions other than 2 are rejected.
BodyPtr make_polygon(const std::vector<Vec>& vertices);

// Facet-pair intersections filtered by feasibility, deduplicated. 2-D only.
std::vector<Vec> polytope_vertices_2d(const HPolytope& poly, double tol = 1e-9);

}  // namespace hilbert
