#pragma once

#include "hilbert/convex_body.hpp"

namespace hilbert {

// (n+1)x(n+1) matrix acting on homogeneous coordinates [x; 1].
class ProjectiveMap {
 public:
  // Throws MalformedInput unless |det| > 1e-12 after row-norm scaling.
  explicit ProjectiveMap(Mat matrix);

  static ProjectiveMap identity(int dim);
  static ProjectiveMap affine(const Mat& linear, const Vec& shift);

  int dim() const { return static_cast<int>(matrix_.rows()) - 1; }
  const Mat& matrix() const { return matrix_; }
  const Mat& inverse() const { return inverse_; }
  ProjectiveMap inverted() const { return ProjectiveMap(inverse_); }

  // Homogeneous multiply + dehomogenize; throws ChartOverflow when the
  // image leaves the affine chart.
  Vec apply(const Vec& p) const;

 private:
  Mat matrix_;
  Mat inverse_;
};

// Image of a body under a projective map, oracles routed through the
// inverse map. The chord solve uses the Moebius parametrisation of the
// preimage line, so exit times stay exact up to the inner body's oracle.
class ProjectiveImage : public ConvexBody {
 public:
  // Throws ChartOverflow if the inner witness does not map into the chart.
  ProjectiveImage(ProjectiveMap map, BodyPtr inner);

  int dim() const override { return inner_->dim(); }
  Vec witness() const override { return witness_; }
  bool contains(const Vec& p) const override;
  ExitTime exit_time_raw(const Vec& p, const Vec& u) const override;

  const ProjectiveMap& map() const { return map_; }
  const BodyPtr& inner() const { return inner_; }

 private:
  ProjectiveMap map_;
  BodyPtr inner_;
  Vec witness_;
};

BodyPtr apply_projective(const ProjectiveMap& map, BodyPtr body);
Vec apply_projective_point(const ProjectiveMap& map, const Vec& p);

// Sends the triangle (0,0),(1,0),(0,1) onto the positive quadrant.
ProjectiveMap triangle_to_quadrant_map();

}  // namespace hilbert
