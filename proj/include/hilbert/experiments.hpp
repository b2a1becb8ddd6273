#pragma once

#include "hilbert/projective.hpp"
#include "hilbert/volumetrics.hpp"

namespace hilbert {

// Extremal boundary points, the metric centre, and the packing radius R.
struct PackingConfig {
  BodyPtr body;
  Vec center;
  std::vector<Vec> boundary_points;  // each within 1e-9 of the boundary
  double radius = 0.0;
  DensityModel model;
  VolumeConfig volume;
};

// k boundary points of a strictly convex 2-D body along equally spaced
// directions from x (every boundary point is extremal there).
std::vector<Vec> boundary_points_smooth(const ConvexBody& body, const Vec& x, int k);

// Validates the boundary-point invariant (membership flips across each
// point along the ray from the centre); throws MalformedInput otherwise.
void validate_packing_config(const PackingConfig& config);

// min over pairs of d(x_p(R), x_q(R)) on the metric sphere of radius R.
double separation_scan(const PackingConfig& config);

struct PackingCheck {
  bool r_ok = false;      // separation at R exceeds R
  bool disjoint = false;  // pairwise centre distances exceed R/2
  bool included = false;  // d(x,c_p) + R/4 <= R for all p
  double min_center_separation = 0.0;
};

// Balls of radius R/4 centred at x_p(3R/4): disjointness and inclusion
// certificates via the triangle inequality.
PackingCheck packing_check(const PackingConfig& config);

struct PackingVolumeBound {
  double lhs = 0.0;  // k * Vol(B(x, R/4))
  double rhs = 0.0;  // Vol(B(x, R))
  bool holds = false;
  // Off-centre volumes Vol(B(x_p(3R/4), R/4)); only for homogeneous bodies
  // do these match the centred value. Filled when requested.
  std::vector<double> off_center_volumes;
};

PackingVolumeBound packing_volume_bound(const PackingConfig& config, bool with_off_center = false);

// 2-D slice of a 3-D body in hyperplane coordinates; oracles re-parametrise
// the parent's, no new H-rep is constructed.
class SectionBody2D : public ConvexBody {
 public:
  // origin must lie inside the parent; basis columns orthonormal, normal
  // to the hyperplane's normal.
  SectionBody2D(BodyPtr parent, Vec origin, Mat basis);

  int dim() const override { return 2; }
  Vec witness() const override { return Vec::Zero(2); }
  bool contains(const Vec& p) const override;
  ExitTime exit_time_raw(const Vec& p, const Vec& u) const override;

  Vec embed(const Vec& planar) const;

 private:
  BodyPtr parent_;
  Vec origin_;
  Mat basis_;  // 3x2
};

struct SectionSpec {
  Vec point;   // on the hyperplane, inside the body
  Vec normal;  // nonzero
};

BodyPtr make_section(BodyPtr body3d, const SectionSpec& section);

struct SectionEntropyResult {
  double ent_section = 0.0;
  double ent_body = 0.0;
  bool holds = false;
};

// Volume-entropy comparison between a 3-D body and one of its planar
// sections; holds when ent_section <= ent_body + tolerance. SLOW.
SectionEntropyResult section_entropy_check(BodyPtr body3d, const SectionSpec& section,
                                           const std::vector<double>& radii, Window window,
                                           const DensityModel& model, const VolumeConfig& config,
                                           double tolerance = 0.15);

struct InvarianceResult {
  double max_delta = 0.0;
  int skipped_maps = 0;  // maps rejected by ChartOverflow
};

// max over sampled pairs and maps of |d_{TC}(Tp,Tq) - d_C(p,q)|.
InvarianceResult invariance_scan(BodyPtr body, const std::vector<ProjectiveMap>& maps,
                                 const std::vector<std::pair<Vec, Vec>>& sample_pairs);

// True iff the growth classifier reports PolytopeLike: a curve compatible
// with bi-lipschitz equivalence to a normed space.
bool bilipschitz_normed_flag(const GrowthCurve& curve, int n, Window window);

}  // namespace hilbert
