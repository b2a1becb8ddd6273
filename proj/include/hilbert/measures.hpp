#pragma once

#include "hilbert/quadrature.hpp"

namespace hilbert {

enum class DensityKind { Busemann, HolmesThompson };

// Euclidean unit-ball volume, n = 1..3.
double omega_n(int dim);

// Density evaluator configuration. Default direction counts: 512 for n=2,
// 2048 for n=3; n=1 is the exact two-point rule.
struct DensityModel {
  DensityKind kind = DensityKind::Busemann;
  DirectionGrid grid;
  bool refine = true;        // golden-section / hill-climb dual refinement
  double refine_tol = 1e-9;  // angular bracket width
  // Adaptive angular integration for generic 2-D tangent bodies: relative
  // tolerance and mandatory refinement levels. The defaults are
  // density-grade; volume integration loosens them internally (its own
  // tolerance is on the integrated ball volume, not the pointwise density).
  double angular_tol = 1e-8;
  int angular_force = 4;

  static DensityModel defaults(DensityKind kind, int dim);
  DensityModel doubled() const;
};

// Leb of the tangent unit ball {v : F(p,v) < 1} by radial integration,
// (1/n) sum_i w_i F(p,u_i)^{-n}.
double tangent_ball_volume(const ConvexBody& body, const Vec& p, const DirectionGrid& grid);

// omega_n / Leb(beta(p)).
double busemann_density(const ConvexBody& body, const Vec& p, const DirectionGrid& grid);

// F*(p,w) = max_u <w,u>/F(p,u) over the grid, refined around the best node.
double dual_norm(const ConvexBody& body, const Vec& p, const Vec& w, const DensityModel& model);

// Leb(beta*(p))/omega_n where beta* has radial function 1/F*(p,u).
double holmes_thompson_density(const ConvexBody& body, const Vec& p, const DensityModel& model);

double density(const ConvexBody& body, const Vec& p, const DensityModel& model);

// Empirical bounds on h_Bus/h_HT over the given sample points.
struct RatioScan {
  double min_ratio;
  double max_ratio;
};
RatioScan density_ratio_scan(const ConvexBody& body, const std::vector<Vec>& samples,
                             int grid_size = 0);

}  // namespace hilbert
