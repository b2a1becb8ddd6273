#pragma once

#include <string>

#include "hilbert/measures.hpp"

namespace hilbert {

struct ValueWithError {
  double value = 0.0;
  double err = 0.0;
};

// Grid configuration for ball-volume integration. Error estimates come
// from one pass at these sizes and one with everything doubled (including
// the density grid); the reported value is the fine pass.
struct VolumeConfig {
  int angular = 0;  // 0 -> dimension default (64 for n=2, 2048 for n=3)
  int radial = 32;
  int workers = 1;

  static VolumeConfig defaults(int dim);
};

// Busemann/Holmes-Thompson volume of the metric ball B(x,r), integrated in
// the metric radial coordinate s so the integrand stays smooth up to the
// boundary. 1-D is exact: (2r, 0).
ValueWithError ball_volume(const ConvexBody& body, const Vec& x, double r,
                           const DensityModel& model, const VolumeConfig& config);

// Finsler arclength of the metric circle, polygonal with m segments,
// error by doubling m. m <= 0 picks a radius-scaled count. 2-D only.
ValueWithError sphere_length_2d(const ConvexBody& body, const Vec& x, double r, int m = 0);

struct GrowthRecord {
  double r;
  double volume;
  double err;
};

struct GrowthCurve {
  std::string body_id;
  Vec center;
  DensityKind kind = DensityKind::Busemann;
  std::vector<GrowthRecord> records;
};

GrowthCurve growth_curve(const ConvexBody& body, const Vec& x, const std::vector<double>& radii,
                         const DensityModel& model, const VolumeConfig& config,
                         const std::string& body_id = "");

enum class EstimateKind { Asvol, Entropy, PolEnt };

struct EstimateReport {
  EstimateKind kind = EstimateKind::Asvol;
  double value = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double residual = 0.0;
  std::string verdict;
};

struct Window {
  double lo;
  double hi;
};

// Top half of the curve's radii; liminf proxies need tails.
Window default_window(const GrowthCurve& curve);

// mean of Vol/r^n over the window; verdict "finite" when the normalized
// tail slope of Vol/r^n stays below threshold, else "diverging".
EstimateReport asvol_estimate(const GrowthCurve& curve, int n, Window window,
                              double slope_threshold = 0.25);

// least-squares slope of ln Vol against r.
EstimateReport entropy_estimate(const GrowthCurve& curve, Window window);

// least-squares slope of ln Vol against ln r.
EstimateReport polent_estimate(const GrowthCurve& curve, Window window);

enum class GrowthClass { PolytopeLike, SuperPolynomial, Undetermined };

struct ClassifyThresholds {
  double polent_band = 0.25;   // PolytopeLike window around n
  double polent_super = 1.0;   // SuperPolynomial when polent > n + this
  double entropy_super = 0.3;  //                 ... or entropy above this
  double asvol_slope = 0.25;
};

// Exact threshold ties resolve to Undetermined; numerics never overclaim.
GrowthClass classify_growth(const GrowthCurve& curve, int n, Window window,
                            const ClassifyThresholds& thresholds = {});
std::string to_string(GrowthClass c);
std::string to_string(EstimateKind k);

struct CoareaRecord {
  double r;
  double ratio;  // Area(S(r)) / (dVol/dr by centered differences)
};

std::vector<CoareaRecord> coarea_ratio(const ConvexBody& body, const Vec& x,
                                       const std::vector<double>& radii,
                                       const DensityModel& model, const VolumeConfig& config,
                                       int sphere_segments = 0);

// CSV with fixed columns r,volume,err at 17 significant digits.
std::string curve_to_csv(const GrowthCurve& curve);
GrowthCurve curve_from_csv(const std::string& text);

}  // namespace hilbert
