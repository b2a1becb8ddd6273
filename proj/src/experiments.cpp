#include "hilbert/experiments.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hilbert/metric.hpp"

namespace hilbert {

std::vector<Vec> boundary_points_smooth(const ConvexBody& body, const Vec& x, int k) {
  if (body.dim() != 2) throw UnsupportedDimension("uniform boundary sampling is 2-D only");
  std::vector<Vec> pts;
  pts.reserve(k);
  for (int i = 0; i < k; ++i) {
    double theta = 2.0 * std::numbers::pi * i / k;
    Vec u(2);
    u << std::cos(theta), std::sin(theta);
    ExitTime t = exit_time(body, x, u);
    if (t.is_infinite()) throw MalformedInput("boundary sampling hit a recession direction");
    pts.push_back(x + t.value() * u);
  }
  return pts;
}

void validate_packing_config(const PackingConfig& config) {
  if (config.boundary_points.size() < 2) throw MalformedInput("packing needs k >= 2 points");
  if (!config.body->contains(config.center)) throw PointOutsideBody();
  for (const Vec& p : config.boundary_points) {
    // Membership must flip across the point along the ray from the centre.
    Vec d = p - config.center;
    if (!config.body->contains(config.center + (1.0 - 1e-9) * d)) {
      throw MalformedInput("boundary point lies outside (not within 1e-9 of the boundary)");
    }
    if (config.body->contains(config.center + (1.0 + 1e-9) * d)) {
      throw MalformedInput("boundary point lies strictly inside");
    }
  }
}

namespace {

std::vector<Vec> sphere_points_toward(const PackingConfig& config, double r) {
  std::vector<Vec> out;
  out.reserve(config.boundary_points.size());
  for (const Vec& p : config.boundary_points) {
    Vec u = (p - config.center).normalized();
    out.push_back(sphere_point(*config.body, config.center, u, r));
  }
  return out;
}

double min_pairwise_distance(const ConvexBody& body, const std::vector<Vec>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      best = std::min(best, hilbert_distance(body, pts[i], pts[j]));
    }
  }
  return best;
}

}  // namespace

double separation_scan(const PackingConfig& config) {
  validate_packing_config(config);
  if (config.radius <= 0) {
    // All sphere points coincide with the centre at R = 0.
    return 0.0;
  }
  return min_pairwise_distance(*config.body, sphere_points_toward(config, config.radius));
}

PackingCheck packing_check(const PackingConfig& config) {
  validate_packing_config(config);
  if (config.radius <= 0) throw MalformedInput("packing radius must be positive");
  double r = config.radius;
  PackingCheck result;
  result.r_ok = separation_scan(config) > r;

  auto centers = sphere_points_toward(config, 0.75 * r);
  result.min_center_separation = min_pairwise_distance(*config.body, centers);
  result.disjoint = result.min_center_separation > 0.5 * r;

  result.included = true;
  for (const Vec& c : centers) {
    double d = hilbert_distance(*config.body, config.center, c);
    if (std::abs(d - 0.75 * r) > 1e-9 * (1.0 + r)) {
      throw MalformedInput("packing centre missed the 3R/4 sphere");
    }
    if (d + 0.25 * r > r + 1e-9 * (1.0 + r)) result.included = false;
  }
  return result;
}

PackingVolumeBound packing_volume_bound(const PackingConfig& config, bool with_off_center) {
  validate_packing_config(config);
  double r = config.radius;
  double k = static_cast<double>(config.boundary_points.size());
  PackingVolumeBound result;
  result.lhs =
      k * ball_volume(*config.body, config.center, 0.25 * r, config.model, config.volume).value;
  result.rhs = ball_volume(*config.body, config.center, r, config.model, config.volume).value;
  result.holds = result.lhs <= result.rhs;
  if (with_off_center) {
    for (const Vec& c : sphere_points_toward(config, 0.75 * r)) {
      result.off_center_volumes.push_back(
          ball_volume(*config.body, c, 0.25 * r, config.model, config.volume).value);
    }
  }
  return result;
}

SectionBody2D::SectionBody2D(BodyPtr parent, Vec origin, Mat basis)
    : parent_(std::move(parent)), origin_(std::move(origin)), basis_(std::move(basis)) {
  if (parent_->dim() != 3) throw UnsupportedDimension("sections are cut from 3-D bodies");
  if (!parent_->contains(origin_)) throw PointOutsideBody("section origin not inside the body");
  if ((basis_.transpose() * basis_ - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-9) {
    throw MalformedInput("section basis must be orthonormal");
  }
}

Vec SectionBody2D::embed(const Vec& planar) const { return origin_ + basis_ * planar; }

bool SectionBody2D::contains(const Vec& p) const {
  return p.size() == 2 && parent_->contains(embed(p));
}

ExitTime SectionBody2D::exit_time_raw(const Vec& p, const Vec& u) const {
  // Orthonormal basis keeps arclength, so the parent's exit time is ours.
  return parent_->exit_time_raw(embed(p), basis_ * u);
}

BodyPtr make_section(BodyPtr body3d, const SectionSpec& section) {
  if (section.normal.norm() < kUnitTol) throw ZeroDirection();
  Vec n = section.normal.normalized();
  Vec ref = std::abs(n[0]) < 0.9 ? Vec::Unit(3, 0) : Vec::Unit(3, 1);
  Vec e1 = (ref - ref.dot(n) * n).normalized();
  Vec e2(3);
  e2 << n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2], n[0] * e1[1] - n[1] * e1[0];
  Mat basis(3, 2);
  basis.col(0) = e1;
  basis.col(1) = e2;
  return std::make_shared<SectionBody2D>(std::move(body3d), section.point, basis);
}

SectionEntropyResult section_entropy_check(BodyPtr body3d, const SectionSpec& section,
                                           const std::vector<double>& radii, Window window,
                                           const DensityModel& model, const VolumeConfig& config,
                                           double tolerance) {
  BodyPtr slice = make_section(body3d, section);
  DensityModel model2d = model;
  model2d.grid = direction_grid(2, std::max(16, model.grid.size() / 4));
  VolumeConfig config2d = config;
  config2d.angular = std::max(16, config.angular / 8);

  GrowthCurve curve2d = growth_curve(*slice, slice->witness(), radii, model2d, config2d);
  GrowthCurve curve3d = growth_curve(*body3d, section.point, radii, model, config);

  SectionEntropyResult result;
  result.ent_section = entropy_estimate(curve2d, window).value;
  result.ent_body = entropy_estimate(curve3d, window).value;
  result.holds = result.ent_section <= result.ent_body + tolerance;
  return result;
}

InvarianceResult invariance_scan(BodyPtr body, const std::vector<ProjectiveMap>& maps,
                                 const std::vector<std::pair<Vec, Vec>>& sample_pairs) {
  InvarianceResult result;
  for (const auto& map : maps) {
    try {
      BodyPtr image = apply_projective(map, body);
      for (const auto& [p, q] : sample_pairs) {
        double d0 = hilbert_distance(*body, p, q);
        double d1 = hilbert_distance(*image, map.apply(p), map.apply(q));
        result.max_delta = std::max(result.max_delta, std::abs(d1 - d0));
      }
    } catch (const ChartOverflow&) {
      ++result.skipped_maps;
    }
  }
  return result;
}

bool bilipschitz_normed_flag(const GrowthCurve& curve, int n, Window window) {
  return classify_growth(curve, n, window) == GrowthClass::PolytopeLike;
}

}  // namespace hilbert
