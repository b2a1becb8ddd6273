#include "hilbert/metric.hpp"

#include <cmath>

namespace hilbert {

namespace {

// Lexicographic order fixes the chord's base endpoint, removing the 1-ulp
// asymmetry between d(p,q) and d(q,p).
bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace

double hilbert_distance(const ConvexBody& body, const Vec& p_in, const Vec& q_in) {
  if (!body.contains(p_in)) throw PointOutsideBody();
  if (!body.contains(q_in)) throw PointOutsideBody();
  Vec p = p_in, q = q_in;
  if (lex_less(q, p)) std::swap(p, q);
  double len = (q - p).norm();
  if (len == 0.0) return 0.0;
  Vec u = (q - p) / len;
  ChordTimes c = chord(body, p, u);
  // a = p - t_minus u, b = p + t_plus u; factors collapse to 1 at infinity.
  double factor_a = c.t_minus.is_finite() ? (len + c.t_minus.value()) / c.t_minus.value() : 1.0;
  double factor_b = c.t_plus.is_finite() ? c.t_plus.value() / (c.t_plus.value() - len) : 1.0;
  return 0.5 * std::log(factor_a * factor_b);
}

double finsler_norm(const ConvexBody& body, const Vec& p, const Vec& v) {
  if (!body.contains(p)) throw PointOutsideBody();
  double len = v.norm();
  if (len < 1e-300) return 0.0;
  ChordTimes c = chord(body, p, v);
  // chord times are in unit-direction units; rescale to v-units.
  double sum = 0.0;
  if (c.t_plus.is_finite()) sum += len / c.t_plus.value();
  if (c.t_minus.is_finite()) sum += len / c.t_minus.value();
  return 0.5 * sum;
}

double radial_reach_from_chord(const ChordTimes& c, double r) {
  double em = std::exp(-2.0 * r);
  if (c.t_plus.is_infinite()) return c.t_minus.value() * std::expm1(2.0 * r);
  if (c.t_minus.is_infinite()) return -c.t_plus.value() * std::expm1(-2.0 * r);
  double tp = c.t_plus.value(), tm = c.t_minus.value();
  return tp * tm * (1.0 - em) / (tp * em + tm);
}

double radial_speed_from_chord(const ChordTimes& c, double r) {
  double em = std::exp(-2.0 * r);
  if (c.t_plus.is_infinite()) return 2.0 * c.t_minus.value() * std::exp(2.0 * r);
  if (c.t_minus.is_infinite()) return 2.0 * c.t_plus.value() * em;
  double tp = c.t_plus.value(), tm = c.t_minus.value();
  double denom = tp * em + tm;
  return 2.0 * tp * tm * (tp + tm) * em / (denom * denom);
}

double radial_reach(const ConvexBody& body, const Vec& x, const Vec& u, double r) {
  if (r < 0) throw MalformedInput("negative metric radius");
  if (r > kMaxMetricRadius) throw RadiusTooLarge();
  if (r == 0.0) {
    if (!body.contains(x)) throw PointOutsideBody();
    return 0.0;
  }
  return radial_reach_from_chord(chord(body, x, u), r);
}

Vec sphere_point(const ConvexBody& body, const Vec& x, const Vec& u, double r) {
  Vec un = u / u.norm();
  return x + radial_reach(body, x, un, r) * un;
}

}  // namespace hilbert
