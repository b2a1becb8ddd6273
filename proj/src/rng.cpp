#include "hilbert/rng.hpp"

#include <cmath>
#include <numbers>

#include "hilbert/metric.hpp"

namespace hilbert {

Vec Rng::direction(int dim) {
  if (dim == 1) {
    Vec v(1);
    v << (uniform01() < 0.5 ? -1.0 : 1.0);
    return v;
  }
  Vec v(dim);
  while (true) {
    for (int i = 0; i < dim; i += 2) {
      double u1 = std::max(uniform01(), 1e-300);
      double u2 = uniform01();
      double mag = std::sqrt(-2.0 * std::log(u1));
      v[i] = mag * std::cos(2.0 * std::numbers::pi * u2);
      if (i + 1 < dim) v[i + 1] = mag * std::sin(2.0 * std::numbers::pi * u2);
    }
    double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
}

Vec Rng::interior_point(const ConvexBody& body, double max_r) {
  Vec u = direction(body.dim());
  double r = max_r * uniform01();
  return sphere_point(body, body.witness(), u, r);
}

}  // namespace hilbert
