#include "hilbert/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace hilbert {

namespace {
constexpr double kPi = std::numbers::pi;
}

DirectionGrid circle_grid(int m) {
  if (m < 1) throw MalformedInput("grid size must be positive");
  DirectionGrid g;
  g.dim = 2;
  g.nodes.reserve(m);
  g.weights.assign(m, 2.0 * kPi / m);
  for (int i = 0; i < m; ++i) {
    double theta = 2.0 * kPi * i / m;
    Vec u(2);
    u << std::cos(theta), std::sin(theta);
    g.nodes.push_back(u);
  }
  g.antipodal = (m % 2 == 0);
  return g;
}

DirectionGrid sphere_grid(int m) {
  if (m < 1) throw MalformedInput("grid size must be positive");
  DirectionGrid g;
  g.dim = 3;
  g.nodes.reserve(m);
  g.weights.assign(m, 4.0 * kPi / m);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < m; ++i) {
    double z = 1.0 - 2.0 * (i + 0.5) / m;
    double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden * i;
    Vec u(3);
    u << rho * std::cos(phi), rho * std::sin(phi), z;
    g.nodes.push_back(u);
  }
  return g;
}

DirectionGrid line_grid() {
  DirectionGrid g;
  g.dim = 1;
  Vec plus(1), minus(1);
  plus << 1.0;
  minus << -1.0;
  g.nodes = {plus, minus};
  g.weights = {1.0, 1.0};
  g.antipodal = true;
  return g;
}

DirectionGrid direction_grid(int dim, int m) {
  switch (dim) {
    case 1:
      return line_grid();
    case 2:
      return circle_grid(m);
    case 3:
      return sphere_grid(m);
    default:
      throw UnsupportedDimension();
  }
}

RadialRule gauss_legendre(int k) {
  if (k < 1) throw MalformedInput("radial order must be positive");
  RadialRule rule;
  rule.nodes.resize(k);
  rule.weights.resize(k);
  // Newton on P_k from the Chebyshev-angle initial guess; nodes on [-1,1]
  // then mapped to [0,1].
  for (int i = 0; i < (k + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (k + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = k * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = 0.5 * (1.0 - x);  // descending x -> ascending node
    rule.nodes[k - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[k - 1 - i] = 0.5 * w;
  }
  return rule;
}

}  // namespace hilbert
