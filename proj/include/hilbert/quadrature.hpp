#pragma once

#include <vector>

#include "hilbert/convex_body.hpp"

namespace hilbert {

// Nodes on S^{n-1} with weights summing to its surface measure
// (2 for n=1, 2pi for n=2, 4pi for n=3).
struct DirectionGrid {
  int dim = 0;
  std::vector<Vec> nodes;
  std::vector<double> weights;
  // set when nodes come in +/- pairs at offset size()/2; lets chord
  // evaluations be shared between a node and its antipode.
  bool antipodal = false;

  int size() const { return static_cast<int>(nodes.size()); }
  int antipode(int i) const { return (i + size() / 2) % size(); }
};

// m equally spaced angles, weights 2pi/m. Antipodal for even m.
DirectionGrid circle_grid(int m);

// Fibonacci sphere, equal weights 4pi/m.
DirectionGrid sphere_grid(int m);

// {+1,-1} with unit weights; exact for the two-point sphere S^0.
DirectionGrid line_grid();

// Dispatch on dimension; throws UnsupportedDimension for n >= 4.
DirectionGrid direction_grid(int dim, int m);

// Gauss-Legendre rule on [0,1].
struct RadialRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order() const { return static_cast<int>(nodes.size()); }
};

RadialRule gauss_legendre(int k);

inline double richardson_error(double coarse, double fine) {
  return std::abs(fine - coarse);
}

}  // namespace hilbert
