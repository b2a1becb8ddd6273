#pragma once

#include <cstdint>
#include <random>

#include "hilbert/convex_body.hpp"

namespace hilbert {

// mt19937_64 with hand-rolled distributions: std:: distribution output is
// implementation-defined, and determinism is part of the contract.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Unit vector by normalized Gaussians (Box-Muller on uniform01).
  Vec direction(int dim);

  // Interior point: random direction, random metric radius in [0, max_r].
  // Works uniformly for bounded and unbounded bodies.
  Vec interior_point(const ConvexBody& body, double max_r = 3.0);

 private:
  std::mt19937_64 engine_;
};

}  // namespace hilbert
