#pragma once

#include <Eigen/Dense>
#include <cassert>
#include <memory>

#include "hilbert/errors.hpp"

namespace hilbert {

// Desk scale is n in {1,2,3} (plus homogeneous coordinates), so vectors and
// matrices are stack-allocated with capacity 4: the oracles sit in tight
// integration loops and must not touch the heap.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

inline constexpr double kUnitTol = 1e-12;

// Boundary hit time along a ray. Explicit infinite variant: recession
// directions of unbounded bodies are exact statements, never sentinels.
class ExitTime {
 public:
  static ExitTime finite(double t) { return ExitTime(t, true); }
  static ExitTime infinity() { return ExitTime(0.0, false); }

  bool is_finite() const { return finite_; }
  bool is_infinite() const { return !finite_; }
  double value() const {
    assert(finite_);
    return t_;
  }

 private:
  ExitTime(double t, bool finite) : t_(t), finite_(finite) {}
  double t_;
  bool finite_;
};

// Hit times (t+, t-) along +u and -u from an interior point.
struct ChordTimes {
  ExitTime t_plus = ExitTime::infinity();
  ExitTime t_minus = ExitTime::infinity();
};

// A proper open convex set given by membership and an exact ray-exit oracle.
// Bodies are immutable after construction; all queries are const and
// safe for concurrent use.
class ConvexBody {
 public:
  virtual ~ConvexBody() = default;

  virtual int dim() const = 0;
  // A strictly interior point, fixed at construction.
  virtual Vec witness() const = 0;
  // Strict interior membership.
  virtual bool contains(const Vec& p) const = 0;
  // sup{t > 0 : p + t*u inside}; caller guarantees contains(p) and |u| = 1.
  virtual ExitTime exit_time_raw(const Vec& p, const Vec& u) const = 0;
};

using BodyPtr = std::shared_ptr<const ConvexBody>;

// Checked oracle front ends.
ExitTime exit_time(const ConvexBody& body, const Vec& p, const Vec& u);
ChordTimes chord(const ConvexBody& body, const Vec& p, const Vec& u);

// Exact rank test for H-polytopes, directional sampling otherwise
// (default 4096 directions). Throws ImproperBody carrying the witness
// direction in its message.
void validate_proper(const ConvexBody& body, int sample_directions = 4096);

}  // namespace hilbert
