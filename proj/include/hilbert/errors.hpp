#pragma once

#include <stdexcept>
#include <string>

namespace hilbert {

// All recoverable failures carry a stable machine-readable name; the CLI
// prints it on stderr and maps it to a nonzero exit code.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

struct PointOutsideBody : Error {
  explicit PointOutsideBody(const std::string& what = "query point is not interior")
      : Error("PointOutsideBody", what) {}
};

struct ZeroDirection : Error {
  explicit ZeroDirection(const std::string& what = "direction has near-zero norm")
      : Error("ZeroDirection", what) {}
};

struct ImproperBody : Error {
  explicit ImproperBody(const std::string& what = "body contains a whole line")
      : Error("ImproperBody", what) {}
};

struct ChartOverflow : Error {
  explicit ChartOverflow(const std::string& what = "image point leaves the affine chart")
      : Error("ChartOverflow", what) {}
};

struct RadiusTooLarge : Error {
  explicit RadiusTooLarge(const std::string& what = "metric radius exceeds 350")
      : Error("RadiusTooLarge", what) {}
};

struct UnsupportedDimension : Error {
  explicit UnsupportedDimension(const std::string& what = "operation limited to dimensions 1..3")
      : Error("UnsupportedDimension", what) {}
};

struct WindowTooSmall : Error {
  explicit WindowTooSmall(const std::string& what = "estimation window holds fewer than 4 records")
      : Error("WindowTooSmall", what) {}
};

struct NonpositiveVolume : Error {
  explicit NonpositiveVolume(const std::string& what = "curve contains a nonpositive volume")
      : Error("NonpositiveVolume", what) {}
};

struct MonotonicityViolation : Error {
  explicit MonotonicityViolation(const std::string& what =
                                     "ball volumes not increasing; grids under-resolved")
      : Error("MonotonicityViolation", what) {}
};

struct MalformedInput : Error {
  explicit MalformedInput(const std::string& what = "malformed body description")
      : Error("MalformedInput", what) {}
};

}  // namespace hilbert
