#include "hilbert/convex_body.hpp"

#include <sstream>

#include "hilbert/bodies.hpp"
#include "hilbert/quadrature.hpp"

namespace hilbert {

ExitTime exit_time(const ConvexBody& body, const Vec& p, const Vec& u) {
  if (u.norm() < kUnitTol) throw ZeroDirection();
  if (!body.contains(p)) throw PointOutsideBody();
  return body.exit_time_raw(p, u / u.norm());
}

ChordTimes chord(const ConvexBody& body, const Vec& p, const Vec& u) {
  if (u.norm() < kUnitTol) throw ZeroDirection();
  if (!body.contains(p)) throw PointOutsideBody();
  Vec un = u / u.norm();
  ChordTimes c{body.exit_time_raw(p, un), body.exit_time_raw(p, -un)};
  if (c.t_plus.is_infinite() && c.t_minus.is_infinite()) {
    throw ImproperBody("chord infinite in both directions: contained line");
  }
  return c;
}

namespace {

std::string direction_string(const Vec& u) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < u.size(); ++i) os << (i ? "," : "") << u[i];
  os << ")";
  return os.str();
}

}  // namespace

void validate_proper(const ConvexBody& body, int sample_directions) {
  if (const auto* poly = dynamic_cast<const HPolytope*>(&body)) {
    if (poly->normal_rank() < poly->dim()) {
      // A rank-deficient normal system leaves a free line; name one.
      Mat a(poly->halfspaces().size(), poly->dim());
      for (size_t i = 0; i < poly->halfspaces().size(); ++i) {
        a.row(static_cast<int>(i)) = poly->halfspaces()[i].normal.transpose();
      }
      Eigen::FullPivLU<Mat> lu(a);
      Vec u = lu.kernel().col(0).normalized();
      throw ImproperBody("normals rank-deficient, contained line along " + direction_string(u));
    }
    return;
  }
  DirectionGrid grid = direction_grid(body.dim(), body.dim() == 1 ? 2 : sample_directions);
  Vec w = body.witness();
  for (const Vec& u : grid.nodes) {
    if (body.exit_time_raw(w, u).is_infinite() && body.exit_time_raw(w, -u).is_infinite()) {
      throw ImproperBody("contained line along " + direction_string(u));
    }
  }
}

}  // namespace hilbert
