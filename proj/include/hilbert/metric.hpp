#pragma once

#include "hilbert/convex_body.hpp"

namespace hilbert {

inline constexpr double kMaxMetricRadius = 350.0;  // e^{2r} overflows beyond

// Cross-ratio distance (1/2) ln[a,p,q,b]; a factor collapses to 1 when its
// boundary endpoint is at infinity. Symmetric by canonical orientation:
// the chord is always taken from the lexicographically smaller endpoint.
double hilbert_distance(const ConvexBody& body, const Vec& p, const Vec& q);

// F(p,v) = (1/2)(1/t+ + 1/t-) in v-units; infinite hit times contribute 0;
// F(p,0) = 0.
double finsler_norm(const ConvexBody& body, const Vec& p, const Vec& v);

// Euclidean reach t with hilbert_distance(x, x + t*u) = r, closed form
// t = t-t+(E-1)/(t+ + E t-) with E = e^{2r}, evaluated through e^{-2r}
// for stability; analytic limits cover infinite chord ends.
double radial_reach(const ConvexBody& body, const Vec& x, const Vec& u, double r);

// Same solve from precomputed chord times, plus the radial speed dt/dr.
double radial_reach_from_chord(const ChordTimes& c, double r);
double radial_speed_from_chord(const ChordTimes& c, double r);

// x + radial_reach(x,u,r) * u.
Vec sphere_point(const ConvexBody& body, const Vec& x, const Vec& u, double r);

}  // namespace hilbert
