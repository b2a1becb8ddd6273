#pragma once

#include <string>

#include "hilbert/convex_body.hpp"

namespace hilbert {

// JSON body schema:
//   {"dim":2,"kind":"hpolytope","halfspaces":[{"a":[1,0],"b":1},...]}
//   {"kind":"vpolytope","vertices":[[0,0],[1,0],[0,1]]}        (n=2 only)
//   {"kind":"ellipsoid","center":[0,0],"shape":[[1,0],[0,1]]}
//   {"kind":"lp_ball","p":4,"center":[0,0],"radius":1}
//   {"kind":"projective_image","matrix":[[...]],"inner":{...}}
//   {"kind":"quadrant","dim":2}
// Throws MalformedInput on schema violations.
BodyPtr body_from_json(const std::string& text);
BodyPtr body_from_file(const std::string& path);

}  // namespace hilbert
