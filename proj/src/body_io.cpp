#include "hilbert/body_io.hpp"

#include <fstream>

#include <json.hpp>

#include "hilbert/bodies.hpp"
#include "hilbert/projective.hpp"

namespace hilbert {

namespace {

using nlohmann::json;

Vec vec_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw MalformedInput("expected a nonempty number array");
  Vec v(static_cast<int>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw MalformedInput("expected a number array");
    v[static_cast<int>(i)] = j[i].get<double>();
  }
  return v;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw MalformedInput("expected a matrix (array of rows)");
  int rows = static_cast<int>(j.size());
  Vec first = vec_from_json(j[0]);
  Mat m(rows, first.size());
  m.row(0) = first.transpose();
  for (int i = 1; i < rows; ++i) {
    Vec row = vec_from_json(j[i]);
    if (row.size() != first.size()) throw MalformedInput("ragged matrix rows");
    m.row(i) = row.transpose();
  }
  return m;
}

BodyPtr body_from(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw MalformedInput("body object needs a string \"kind\"");
  }
  std::string kind = j["kind"].get<std::string>();

  if (kind == "hpolytope") {
    if (!j.contains("halfspaces") || !j["halfspaces"].is_array()) {
      throw MalformedInput("hpolytope needs \"halfspaces\"");
    }
    std::vector<HalfSpace> hs;
    for (const auto& e : j["halfspaces"]) {
      if (!e.contains("a") || !e.contains("b") || !e["b"].is_number()) {
        throw MalformedInput("halfspace needs \"a\" (array) and \"b\" (number)");
      }
      hs.push_back({vec_from_json(e["a"]), e["b"].get<double>()});
    }
    return std::make_shared<HPolytope>(std::move(hs));
  }
  if (kind == "vpolytope") {
    if (!j.contains("vertices") || !j["vertices"].is_array()) {
      throw MalformedInput("vpolytope needs \"vertices\"");
    }
    std::vector<Vec> verts;
    for (const auto& e : j["vertices"]) verts.push_back(vec_from_json(e));
    return make_polygon(verts);  // rejects n != 2
  }
  if (kind == "ellipsoid") {
    if (!j.contains("center") || !j.contains("shape")) {
      throw MalformedInput("ellipsoid needs \"center\" and \"shape\"");
    }
    return std::make_shared<Ellipsoid>(vec_from_json(j["center"]), mat_from_json(j["shape"]));
  }
  if (kind == "lp_ball") {
    if (!j.contains("p") || !j.contains("center") || !j.contains("radius")) {
      throw MalformedInput("lp_ball needs \"p\", \"center\", \"radius\"");
    }
    return std::make_shared<LpBall>(vec_from_json(j["center"]), j["radius"].get<double>(),
                                    j["p"].get<double>());
  }
  if (kind == "projective_image") {
    if (!j.contains("matrix") || !j.contains("inner")) {
      throw MalformedInput("projective_image needs \"matrix\" and \"inner\"");
    }
    return apply_projective(ProjectiveMap(mat_from_json(j["matrix"])), body_from(j["inner"]));
  }
  if (kind == "quadrant") {
    int dim = j.value("dim", 2);
    if (dim < 1 || dim > 3) throw MalformedInput("quadrant dim must be 1..3");
    return make_quadrant(dim);
  }
  throw MalformedInput("unknown body kind: " + kind);
}

}  // namespace

BodyPtr body_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("JSON parse error: ") + e.what());
  }
  try {
    return body_from(j);
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("bad body JSON: ") + e.what());
  }
}

BodyPtr body_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open body file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return body_from_json(text);
}

}  // namespace hilbert
