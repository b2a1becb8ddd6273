// Command-line front end: body files in, CSV/JSON curves, estimates,
// classifications and experiment reports out. All outputs are deterministic
// for a fixed configuration, independent of --workers.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hilbert/body_io.hpp"
#include "hilbert/experiments.hpp"
#include "hilbert/metric.hpp"
#include "hilbert/rng.hpp"

using nlohmann::json;
using namespace hilbert;

namespace {

Vec parse_point(const std::string& s) {
  Vec v;
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      vals.push_back(std::stod(tok));
    } catch (...) {
      throw MalformedInput("bad coordinate list: " + s);
    }
  }
  if (vals.empty()) throw MalformedInput("empty coordinate list");
  v.resize(static_cast<int>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v[static_cast<int>(i)] = vals[i];
  return v;
}

// "1,2,4,8" or "min:max:steps" (inclusive, equally spaced).
std::vector<double> parse_radii(const std::string& s) {
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    double lo, hi;
    int steps;
    if (std::sscanf(s.c_str(), "%lg:%lg:%d", &lo, &hi, &steps) != 3 || steps < 1) {
      throw MalformedInput("bad radii spec: " + s);
    }
    for (int i = 0; i < steps; ++i) {
      out.push_back(steps == 1 ? hi : lo + (hi - lo) * i / (steps - 1));
    }
  } else {
    Vec v = parse_point(s);
    for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  }
  return out;
}

Window parse_window(const std::string& s) {
  double lo, hi;
  if (std::sscanf(s.c_str(), "%lg,%lg", &lo, &hi) != 2 &&
      std::sscanf(s.c_str(), "%lg:%lg", &lo, &hi) != 2) {
    throw MalformedInput("bad window spec: " + s);
  }
  if (lo >= hi) throw MalformedInput("window lo must be below hi");
  return {lo, hi};
}

void check_grid_size(int m, const std::string& flag) {
  if (m < 16 || m > 65536 || (m & (m - 1)) != 0) {
    throw MalformedInput(flag + " must be a power of two in [16, 65536]");
  }
}

DensityKind parse_density(const std::string& s) {
  if (s == "busemann") return DensityKind::Busemann;
  if (s == "holmes-thompson") return DensityKind::HolmesThompson;
  throw MalformedInput("density must be busemann or holmes-thompson");
}

int default_workers() {
  if (const char* env = std::getenv("HILBERT_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1) return w;
  }
  return 1;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void emit(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw MalformedInput("cannot write output file: " + out_path);
    f << text;
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json report_to_json(const EstimateReport& rep) {
  return json{{"kind", to_string(rep.kind)},
              {"value", rep.value},
              {"window", {rep.window_lo, rep.window_hi}},
              {"residual", rep.residual},
              {"verdict", rep.verdict}};
}

struct Options {
  std::string body_path;
  std::string curve_path;
  std::string out_path;
  std::string center_str, p_str, q_str, point_str;
  std::string density_str = "busemann";
  std::string radii_str;
  std::string window_str;
  std::string experiment_kind;
  int grid = 0;
  int radial = 32;
  int n = 2;
  int k = 16;
  double r = 1.0;
  std::uint64_t seed = 1;
  int workers = default_workers();
  bool slow = false;
  std::string config_string;  // serialized invocation, hashed for provenance
};

DensityModel make_model(const Options& opt, int dim) {
  DensityModel model = DensityModel::defaults(parse_density(opt.density_str), dim);
  if (opt.grid > 0) {
    check_grid_size(opt.grid, "--grid");
    model.grid = direction_grid(dim, opt.grid);
  }
  return model;
}

VolumeConfig make_volume_config(const Options& opt, int dim) {
  VolumeConfig config = VolumeConfig::defaults(dim);
  if (opt.grid > 0) {
    check_grid_size(opt.grid, "--grid");
    config.angular = opt.grid;
  }
  config.radial = opt.radial;
  config.workers = opt.workers;
  return config;
}

int cmd_validate(const Options& opt) {
  try {
    BodyPtr body = body_from_file(opt.body_path);
    validate_proper(*body);
  } catch (const ImproperBody& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 3;
  }
  std::cout << "ok\n";
  return 0;
}

int cmd_distance(const Options& opt) {
  BodyPtr body = body_from_file(opt.body_path);
  double d = hilbert_distance(*body, parse_point(opt.p_str), parse_point(opt.q_str));
  std::cout << fmt(d) << "\n";
  return 0;
}

int cmd_density(const Options& opt) {
  BodyPtr body = body_from_file(opt.body_path);
  Vec p = parse_point(opt.point_str);
  DensityModel model = make_model(opt, body->dim());
  double coarse = density(*body, p, model);
  double fine = density(*body, p, model.doubled());
  std::cout << fmt(fine) << " " << fmt(richardson_error(coarse, fine)) << "\n";
  return 0;
}

int cmd_ball_volume(const Options& opt) {
  BodyPtr body = body_from_file(opt.body_path);
  Vec x = opt.center_str.empty() ? body->witness() : parse_point(opt.center_str);
  auto v = ball_volume(*body, x, opt.r, make_model(opt, body->dim()),
                       make_volume_config(opt, body->dim()));
  std::cout << fmt(v.value) << " " << fmt(v.err) << "\n";
  return 0;
}

int cmd_growth(const Options& opt) {
  BodyPtr body = body_from_file(opt.body_path);
  Vec x = opt.center_str.empty() ? body->witness() : parse_point(opt.center_str);
  GrowthCurve curve = growth_curve(*body, x, parse_radii(opt.radii_str),
                                   make_model(opt, body->dim()),
                                   make_volume_config(opt, body->dim()), opt.body_path);
  emit(curve_to_csv(curve), opt.out_path);
  return 0;
}

GrowthCurve load_curve(const Options& opt) {
  std::ifstream in(opt.curve_path);
  if (!in) throw MalformedInput("cannot open curve file: " + opt.curve_path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return curve_from_csv(text);
}

int cmd_estimate(const Options& opt, EstimateKind kind) {
  GrowthCurve curve = load_curve(opt);
  Window window = opt.window_str.empty() ? default_window(curve) : parse_window(opt.window_str);
  EstimateReport rep;
  switch (kind) {
    case EstimateKind::Asvol:
      rep = asvol_estimate(curve, opt.n, window);
      break;
    case EstimateKind::Entropy:
      rep = entropy_estimate(curve, window);
      break;
    case EstimateKind::PolEnt:
      rep = polent_estimate(curve, window);
      break;
  }
  json j = report_to_json(rep);
  j["config_hash"] = fnv1a(opt.config_string);
  emit(j.dump(2) + "\n", opt.out_path);
  return 0;
}

int cmd_classify(const Options& opt) {
  GrowthCurve curve = load_curve(opt);
  Window window = opt.window_str.empty() ? default_window(curve) : parse_window(opt.window_str);
  std::cout << to_string(classify_growth(curve, opt.n, window)) << "\n";
  return 0;
}

int cmd_experiment(const Options& opt) {
  BodyPtr body = body_from_file(opt.body_path);
  Vec x = opt.center_str.empty() ? body->witness() : parse_point(opt.center_str);
  json j;
  j["experiment"] = opt.experiment_kind;
  j["config_hash"] = fnv1a(opt.config_string);

  if (opt.experiment_kind == "separation" || opt.experiment_kind == "packing" ||
      opt.experiment_kind == "packing-volume") {
    PackingConfig config;
    config.body = body;
    config.center = x;
    config.boundary_points = boundary_points_smooth(*body, x, opt.k);
    config.radius = opt.r;
    config.model = make_model(opt, body->dim());
    config.volume = make_volume_config(opt, body->dim());
    if (opt.experiment_kind == "separation") {
      j["min_separation"] = separation_scan(config);
      j["radius"] = opt.r;
      j["exceeds_radius"] = separation_scan(config) > opt.r;
    } else if (opt.experiment_kind == "packing") {
      PackingCheck check = packing_check(config);
      j["r_ok"] = check.r_ok;
      j["disjoint"] = check.disjoint;
      j["included"] = check.included;
      j["min_center_separation"] = check.min_center_separation;
    } else {
      PackingVolumeBound bound = packing_volume_bound(config, opt.slow);
      j["lhs"] = bound.lhs;
      j["rhs"] = bound.rhs;
      j["holds"] = bound.holds;
      if (!bound.off_center_volumes.empty()) j["off_center_volumes"] = bound.off_center_volumes;
    }
  } else if (opt.experiment_kind == "invariance") {
    Rng rng(opt.seed);
    std::vector<std::pair<Vec, Vec>> pairs;
    for (int i = 0; i < 64; ++i) {
      pairs.emplace_back(rng.interior_point(*body), rng.interior_point(*body));
    }
    std::vector<ProjectiveMap> maps;
    maps.push_back(ProjectiveMap::identity(body->dim()));
    for (int i = 0; i < 8; ++i) {
      Mat linear = Mat::Identity(body->dim(), body->dim());
      Vec shift = Vec::Zero(body->dim());
      for (int a = 0; a < body->dim(); ++a) {
        shift[a] = rng.uniform(-0.3, 0.3);
        for (int b = 0; b < body->dim(); ++b) {
          linear(a, b) += rng.uniform(-0.2, 0.2);
        }
      }
      maps.push_back(ProjectiveMap::affine(linear, shift));
    }
    InvarianceResult result = invariance_scan(body, maps, pairs);
    j["max_delta"] = result.max_delta;
    j["skipped_maps"] = result.skipped_maps;
  } else if (opt.experiment_kind == "section") {
    if (!opt.slow) throw MalformedInput("section experiment is SLOW; pass --slow to run it");
    if (body->dim() != 3) throw UnsupportedDimension("section experiment needs a 3-D body");
    SectionSpec section{x, Vec::Unit(3, 2)};
    std::vector<double> radii = opt.radii_str.empty() ? std::vector<double>{2, 3, 4, 5, 6}
                                                      : parse_radii(opt.radii_str);
    Window window = opt.window_str.empty() ? Window{radii.front(), radii.back()}
                                           : parse_window(opt.window_str);
    VolumeConfig config = make_volume_config(opt, 3);
    SectionEntropyResult result =
        section_entropy_check(body, section, radii, window, make_model(opt, 3), config);
    j["ent_section"] = result.ent_section;
    j["ent_body"] = result.ent_body;
    j["holds"] = result.holds;
  } else {
    throw MalformedInput("unknown experiment kind: " + opt.experiment_kind);
  }
  emit(j.dump(2) + "\n", opt.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert-geometry volume growth toolkit"};
  app.require_subcommand(1);
  Options opt;

  std::ostringstream cfg;
  for (int i = 1; i < argc; ++i) cfg << argv[i] << "\x1f";
  opt.config_string = cfg.str();

  auto add_common = [&](CLI::App* sub, bool needs_body) {
    if (needs_body) sub->add_option("--body", opt.body_path, "body JSON file")->required();
    sub->add_option("--out", opt.out_path, "also write the result to this file");
    sub->add_option("--workers", opt.workers, "worker threads (must not affect output)");
    sub->add_option("--grid", opt.grid, "direction-grid size (power of two, 16..65536)");
    sub->add_option("--radial", opt.radial, "radial Gauss-Legendre order");
    sub->add_option("--density", opt.density_str, "busemann|holmes-thompson");
    sub->add_option("--seed", opt.seed, "RNG seed for sampling scans");
  };

  auto* validate = app.add_subcommand("validate", "schema + properness checks");
  validate->add_option("--body", opt.body_path)->required();

  auto* distance = app.add_subcommand("distance", "Hilbert distance between two points");
  add_common(distance, true);
  distance->add_option("--p", opt.p_str)->required();
  distance->add_option("--q", opt.q_str)->required();

  auto* dens = app.add_subcommand("density", "volume density at a point");
  add_common(dens, true);
  dens->add_option("--point", opt.point_str)->required();

  auto* ball = app.add_subcommand("ball-volume", "metric-ball volume");
  add_common(ball, true);
  ball->add_option("--center", opt.center_str);
  ball->add_option("--r", opt.r)->required();

  auto* growth = app.add_subcommand("growth", "growth curve as CSV (r,volume,err)");
  add_common(growth, true);
  growth->add_option("--center", opt.center_str);
  growth->add_option("--radii", opt.radii_str, "list 1,2,4 or min:max:steps")->required();

  auto* estimate = app.add_subcommand("estimate", "estimator over a growth-curve CSV");
  std::string estimate_kind = "asvol";
  estimate->add_option("--curve", opt.curve_path)->required();
  estimate->add_option("--kind", estimate_kind, "asvol|entropy|polent");
  estimate->add_option("--n", opt.n, "ambient dimension for asvol");
  estimate->add_option("--window", opt.window_str, "lo,hi (default: top half)");
  estimate->add_option("--out", opt.out_path);

  auto* classify = app.add_subcommand("classify", "growth classification of a curve CSV");
  classify->add_option("--curve", opt.curve_path)->required();
  classify->add_option("--n", opt.n);
  classify->add_option("--window", opt.window_str);

  auto* experiment = app.add_subcommand("experiment", "packing / invariance / section runs");
  add_common(experiment, true);
  experiment->add_option("--center", opt.center_str);
  experiment->add_option("--kind", opt.experiment_kind,
                         "separation|packing|packing-volume|invariance|section")
      ->required();
  experiment->add_option("--k", opt.k, "number of extremal boundary points");
  experiment->add_option("--R", opt.r, "packing radius");
  experiment->add_option("--radii", opt.radii_str);
  experiment->add_option("--window", opt.window_str);
  experiment->add_flag("--slow", opt.slow, "enable SLOW experiments / extra volumes");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(opt);
    if (distance->parsed()) return cmd_distance(opt);
    if (dens->parsed()) return cmd_density(opt);
    if (ball->parsed()) return cmd_ball_volume(opt);
    if (growth->parsed()) return cmd_growth(opt);
    if (estimate->parsed()) {
      EstimateKind kind = estimate_kind == "entropy"  ? EstimateKind::Entropy
                          : estimate_kind == "polent" ? EstimateKind::PolEnt
                                                      : EstimateKind::Asvol;
      if (estimate_kind != "asvol" && estimate_kind != "entropy" && estimate_kind != "polent") {
        throw MalformedInput("unknown estimator kind: " + estimate_kind);
      }
      return cmd_estimate(opt, kind);
    }
    if (classify->parsed()) return cmd_classify(opt);
    if (experiment->parsed()) return cmd_experiment(opt);
  } catch (const Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
