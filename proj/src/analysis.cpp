#include "sheetgrasp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "sheetgrasp/rng.hpp"
#include "sheetgrasp/units.hpp"

namespace sheetgrasp {

namespace {

// Applies one axis value to the request / sheet material in place.
void apply_axis_value(const std::string& name, double value, GraspRequest& req,
                      Material& mat) {
  if (name == "gsm") {
    mat = Material::from_gsm(mat.name, value, mat.mu0, mat.mu1, mat.width,
                             mat.youngs_modulus, mat.volumetric_density);
  } else if (name == "x_mm") {
    req.x = mm_to_m(value);
  } else if (name == "theta_deg") {
    req.tilt = deg_to_rad(value);
  } else if (name == "distance_mm") {
    req.distance = mm_to_m(value);
  } else if (name == "wrinkle_mm") {
    req.wrinkle_length = mm_to_m(value);
  } else if (name == "protrusion_mm") {
    req.protrusion = mm_to_m(value);
  } else if (name == "normal_force_N") {
    req.normal_force = value;
  } else {
    throw std::invalid_argument("sweep: unknown axis " + name);
  }
}

}  // namespace

std::size_t FeasibilityMap::cell_count() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.values.size();
  return axes.empty() ? 0 : n;
}

std::size_t FeasibilityMap::index_of(const std::vector<std::size_t>& idx) const {
  if (idx.size() != axes.size()) throw std::invalid_argument("index_of: rank mismatch");
  std::size_t flat = 0;
  for (std::size_t d = 0; d < axes.size(); ++d) {
    if (idx[d] >= axes[d].values.size()) throw std::out_of_range("index_of: index out of range");
    flat = flat * axes[d].values.size() + idx[d];
  }
  return flat;
}

FeasibilityMap sweep(const SweepSpec& spec, const Scene& scene, const GripperModel& gripper) {
  if (spec.axes.empty()) throw std::invalid_argument("sweep: empty grid");
  for (const auto& a : spec.axes) {
    if (a.values.empty()) throw std::invalid_argument("sweep: axis " + a.name + " has no values");
    // Validate the axis name up front so a typo aborts instead of silently
    // producing an all-invalid map.
    GraspRequest probe = spec.base;
    Material m = scene.sheet.material;
    try {
      apply_axis_value(a.name, a.values.front(), probe, m);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (...) {
      // value-level problems are per-cell concerns
    }
  }

  FeasibilityMap map;
  map.strategy = spec.strategy;
  map.axes = spec.axes;
  map.threshold = spec.threshold;
  map.seed = spec.seed;
  map.trials = spec.trials;

  const std::size_t total = map.cell_count();
  map.cells.resize(total);

  std::vector<std::size_t> idx(spec.axes.size(), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    MapCell& cell = map.cells[flat];
    cell.coordinates.resize(spec.axes.size());
    for (std::size_t d = 0; d < spec.axes.size(); ++d) {
      cell.coordinates[d] = spec.axes[d].values[idx[d]];
    }

    GraspRequest req = spec.base;
    req.strategy = spec.strategy;
    Scene local = scene;
    bool applied = true;
    try {
      for (std::size_t d = 0; d < spec.axes.size(); ++d) {
        apply_axis_value(spec.axes[d].name, cell.coordinates[d], req, local.sheet.material);
      }
    } catch (const std::exception&) {
      applied = false;
    }

    if (applied) {
      try {
        GraspPlan p = plan(req, local, gripper);
        cell.feasible = p.feasible;
        cell.reason = p.reason;
        cell.margins = p.margins;
      } catch (const std::exception&) {
        cell.feasible = false;
        cell.reason = ReasonCode::invalid_input;
      }
      if (spec.trials > 0) {
        cell.estimate = monte_carlo_success(req, local, gripper, spec.perturbation,
                                            spec.trials, spec.seed, flat);
      }
    } else {
      cell.feasible = false;
      cell.reason = ReasonCode::invalid_input;
      if (spec.trials > 0) cell.estimate = 0.0;
    }

    for (std::size_t d = spec.axes.size(); d-- > 0;) {
      if (++idx[d] < spec.axes[d].values.size()) break;
      idx[d] = 0;
    }
  }

  classify_workspace(map);
  return map;
}

double monte_carlo_success(const GraspRequest& req, const Scene& scene,
                           const GripperModel& gripper, const PerturbationSpec& spec,
                           int trials, std::uint64_t seed, std::uint64_t cell_index) {
  if (trials < 1) throw std::invalid_argument("monte_carlo_success: trials must be >= 1");
  int successes = 0;
  for (int t = 0; t < trials; ++t) {
    SplitMix64 rng(mix_seed(seed, cell_index, static_cast<std::uint64_t>(t)));
    // Fixed draw order keeps streams stable across strategies.
    const double d_mu0 = rng.symmetric(spec.rel_mu0);
    const double d_mu1 = rng.symmetric(spec.rel_mu1);
    const double d_fn = rng.symmetric(spec.rel_normal_force);
    const double d_x = rng.symmetric(spec.abs_position);
    const double d_dist = rng.symmetric(spec.abs_position);
    const double d_prot = rng.symmetric(spec.abs_position);

    Scene local = scene;
    Material& m = local.sheet.material;
    m.mu0 = std::max(0.0, m.mu0 * (1.0 + d_mu0));
    m.mu1 = std::max(0.0, m.mu1 * (1.0 + d_mu1));
    if (local.table_mu1) local.table_mu1 = std::max(0.0, *local.table_mu1 * (1.0 + d_mu1));

    GraspRequest r = req;
    r.normal_force = std::max(0.0, r.normal_force * (1.0 + d_fn));
    if (r.x) r.x = *r.x + d_x;
    if (r.distance) r.distance = *r.distance + d_dist;
    if (r.protrusion) r.protrusion = *r.protrusion + d_prot;

    try {
      if (plan(r, local, gripper).feasible) ++successes;
    } catch (const std::exception&) {
      // A perturbed command that leaves the valid domain is a failed trial.
    }
  }
  return static_cast<double>(successes) / static_cast<double>(trials);
}

void classify_workspace(FeasibilityMap& map) {
  for (auto& cell : map.cells) {
    cell.in_workspace = cell.estimate ? (*cell.estimate >= map.threshold) : cell.feasible;
  }
}

const char* surface_str(SurfaceQuality q) {
  switch (q) {
    case SurfaceQuality::any: return "any";
    case SurfaceQuality::good: return "good";
    case SurfaceQuality::best: return "best";
  }
  return "?";
}

const char* pose_control_str(PlacePoseControl p) {
  switch (p) {
    case PlacePoseControl::none: return "none";
    case PlacePoseControl::edge_ok: return "edge_ok";
    case PlacePoseControl::full: return "full";
  }
  return "?";
}

const char* size_class_str(SizeClass s) {
  return s == SizeClass::within_workspace ? "within_workspace" : "exceeds_workspace";
}

std::optional<SurfaceQuality> surface_from_str(const std::string& s) {
  if (s == "any") return SurfaceQuality::any;
  if (s == "good") return SurfaceQuality::good;
  if (s == "best") return SurfaceQuality::best;
  return std::nullopt;
}

std::optional<PlacePoseControl> pose_control_from_str(const std::string& s) {
  if (s == "none") return PlacePoseControl::none;
  if (s == "edge_ok") return PlacePoseControl::edge_ok;
  if (s == "full") return PlacePoseControl::full;
  return std::nullopt;
}

std::optional<SizeClass> size_class_from_str(const std::string& s) {
  if (s == "within_workspace") return SizeClass::within_workspace;
  if (s == "exceeds_workspace") return SizeClass::exceeds_workspace;
  return std::nullopt;
}

std::optional<std::string> strategy_rejection(Strategy s, const TaskRequirements& req) {
  if (!(req.gsm > 0.0)) throw std::invalid_argument("select: gsm must be positive");

  // Grammage reach: pressing strategies top out at 230 g; the wall and edge
  // strategies take heavier grades.
  if ((s == Strategy::top_grasp || s == Strategy::top_scoop) && req.gsm > 230.0) {
    return "grammage above the 230 g pressing cap";
  }

  // Achievable surface quality: scoop and pinch mark the sheet.
  if (req.surface == SurfaceQuality::best && s != Strategy::edge_grasp) {
    return "cannot guarantee the best surface quality";
  }
  if (req.surface == SurfaceQuality::good &&
      (s == Strategy::top_grasp || s == Strategy::top_scoop)) {
    return "cannot guarantee a good surface quality";
  }

  // Place-pose control: only the edge grasp yields a fully controlled place
  // pose; pressing strategies end in an edge-held sheet.
  if (req.pose_control == PlacePoseControl::full && s != Strategy::edge_grasp) {
    return "cannot control the final place pose";
  }
  if (req.pose_control == PlacePoseControl::edge_ok && s == Strategy::wall_grasp) {
    return "cannot deliver an edge-held place pose";
  }

  // Sheet size: sliding against a wall or past the edge needs the whole
  // motion inside the arm workspace.
  if (req.size == SizeClass::exceeds_workspace &&
      (s == Strategy::wall_grasp || s == Strategy::edge_grasp)) {
    return "sheet exceeds the reachable workspace";
  }
  return std::nullopt;
}

std::vector<StrategyChoice> select_strategy(const TaskRequirements& req) {
  static constexpr Strategy preference[] = {Strategy::top_grasp, Strategy::edge_grasp,
                                            Strategy::top_scoop, Strategy::wall_grasp};
  std::vector<StrategyChoice> out;
  std::string rejections;
  for (Strategy s : preference) {
    if (auto why = strategy_rejection(s, req)) {
      rejections += strategy_label(s) + ": " + *why + "; ";
    } else {
      char gsm_txt[32];
      std::snprintf(gsm_txt, sizeof(gsm_txt), "%g", req.gsm);
      out.push_back({s, strategy_label(s) + " handles " + gsm_txt +
                            " g/m^2, surface=" + surface_str(req.surface) +
                            ", pose=" + pose_control_str(req.pose_control) +
                            ", size=" + size_class_str(req.size)});
    }
  }
  if (out.empty()) {
    throw NoStrategyError("no strategy fits the requirements: " + rejections);
  }
  return out;
}

}  // namespace sheetgrasp
