#include "tilt/serialize.hpp"

#include <initializer_list>
#include <string>

#include "tilt/error.hpp"

namespace tilt {

namespace {

template <typename F>
auto config_guard(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    raise(ErrorCode::ConfigError, e.what());
  }
}

StopReason parse_stop(const std::string& s) {
  for (StopReason r : {StopReason::StepConverged, StopReason::ObjectiveStalled,
                       StopReason::MaxIterations, StopReason::Diverged, StopReason::BoundaryHit}) {
    if (s == to_string(r)) return r;
  }
  raise(ErrorCode::ConfigError, "unknown stop reason '" + s + "'");
}

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) raise(ErrorCode::ConfigError, std::string(what) + " must be an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) raise(ErrorCode::ConfigError, "unknown key '" + item.key() + "' in " + what);
  }
}

}  // namespace

Json to_json(const TransformParams& tau) {
  Json j;
  j["group"] = to_string(tau.group());
  j["params"] = std::vector<double>(tau.params().data(), tau.params().data() + tau.size());
  if (tau.group() == TransformGroup::RotationalFEP) {
    j["fep_grid"] = {{"radial", tau.fep_grid().radial}, {"angular", tau.fep_grid().angular}};
  } else {
    const Eigen::Matrix3d H = tau.homography();
    Json rows = Json::array();
    for (int r = 0; r < 3; ++r) rows.push_back({H(r, 0), H(r, 1), H(r, 2)});
    j["homography"] = rows;
  }
  return j;
}

TransformParams transform_from_json(const Json& j) {
  only_keys(j, {"group", "params", "fep_grid", "homography"}, "transform");
  return config_guard([&] {
    const TransformGroup group = parse_group(j.at("group").get<std::string>());
    const auto p = j.at("params").get<std::vector<double>>();
    FepGrid grid;
    if (group == TransformGroup::RotationalFEP) {
      grid.radial = j.at("fep_grid").at("radial").get<int>();
      grid.angular = j.at("fep_grid").at("angular").get<int>();
    }
    return TransformParams::from_vector(group, Eigen::Map<const Vector>(p.data(), static_cast<Eigen::Index>(p.size())),
                                        grid);
  });
}

Json to_json(const WindowSpec& w) {
  return {{"center", {w.center.x(), w.center.y()}},
          {"half_extents", {w.half_extents.x(), w.half_extents.y()}},
          {"rows", w.rows},
          {"cols", w.cols}};
}

WindowSpec window_from_json(const Json& j) {
  only_keys(j, {"center", "half_extents", "rows", "cols"}, "window");
  return config_guard([&] {
    WindowSpec w;
    w.center = {j.at("center").at(0).get<double>(), j.at("center").at(1).get<double>()};
    w.half_extents = {j.at("half_extents").at(0).get<double>(),
                      j.at("half_extents").at(1).get<double>()};
    w.rows = j.at("rows").get<int>();
    w.cols = j.at("cols").get<int>();
    w.validate();
    return w;
  });
}

Json to_json(const SolveResult& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["transform"] = to_json(r.tau);
  j["converged"] = r.converged;
  j["stop_reason"] = to_string(r.stop);
  j["outer_iterations"] = r.outer_iters;
  j["final_rank"] = r.final_rank;
  j["objective"] = r.objective();
  j["objective_trace"] = r.objective_trace;
  j["inner_iterations"] = r.inner_iters;
  j["inside_fraction"] = r.inside_fraction;
  j["window_norm"] = r.window_norm;
  Json levels = Json::array();
  for (const LevelRecord& l : r.levels) {
    levels.push_back({{"level", l.level},
                      {"image_size", {l.image_width, l.image_height}},
                      {"window_size", {l.window_cols, l.window_rows}},
                      {"tau_init", to_json(l.tau_init)},
                      {"tau_final", to_json(l.tau_final)},
                      {"outer_iterations", l.outer_iters},
                      {"converged", l.converged},
                      {"objective", l.objective}});
  }
  j["levels"] = levels;
  Json branches = Json::array();
  for (const BranchRecord& b : r.branches) {
    branches.push_back({{"stage", b.stage},
                        {"theta", b.theta},
                        {"t", b.t},
                        {"tau_init", to_json(b.tau_init)},
                        {"objective", b.objective},
                        {"score", b.score},
                        {"outer_iterations", b.outer_iters},
                        {"ok", b.ok},
                        {"error", b.error}});
  }
  j["branches"] = branches;
  return j;
}

SolveResult solve_result_from_json(const Json& j) {
  return config_guard([&] {
    if (j.at("schema").get<int>() != kSchemaVersion) {
      raise(ErrorCode::ConfigError, "unsupported result schema");
    }
    SolveResult r;
    r.tau = transform_from_json(j.at("transform"));
    r.converged = j.at("converged").get<bool>();
    r.stop = parse_stop(j.at("stop_reason").get<std::string>());
    r.outer_iters = j.at("outer_iterations").get<int>();
    r.final_rank = j.at("final_rank").get<int>();
    r.objective_trace = j.at("objective_trace").get<std::vector<double>>();
    r.inner_iters = j.at("inner_iterations").get<std::vector<int>>();
    r.inside_fraction = j.at("inside_fraction").get<double>();
    r.window_norm = j.at("window_norm").get<double>();
    for (const Json& l : j.at("levels")) {
      LevelRecord rec;
      rec.level = l.at("level").get<int>();
      rec.image_width = l.at("image_size").at(0).get<int>();
      rec.image_height = l.at("image_size").at(1).get<int>();
      rec.window_cols = l.at("window_size").at(0).get<int>();
      rec.window_rows = l.at("window_size").at(1).get<int>();
      rec.tau_init = transform_from_json(l.at("tau_init"));
      rec.tau_final = transform_from_json(l.at("tau_final"));
      rec.outer_iters = l.at("outer_iterations").get<int>();
      rec.converged = l.at("converged").get<bool>();
      rec.objective = l.at("objective").get<double>();
      r.levels.push_back(rec);
    }
    for (const Json& b : j.at("branches")) {
      BranchRecord rec;
      rec.stage = b.at("stage").get<std::string>();
      rec.theta = b.at("theta").get<double>();
      rec.t = b.at("t").get<double>();
      rec.tau_init = transform_from_json(b.at("tau_init"));
      rec.objective = b.at("objective").get<double>();
      rec.score = b.at("score").get<double>();
      rec.outer_iters = b.at("outer_iterations").get<int>();
      rec.ok = b.at("ok").get<bool>();
      rec.error = b.at("error").get<std::string>();
      r.branches.push_back(rec);
    }
    return r;
  });
}

}  // namespace tilt
