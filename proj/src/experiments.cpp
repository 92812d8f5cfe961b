#include "tilt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "tilt/error.hpp"
#include "tilt/strategies.hpp"

namespace tilt {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::vector<double> arange(double start, double stop, double step) {
  std::vector<double> v;
  const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (int i = 0; i < n; ++i) v.push_back(start + i * step);
  return v;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

// Largest value whose whole prefix passes; -1 when the first one fails.
double onset(const std::vector<double>& values, const Eigen::Ref<const Vector>& passed) {
  double last = -1.0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(passed[static_cast<Eigen::Index>(i)] > 0.5)) break;
    last = values[i];
  }
  return last;
}

}  // namespace

ExperimentGrid ExperimentGrid::defaults() {
  ExperimentGrid g;
  g.theta = arange(0.0, std::numbers::pi / 6.0, std::numbers::pi / 60.0);
  g.t = arange(0.0, 1.0, 0.05);
  return g;
}

WindowSpec Scene::window_spec() const {
  const int x0 = (image_size - window) / 2;
  return WindowSpec::from_pixels(x0, x0, window, window);
}

AffineRocResult roc_affine_experiment(const AffineRocConfig& c) {
  const ExperimentGrid& g = c.grid;
  if (g.theta.empty() || g.t.empty() || g.trials_per_cell < 1) {
    raise(ErrorCode::ConfigError, "experiment grid must be nonempty");
  }
  const WindowSpec win = c.scene.window_spec();
  const Point2 center = win.center;
  const size_t cells = g.theta.size() * g.t.size();
  const size_t jobs = cells * static_cast<size_t>(g.trials_per_cell);
  std::vector<TrialRecord> trials(jobs);

#pragma omp parallel for schedule(dynamic)
  for (size_t job = 0; job < jobs; ++job) {
    const size_t cell = job / g.trials_per_cell;
    const int trial = static_cast<int>(job % g.trials_per_cell);
    const double theta = g.theta[cell / g.t.size()];
    const double t = g.t[cell % g.t.size()];
    std::mt19937_64 rng = trial_rng(g.seed, cell, static_cast<std::uint64_t>(trial));
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, c.scene.square);
    const double th = theta + sym(rng) * c.jitter * (std::numbers::pi / 6.0);
    const double tt = t + sym(rng) * c.jitter;
    Point2 origin = center;
    if (c.random_phase) origin += Point2(phase(rng), phase(rng));

    const TransformParams truth = branch_parameterization(th, tt, center);
    const Image img = render_deformed(checkerboard_texture(c.scene.square, 0.1, 0.9, origin),
                                      c.scene.image_size, c.scene.image_size, truth,
                                      c.scene.supersample);
    TrialRecord& rec = trials[job];
    rec.theta = theta;
    rec.t = t;
    rec.trial = trial;
    try {
      const SolveResult r = tilt_multires(img, win, TransformParams::identity(), c.opts);
      const SuccessScore s = success_metric(r.tau, truth, win);
      rec.residual = s.residual;
      rec.success = s.success;
      rec.outer_iters = r.outer_iters;
    } catch (const Error&) {
      rec.residual = std::numeric_limits<double>::infinity();
      rec.success = false;
    }
  }

  AffineRocResult out;
  out.success_rate = Matrix::Zero(static_cast<Eigen::Index>(g.theta.size()),
                                  static_cast<Eigen::Index>(g.t.size()));
  for (size_t job = 0; job < jobs; ++job) {
    const size_t cell = job / g.trials_per_cell;
    if (trials[job].success) {
      out.success_rate(static_cast<Eigen::Index>(cell / g.t.size()),
                       static_cast<Eigen::Index>(cell % g.t.size())) += 1.0 / g.trials_per_cell;
    }
  }
  out.trials = std::move(trials);
  return out;
}

ProjectiveRocConfig ProjectiveRocConfig::defaults() {
  ProjectiveRocConfig c;
  c.axis_angles = arange(0.0, 90.0 * kDeg, 5.0 * kDeg);
  c.rotation_amounts = arange(0.0, 90.0 * kDeg, 5.0 * kDeg);
  return c;
}

ProjectiveRocResult roc_projective_experiment(const ProjectiveRocConfig& c) {
  if (c.axis_angles.empty() || c.rotation_amounts.empty()) {
    raise(ErrorCode::ConfigError, "projective ROC needs axes and amounts");
  }
  const WindowSpec win = c.scene.window_spec();
  const Point2 center = win.center;
  const double depth = c.depth_factor * c.scene.window;
  const auto na = static_cast<Eigen::Index>(c.axis_angles.size());
  const auto nr = static_cast<Eigen::Index>(c.rotation_amounts.size());
  ProjectiveRocResult out;
  out.axis_angles = c.axis_angles;
  out.rotation_amounts = c.rotation_amounts;
  out.plain_success = Matrix::Constant(na, nr, -1.0);
  out.cascade_success = Matrix::Constant(na, nr, -1.0);

  TiltOptions plain_opts = c.opts;
  plain_opts.constraints = ConstraintMode::ProjectiveFixedCorners;
  const Texture texture = checkerboard_texture(c.scene.square, 0.1, 0.9, center);

  // One job per (axis, method); each sweeps the amounts in order.
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index job = 0; job < 2 * na; ++job) {
    const Eigen::Index a = job / 2;
    const bool cascade = job % 2 == 1;
    Matrix& row_store = cascade ? out.cascade_success : out.plain_success;
    for (Eigen::Index k = 0; k < nr; ++k) {
      const double axis = c.axis_angles[a];
      const double amount = c.rotation_amounts[k];
      const TransformParams truth = perspective_homography(axis, amount, depth, center);
      const Image img = render_texture(texture, c.scene.image_size, c.scene.image_size,
                                       perspective_inverse(axis, amount, depth, center),
                                       c.scene.supersample);
      bool ok = false;
      try {
        const SolveResult r =
            cascade ? tilt_projective_cascade(img, win, c.opts)
                    : tilt_multires(img, win, TransformParams::identity(TransformGroup::Projective),
                                    plain_opts);
        ok = success_metric(r.tau, truth, win).success;
      } catch (const Error&) {
        ok = false;
      }
      row_store(a, k) = ok ? 1.0 : 0.0;
      if (!ok && c.stop_at_first_failure) break;
    }
  }
  for (Eigen::Index a = 0; a < na; ++a) {
    out.plain_onset.push_back(onset(c.rotation_amounts, out.plain_success.row(a).transpose()));
    out.cascade_onset.push_back(onset(c.rotation_amounts, out.cascade_success.row(a).transpose()));
  }
  return out;
}

std::vector<std::string> texture_names() {
  return {"checkerboard", "edge", "corner", "stripes", "glyph", "low_contrast"};
}

Texture make_texture(const std::string& name, const Point2& origin, double square) {
  if (name == "checkerboard") return checkerboard_texture(square, 0.1, 0.9, origin);
  if (name == "low_contrast") return checkerboard_texture(square, 0.4, 0.6, origin);
  if (name == "edge") return edge_texture(origin);
  if (name == "corner") return corner_texture(origin);
  if (name == "stripes") return grid_lines_texture(square, 0.25 * square, origin);
  if (name == "glyph") return glyph_texture(square, 0.25 * square, 2.0, origin);
  raise(ErrorCode::ConfigError, "unknown texture '" + name + "'");
}

Quotient texture_quotient(const std::string& name) {
  return name == "edge" ? Quotient::ColumnProfile : Quotient::ScaleTranslation;
}

RobustnessConfig RobustnessConfig::defaults() {
  RobustnessConfig c;
  c.fractions = arange(0.0, 1.0, 0.05);
  return c;
}

TrialRecord robustness_trial(const std::string& texture, double fraction, double theta,
                             std::uint64_t seed, const Scene& scene, const TiltOptions& opts) {
  const WindowSpec win = scene.window_spec();
  std::mt19937_64 rng(seed);
  // Single-feature textures stay near the window centre; periodic ones get a random phase.
  const bool periodic = texture != "edge" && texture != "corner";
  std::uniform_real_distribution<double> phase(0.0, periodic ? scene.square : 0.1 * scene.window);
  Point2 offset(phase(rng), phase(rng));
  if (!periodic) offset -= Point2::Constant(0.05 * scene.window);
  const TransformParams truth = branch_parameterization(theta, 0.0, win.center);
  const Image clean = render_deformed(make_texture(texture, win.center + offset, scene.square),
                                      scene.image_size, scene.image_size, truth, scene.supersample);
  const Image img = corrupt_random(clean, fraction, rng());
  TrialRecord rec;
  rec.theta = theta;
  try {
    const SolveResult r = tilt_multires(img, win, TransformParams::identity(), opts);
    const SuccessScore s = success_metric(r.tau, truth, win, 1.0, texture_quotient(texture));
    rec.residual = s.residual;
    rec.success = s.success;
    rec.outer_iters = r.outer_iters;
  } catch (const Error&) {
    rec.residual = std::numeric_limits<double>::infinity();
  }
  return rec;
}

RobustnessResult robustness_experiment(const RobustnessConfig& c) {
  if (c.textures.empty() || c.fractions.empty() || c.trials < 1) {
    raise(ErrorCode::ConfigError, "robustness config needs textures, fractions and trials");
  }
  for (const std::string& name : c.textures) make_texture(name, Point2::Zero(), c.scene.square);
  const auto nt = static_cast<Eigen::Index>(c.textures.size());
  const auto nf = static_cast<Eigen::Index>(c.fractions.size());
  RobustnessResult out;
  out.textures = c.textures;
  out.fractions = c.fractions;
  out.success_rate = Matrix::Constant(nt, nf, std::numeric_limits<double>::quiet_NaN());

  // One job per texture; fractions are swept in order so the early stop is deterministic.
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index ti = 0; ti < nt; ++ti) {
    for (Eigen::Index fi = 0; fi < nf; ++fi) {
      int wins = 0;
      for (int trial = 0; trial < c.trials; ++trial) {
        std::mt19937_64 rng = trial_rng(c.seed, static_cast<std::uint64_t>(ti * nf + fi),
                                        static_cast<std::uint64_t>(trial));
        if (robustness_trial(c.textures[ti], c.fractions[fi], c.theta, rng(), c.scene, c.opts)
                .success) {
          ++wins;
        }
      }
      const double rate = static_cast<double>(wins) / c.trials;
      out.success_rate(ti, fi) = rate;
      if (rate < c.pass_rate && c.stop_at_first_failure) break;
    }
  }
  for (Eigen::Index ti = 0; ti < nt; ++ti) {
    const Vector passed = (out.success_rate.row(ti).array() >= c.pass_rate).cast<double>().transpose();
    out.tolerated.push_back(onset(c.fractions, passed));
  }
  return out;
}

TpcaResult tpca_experiment(const TpcaConfig& c) {
  const WindowSpec win = c.scene.window_spec();
  const TransformParams truth = branch_parameterization(c.theta, c.t, win.center);
  const Image img = render_deformed(checkerboard_texture(c.scene.square, 0.1, 0.9, win.center),
                                    c.scene.image_size, c.scene.image_size, truth,
                                    c.scene.supersample);
  TpcaResult out;
  out.ranks = c.ranks;
  for (int r : c.ranks) {
    double residual = std::numeric_limits<double>::infinity();
    bool ok = false;
    try {
      const SolveResult res = transformed_pca_baseline(img, win, TransformParams::identity(), r, c.opts);
      const SuccessScore s = success_metric(res.tau, truth, win);
      residual = s.residual;
      ok = s.success;
    } catch (const Error&) {
    }
    out.residual.push_back(residual);
    out.success.push_back(ok);
  }
  try {
    const SolveResult res = tilt_multires(img, win, TransformParams::identity(), c.opts);
    const SuccessScore s = success_metric(res.tau, truth, win);
    out.tilt_residual = s.residual;
    out.tilt_success = s.success;
  } catch (const Error&) {
    out.tilt_residual = std::numeric_limits<double>::infinity();
  }
  return out;
}

// ---- scenarios ----------------------------------------------------------------

Scenario boundary_scenario(double outside, double theta) {
  if (!(outside >= 0.0 && outside < 0.5)) raise(ErrorCode::InvalidArgument, "outside must lie in [0, 0.5)");
  const Scene scene;
  const double half = 0.5 * scene.window;
  // Leftmost corner of the true window relative to its centre.
  const TransformParams shape = branch_parameterization(theta, 0.0, Point2::Zero());
  double reach = 0.0;
  for (double sx : {-half, half})
    for (double sy : {-half, half}) reach = std::min(reach, shape.apply(Point2(sx, sy)).x());
  WindowSpec window = WindowSpec::from_pixels(0, scene.image_size / 2 - scene.window / 2, scene.window, scene.window);
  window.center.x() = -0.5 - outside * scene.window - reach;
  const TransformParams truth = branch_parameterization(theta, 0.0, window.center);
  return {render_deformed(checkerboard_texture(scene.square, 0.1, 0.9, window.center),
                          scene.image_size * 3 / 4, scene.image_size, truth, scene.supersample),
          window, truth};
}

Scenario off_center_scenario(const Point2& offset, double theta) {
  constexpr int kSize = 240;
  constexpr double kSquare = 16.0;
  const Point2 c(0.5 * (kSize - 1), 0.5 * (kSize - 1));
  // A square centre sits at c, so a window centred there is mirror symmetric in both axes.
  const Point2 corner = c - Point2(0.5 * kSquare, 0.5 * kSquare);
  WindowSpec window;
  window.center = c + offset;
  window.half_extents = {40.0, 40.0};
  window.rows = 80;
  window.cols = 80;
  const TransformParams truth = branch_parameterization(theta, 0.0, c);
  return {render_deformed(checkerboard_texture(kSquare, 0.1, 0.9, corner), kSize, kSize, truth, 4),
          window, truth};
}

double window_symmetry_violation(const Image& image, const TransformParams& tau,
                                 const WindowSpec& window, const SymmetryMap& symmetry) {
  return symmetry.violation(warp_window(image, tau, window).values);
}

// ---- claim checks -----------------------------------------------------------

namespace {

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

}  // namespace

std::vector<ClaimCheck> check_claims(const AffineRocResult& r, const AffineRocConfig& c) {
  ClaimCheck claim{"roc-affine: theta <= 20 deg, t <= 0.4 succeed in >= 95% of trials", true, ""};
  int cells = 0;
  double worst = 1.0;
  for (size_t i = 0; i < c.grid.theta.size(); ++i) {
    for (size_t j = 0; j < c.grid.t.size(); ++j) {
      if (c.grid.theta[i] > 20.0 * kDeg + 1e-9 || c.grid.t[j] > 0.4 + 1e-9) continue;
      const double rate = r.success_rate(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      ++cells;
      if (rate < worst) worst = rate;
      if (rate < 0.95 && claim.passed) {
        claim.passed = false;
        claim.detail = fmt("first failing cell theta=%.0f deg t=%.2f rate=%.2f; ",
                           c.grid.theta[i] / kDeg, c.grid.t[j], rate);
      }
    }
  }
  if (cells == 0) {
    claim.passed = false;
    claim.detail = "grid has no cell inside the claimed region";
  } else {
    claim.detail += fmt("%.0f cells, worst rate %.2f", cells, worst);
  }
  return {claim};
}

std::vector<ClaimCheck> check_claims(const ProjectiveRocResult& r) {
  double plain_min = std::numeric_limits<double>::infinity();
  double cascade_min = plain_min;
  bool dominates = true;
  bool strictly = false;
  for (size_t a = 0; a < r.plain_onset.size(); ++a) {
    plain_min = std::min(plain_min, r.plain_onset[a]);
    cascade_min = std::min(cascade_min, r.cascade_onset[a]);
    if (r.cascade_onset[a] < r.plain_onset[a]) dominates = false;
    if (r.cascade_onset[a] > r.plain_onset[a]) strictly = true;
  }
  const bool any = !r.plain_onset.empty();
  return {
      {"roc-projective: plain projective TILT succeeds up to >= 45 deg on every axis",
       any && plain_min >= 45.0 * kDeg - 1e-9, fmt("min onset %.0f deg", plain_min / kDeg)},
      {"roc-projective: cascade succeeds up to >= 55 deg on every axis",
       any && cascade_min >= 55.0 * kDeg - 1e-9, fmt("min onset %.0f deg", cascade_min / kDeg)},
      {"roc-projective: cascade onset >= plain on every axis, > on some axis",
       any && dominates && strictly,
       std::string(dominates ? "dominates" : "does not dominate") +
           (strictly ? ", strictly somewhere" : ", never strictly")},
  };
}

std::vector<ClaimCheck> check_claims(const RobustnessResult& r) {
  std::vector<ClaimCheck> out;
  const auto index = [&](const std::string& name) -> std::optional<size_t> {
    for (size_t i = 0; i < r.textures.size(); ++i) {
      if (r.textures[i] == name) return i;
    }
    return std::nullopt;
  };
  const auto board = index("checkerboard");
  ClaimCheck at30{"robustness: checkerboard rectified at 30% corruption in >= 80% of trials", false,
                  "checkerboard or fraction 0.3 not in the sweep"};
  if (board) {
    for (size_t f = 0; f < r.fractions.size(); ++f) {
      if (std::abs(r.fractions[f] - 0.3) > 1e-9) continue;
      const double rate = r.success_rate(static_cast<Eigen::Index>(*board), static_cast<Eigen::Index>(f));
      at30.passed = rate >= 0.8 - 1e-12;
      at30.detail = std::isnan(rate) ? "sweep stopped before 30%" : fmt("rate %.2f", rate);
    }
  }
  out.push_back(at30);
  for (const char* name : {"low_contrast", "glyph"}) {
    const auto other = index(name);
    if (!board || !other) continue;
    const double tb = r.tolerated[*board];
    const double to = r.tolerated[*other];
    out.push_back({std::string("robustness: ") + name + " tolerates less corruption than checkerboard",
                   to < tb, fmt("%.2f vs %.2f", to, tb)});
  }
  return out;
}

std::vector<ClaimCheck> check_claims(const TpcaResult& r) {
  std::vector<ClaimCheck> out;
  for (size_t i = 0; i < r.ranks.size(); ++i) {
    const int rank = r.ranks[i];
    if (rank > 3) continue;
    const bool want = rank == 2;
    out.push_back({"tpca-baseline: rank " + std::to_string(rank) + (want ? " succeeds" : " fails"),
                   r.success[i] == want, fmt("residual %.3f px", r.residual[i])});
  }
  out.push_back({"tpca-baseline: TILT succeeds without a rank guess", r.tilt_success,
                 fmt("residual %.3f px", r.tilt_residual)});
  return out;
}

// ---- JSON configs ---------------------------------------------------------

namespace {

void check_keys(const Json& j, const std::set<std::string>& allowed, const char* what) {
  if (!j.is_object()) raise(ErrorCode::ConfigError, std::string(what) + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) {
      raise(ErrorCode::ConfigError, std::string("unknown key '") + item.key() + "' in " + what);
    }
  }
}

template <typename T>
void read(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception& e) {
    raise(ErrorCode::ConfigError, std::string("bad value for '") + key + "': " + e.what());
  }
}

std::vector<double> degrees(const std::vector<double>& v) {
  std::vector<double> out;
  for (double d : v) out.push_back(d * kDeg);
  return out;
}

std::vector<double> to_degrees(const std::vector<double>& v) {
  std::vector<double> out;
  for (double r : v) out.push_back(r / kDeg);
  return out;
}

Scene scene_from(const Json& j, Scene s) {
  if (!j.contains("scene")) return s;
  const Json& k = j.at("scene");
  check_keys(k, {"image_size", "window", "square", "supersample"}, "scene");
  read(k, "image_size", s.image_size);
  read(k, "window", s.window);
  read(k, "square", s.square);
  read(k, "supersample", s.supersample);
  if (s.window < 8 || s.image_size < s.window || !(s.square > 0.0) || s.supersample < 1) {
    raise(ErrorCode::ConfigError, "invalid scene geometry");
  }
  return s;
}

Json scene_json(const Scene& s) {
  return {{"image_size", s.image_size}, {"window", s.window}, {"square", s.square},
          {"supersample", s.supersample}};
}

Json options_json(const TiltOptions& o) {
  return {{"lambda_coeff", o.lambda_coeff}, {"outer_max_iters", o.outer_max_iters},
          {"outer_tol", o.outer_tol},       {"inner_max_iters", o.inner.max_iters},
          {"inner_tol", o.inner.tol},       {"rho", o.inner.rho}};
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (std::isnan(m(i, k))) {
        row.push_back(nullptr);
      } else {
        row.push_back(m(i, k));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TiltOptions tilt_options_from_json(const Json& j, TiltOptions o) {
  check_keys(j, {"lambda_coeff", "outer_max_iters", "outer_tol", "inner_max_iters", "inner_tol", "rho"},
             "options");
  read(j, "lambda_coeff", o.lambda_coeff);
  read(j, "outer_max_iters", o.outer_max_iters);
  read(j, "outer_tol", o.outer_tol);
  read(j, "inner_max_iters", o.inner.max_iters);
  read(j, "inner_tol", o.inner.tol);
  read(j, "rho", o.inner.rho);
  try {
    o.validate();
  } catch (const Error& e) {
    raise(ErrorCode::ConfigError, e.what());
  }
  return o;
}

AffineRocConfig affine_roc_config_from_json(const Json& j) {
  check_keys(j, {"theta_deg", "t", "trials_per_cell", "seed", "jitter", "random_phase", "scene",
                 "options"},
             "roc-affine config");
  AffineRocConfig c;
  if (j.contains("theta_deg")) {
    std::vector<double> th;
    read(j, "theta_deg", th);
    c.grid.theta = degrees(th);
  }
  read(j, "t", c.grid.t);
  read(j, "trials_per_cell", c.grid.trials_per_cell);
  read(j, "seed", c.grid.seed);
  read(j, "jitter", c.jitter);
  read(j, "random_phase", c.random_phase);
  c.scene = scene_from(j, c.scene);
  if (j.contains("options")) c.opts = tilt_options_from_json(j.at("options"));
  if (c.grid.theta.empty() || c.grid.t.empty() || c.grid.trials_per_cell < 1 || c.jitter < 0.0) {
    raise(ErrorCode::ConfigError, "invalid roc-affine grid");
  }
  return c;
}

ProjectiveRocConfig projective_roc_config_from_json(const Json& j) {
  check_keys(j, {"axis_deg", "amount_deg", "depth_factor", "stop_at_first_failure", "scene", "options"},
             "roc-projective config");
  ProjectiveRocConfig c = ProjectiveRocConfig::defaults();
  std::vector<double> v;
  if (j.contains("axis_deg")) {
    read(j, "axis_deg", v);
    c.axis_angles = degrees(v);
  }
  if (j.contains("amount_deg")) {
    read(j, "amount_deg", v);
    c.rotation_amounts = degrees(v);
  }
  read(j, "depth_factor", c.depth_factor);
  read(j, "stop_at_first_failure", c.stop_at_first_failure);
  c.scene = scene_from(j, c.scene);
  if (j.contains("options")) c.opts = tilt_options_from_json(j.at("options"));
  if (c.axis_angles.empty() || c.rotation_amounts.empty() || !(c.depth_factor > 0.5)) {
    raise(ErrorCode::ConfigError, "invalid roc-projective config");
  }
  return c;
}

RobustnessConfig robustness_config_from_json(const Json& j) {
  check_keys(j, {"textures", "fractions", "trials", "seed", "theta_deg", "pass_rate",
                 "stop_at_first_failure", "scene", "options"},
             "robustness config");
  RobustnessConfig c = RobustnessConfig::defaults();
  read(j, "textures", c.textures);
  read(j, "fractions", c.fractions);
  read(j, "trials", c.trials);
  read(j, "seed", c.seed);
  if (j.contains("theta_deg")) {
    double d = 0.0;
    read(j, "theta_deg", d);
    c.theta = d * kDeg;
  }
  read(j, "pass_rate", c.pass_rate);
  read(j, "stop_at_first_failure", c.stop_at_first_failure);
  c.scene = scene_from(j, c.scene);
  if (j.contains("options")) c.opts = tilt_options_from_json(j.at("options"));
  if (c.textures.empty() || c.fractions.empty() || c.trials < 1) {
    raise(ErrorCode::ConfigError, "invalid robustness config");
  }
  for (double f : c.fractions) {
    if (!(f >= 0.0 && f <= 1.0)) raise(ErrorCode::ConfigError, "fractions must lie in [0, 1]");
  }
  for (const std::string& name : c.textures) make_texture(name, Point2::Zero(), 1.0);
  return c;
}

TpcaConfig tpca_config_from_json(const Json& j) {
  check_keys(j, {"theta_deg", "t", "ranks", "scene", "options"}, "tpca-baseline config");
  TpcaConfig c;
  if (j.contains("theta_deg")) {
    double d = 0.0;
    read(j, "theta_deg", d);
    c.theta = d * kDeg;
  }
  read(j, "t", c.t);
  read(j, "ranks", c.ranks);
  c.scene = scene_from(j, c.scene);
  if (j.contains("options")) c.opts = tilt_options_from_json(j.at("options"));
  for (int r : c.ranks) {
    if (r < 1) raise(ErrorCode::ConfigError, "ranks must be >= 1");
  }
  return c;
}

Json to_json(const AffineRocResult& r, const AffineRocConfig& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["experiment"] = "roc-affine";
  j["config"] = {{"theta_deg", to_degrees(c.grid.theta)},
                 {"t", c.grid.t},
                 {"trials_per_cell", c.grid.trials_per_cell},
                 {"seed", c.grid.seed},
                 {"jitter", c.jitter},
                 {"random_phase", c.random_phase},
                 {"scene", scene_json(c.scene)},
                 {"options", options_json(c.opts)},
                 {"texture", "synthetic checkerboard 0.1/0.9"}};
  j["success_rate"] = matrix_json(r.success_rate);
  return j;
}

Json to_json(const ProjectiveRocResult& r, const ProjectiveRocConfig& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["experiment"] = "roc-projective";
  j["config"] = {{"axis_deg", to_degrees(c.axis_angles)},
                 {"amount_deg", to_degrees(c.rotation_amounts)},
                 {"camera", {{"focal_length", c.depth_factor * c.scene.window},
                             {"depth", c.depth_factor * c.scene.window}}},
                 {"stop_at_first_failure", c.stop_at_first_failure},
                 {"scene", scene_json(c.scene)},
                 {"options", options_json(c.opts)}};
  j["plain_onset_deg"] = to_degrees(r.plain_onset);
  j["cascade_onset_deg"] = to_degrees(r.cascade_onset);
  j["plain_success"] = matrix_json(r.plain_success);
  j["cascade_success"] = matrix_json(r.cascade_success);
  return j;
}

Json to_json(const RobustnessResult& r, const RobustnessConfig& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["experiment"] = "robustness";
  j["config"] = {{"textures", c.textures},
                 {"fractions", c.fractions},
                 {"trials", c.trials},
                 {"seed", c.seed},
                 {"theta_deg", c.theta / kDeg},
                 {"pass_rate", c.pass_rate},
                 {"scene", scene_json(c.scene)},
                 {"options", options_json(c.opts)},
                 {"texture_set", "synthetic substitutes"}};
  j["success_rate"] = matrix_json(r.success_rate);
  Json tol = Json::object();
  for (size_t i = 0; i < r.textures.size(); ++i) tol[r.textures[i]] = r.tolerated[i];
  j["tolerated_fraction"] = tol;
  return j;
}

Json to_json(const TpcaResult& r, const TpcaConfig& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["experiment"] = "tpca-baseline";
  j["config"] = {{"theta_deg", c.theta / kDeg}, {"t", c.t}, {"ranks", c.ranks},
                 {"scene", scene_json(c.scene)}, {"options", options_json(c.opts)}};
  Json rows = Json::array();
  for (size_t i = 0; i < r.ranks.size(); ++i) {
    rows.push_back({{"rank", r.ranks[i]},
                    {"residual", std::isfinite(r.residual[i]) ? Json(r.residual[i]) : Json(nullptr)},
                    {"success", static_cast<bool>(r.success[i])}});
  }
  j["baseline"] = rows;
  j["tilt"] = {{"residual", std::isfinite(r.tilt_residual) ? Json(r.tilt_residual) : Json(nullptr)},
               {"success", r.tilt_success}};
  return j;
}

}  // namespace tilt
