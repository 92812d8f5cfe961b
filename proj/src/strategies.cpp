#include "tilt/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "tilt/error.hpp"
#include "tilt/inner_solver.hpp"

namespace tilt {

int pyramid_depth(const WindowSpec& window, int min_size, int max_extra) {
  int depth = 0;
  double side = std::min(window.rows, window.cols);
  while (depth < max_extra && side / 2.0 >= min_size) {
    side /= 2.0;
    ++depth;
  }
  return depth;
}

namespace {

struct Pyramid {
  std::vector<Image> images;
  std::vector<WindowSpec> windows;
};

Pyramid build_pyramid(const Image& image, const WindowSpec& window) {
  const int depth = pyramid_depth(window);
  Pyramid p;
  p.images = gaussian_pyramid(image, 1, depth);
  p.windows.push_back(window);
  for (size_t k = 1; k < p.images.size(); ++k) p.windows.push_back(p.windows.back().rescaled(0.5));
  return p;
}

double level_scale(size_t level) { return std::ldexp(1.0, -static_cast<int>(level)); }

// Runs levels coarse to fine starting from a level-0 initialization.
SolveResult run_levels(const Pyramid& pyr, const TransformParams& tau0, const TiltOptions& opts) {
  const size_t top = pyr.images.size() - 1;
  TransformParams tau = tau0.rescaled(level_scale(top));
  std::vector<LevelRecord> records;
  std::optional<SolveResult> result;
  for (size_t k = top + 1; k-- > 0;) {
    LevelRecord rec;
    rec.level = static_cast<int>(k);
    rec.image_width = pyr.images[k].width();
    rec.image_height = pyr.images[k].height();
    rec.window_rows = pyr.windows[k].rows;
    rec.window_cols = pyr.windows[k].cols;
    rec.tau_init = tau;
    try {
      result = tilt(pyr.images[k], pyr.windows[k], tau, opts);
      tau = result->tau;
      rec.outer_iters = result->outer_iters;
      rec.converged = result->converged;
      rec.objective = result->objective();
    } catch (const Error&) {
      // A coarse level that cannot be solved just hands its start point on.
      if (k == 0) throw;
    }
    rec.tau_final = tau;
    records.push_back(rec);
    if (k > 0) tau = tau.rescaled(2.0);
  }
  result->levels = std::move(records);
  return std::move(*result);
}

struct BranchOutcome {
  BranchRecord record;
  TransformParams tau_level0;
};

// Coarse levels blur a checkerboard towards cos(x)cos(y), whose 45 degree
// rotation is just as low-rank, so branches are compared at full resolution.
std::optional<double> full_resolution_score(const Image& image, const WindowSpec& window,
                                            const TransformParams& tau) {
  const SampledWindow w = warp_window(image, tau, window);
  const double norm = w.values.norm();
  if (w.inside_fraction() < 0.5 || !(norm > 0.0)) return std::nullopt;
  return nuclear_norm(w.values / norm);
}

bool better(const BranchOutcome& a, const BranchOutcome& b) {
  if (!a.record.ok) return false;
  if (!b.record.ok) return true;
  const double fa = a.record.score;
  const double fb = b.record.score;
  return fa < fb - 1e-3 * std::abs(fb);
}

}  // namespace

SolveResult tilt_multires(const Image& image, const WindowSpec& window, const TransformParams& tau0,
                          const TiltOptions& opts) {
  window.validate();
  return run_levels(build_pyramid(image, window), tau0, opts);
}

BranchGrids BranchGrids::defaults() {
  BranchGrids g;
  for (int d = -60; d <= 60; d += 20) g.theta.push_back(d * std::numbers::pi / 180.0);
  g.t = {-0.6, -0.3, 0.0, 0.3, 0.6};
  return g;
}

SolveResult tilt_branch_and_bound(const Image& image, const WindowSpec& window,
                                  const TiltOptions& opts, const BranchGrids& grids) {
  if (grids.theta.empty() || grids.t.empty()) {
    raise(ErrorCode::InvalidArgument, "branch grids must be nonempty");
  }
  window.validate();
  const Pyramid pyr = build_pyramid(image, window);
  const size_t top = pyr.images.size() - 1;
  const double s = level_scale(top);
  const PreparedImage coarse = PreparedImage::from(pyr.images[top]);
  const WindowSpec& cwin = pyr.windows[top];
  const Point2 c = window.center;

  auto by_magnitude = [](std::vector<double> v) {
    std::stable_sort(v.begin(), v.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && a < b);
    });
    return v;
  };
  const std::vector<double> thetas = by_magnitude(grids.theta);
  const std::vector<double> skews = by_magnitude(grids.t);

  std::vector<BranchRecord> records;
  // Branches are independent coarse-level solves; they run in parallel and
  // are merged in grid order, so the argmin is deterministic.
  auto search = [&](const char* stage, const std::vector<std::pair<double, double>>& params,
                    const std::vector<TransformParams>& inits) {
    std::vector<BranchOutcome> outcomes(inits.size());
#pragma omp parallel for schedule(dynamic) if (inits.size() > 1)
    for (size_t i = 0; i < inits.size(); ++i) {
      BranchOutcome& out = outcomes[i];
      out.record.stage = stage;
      out.record.theta = params[i].first;
      out.record.t = params[i].second;
      out.record.tau_init = inits[i];
      out.tau_level0 = inits[i];
      try {
        const SolveResult r = tilt(coarse, cwin, inits[i].rescaled(s), opts);
        out.record.objective = r.objective();
        out.record.outer_iters = r.outer_iters;
        out.record.ok = r.stop != StopReason::Diverged && r.stop != StopReason::BoundaryHit;
        if (!out.record.ok) {
          out.record.error = to_string(r.stop);
        } else if (const auto score = full_resolution_score(image, window, r.tau.rescaled(1.0 / s))) {
          out.record.score = *score;
        } else {
          out.record.ok = false;
          out.record.error = "branch leaves the image";
        }
      } catch (const Error& e) {
        out.record.error = e.what();
      }
    }
    size_t best = 0;
    for (size_t i = 0; i < outcomes.size(); ++i) {
      records.push_back(outcomes[i].record);
      if (better(outcomes[i], outcomes[best])) best = i;
    }
    return outcomes[best];
  };

  std::vector<std::pair<double, double>> params;
  std::vector<TransformParams> inits;
  for (double th : thetas) {
    params.emplace_back(th, 0.0);
    inits.push_back(branch_parameterization(th, 0.0, c));
  }
  const BranchOutcome best_theta = search("theta", params, inits);
  if (!best_theta.record.ok) raise(ErrorCode::AllBranchesFailed, "every rotation branch failed");
  const double theta_star = best_theta.record.theta;

  params.clear();
  inits.clear();
  for (double t : skews) {
    params.emplace_back(theta_star, t);
    inits.push_back(branch_parameterization(theta_star, t, c));
  }
  BranchOutcome best_x = search("skew_x", params, inits);
  if (!best_x.record.ok) best_x = best_theta;

  inits.clear();
  Eigen::Matrix2d skew = Eigen::Matrix2d::Identity();
  for (double t : skews) {
    skew(1, 0) = t;
    inits.push_back(right_multiply_linear(best_x.tau_level0, skew, c));
  }
  const BranchOutcome best_y = search("skew_y", params, inits);
  const BranchOutcome& winner = better(best_y, best_x) ? best_y : best_x;

  SolveResult result = run_levels(pyr, winner.tau_level0, opts);
  result.branches = std::move(records);
  return result;
}

SolveResult tilt_projective_cascade(const Image& image, const WindowSpec& window,
                                    const TiltOptions& opts, const TransformParams& affine_init) {
  TiltOptions affine_opts = opts;
  if (affine_opts.constraints == ConstraintMode::ProjectiveFixedCorners) {
    affine_opts.constraints = ConstraintMode::Auto;
  }
  const SolveResult affine = tilt_multires(image, window, affine_init, affine_opts);
  TiltOptions proj_opts = opts;
  proj_opts.constraints = ConstraintMode::ProjectiveFixedCorners;
  SolveResult result = tilt_multires(image, window, affine.tau.to_projective(), proj_opts);
  std::vector<LevelRecord> levels = affine.levels;
  levels.insert(levels.end(), result.levels.begin(), result.levels.end());
  result.levels = std::move(levels);
  return result;
}

}  // namespace tilt
