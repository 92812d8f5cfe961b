#include "tilt/tilt.hpp"

#include <cmath>

#include "tilt/error.hpp"
#include "tilt/linalg.hpp"

namespace tilt {

void TiltOptions::validate() const {
  if (!(lambda_coeff > 0.0)) raise(ErrorCode::InvalidArgument, "lambda_coeff must be positive");
  if (!(outer_tol > 0.0)) raise(ErrorCode::InvalidArgument, "outer_tol must be positive");
  if (outer_max_iters < 1) raise(ErrorCode::InvalidArgument, "outer_max_iters must be >= 1");
  inner.validate();
}

double TiltOptions::lambda_for(Eigen::Index rows, Eigen::Index cols) const {
  return lambda_coeff / std::sqrt(static_cast<double>(std::max(rows, cols)));
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::StepConverged: return "step_converged";
    case StopReason::ObjectiveStalled: return "objective_stalled";
    case StopReason::MaxIterations: return "max_iterations";
    case StopReason::Diverged: return "diverged";
    case StopReason::BoundaryHit: return "boundary_hit";
  }
  return "unknown";
}

SamplingGrid grid_for(const TransformParams& tau, const WindowSpec& window) {
  if (tau.group() == TransformGroup::RotationalFEP) return SamplingGrid::from_fep(tau.fep_grid());
  return SamplingGrid::from_window(window);
}

namespace {

ConstraintMode effective_mode(const TiltOptions& opts, const TransformParams& tau) {
  ConstraintMode mode = opts.constraints;
  if (!opts.symmetry.active()) return mode;
  // A symmetric window may slide to the symmetry centre, so the centre is not pinned.
  if (tau.group() == TransformGroup::Affine &&
      (mode == ConstraintMode::Auto || mode == ConstraintMode::CenterAndScale)) {
    return ConstraintMode::ScaleOnly;
  }
  if (mode == ConstraintMode::CenterOnly) return ConstraintMode::None;
  return mode;
}

void check_texture(const Matrix& D, double min_texture) {
  const Matrix centered = D.array() - D.mean();
  const Vector s = singular_values(centered);
  if (s.size() == 0 || s[0] < min_texture) {
    raise(ErrorCode::ZeroWindow, "window is textureless (sigma_max of the mean-removed window " +
                                     std::to_string(s.size() ? s[0] : 0.0) + ")");
  }
}

}  // namespace

SolveResult tilt(const PreparedImage& image, const WindowSpec& window, const TransformParams& tau0,
                 const TiltOptions& opts) {
  opts.validate();
  tau0.validate();
  const SamplingGrid grid = grid_for(tau0, window);

  Linearization lin = linearize(image, tau0, grid);
  const double inside0 = lin.warped.inside_fraction();
  const Eigen::Index outside0 = lin.warped.inside.size() - lin.warped.inside_count();
  if (opts.completion) {
    if (inside0 < 0.3) {
      raise(ErrorCode::InsufficientSupport, "fewer than 30% of window samples lie in the image");
    }
  } else if (inside0 < 0.5) {
    raise(ErrorCode::ImmediateBoundaryFailure,
          "fewer than 50% of window samples lie in the image; try completion");
  }
  check_texture(lin.D, opts.min_texture);

  const double lambda = opts.lambda_for(grid.rows(), grid.cols());
  SolveResult res;
  res.tau = tau0;
  res.inside_fraction = inside0;

  TransformParams tau = tau0;
  bool have_solution = false;
  double prev_objective = 0.0;
  for (int it = 1; it <= opts.outer_max_iters; ++it) {
    if (it > 1) {
      try {
        lin = linearize(image, tau, grid);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ZeroWindow && e.code() != ErrorCode::DegenerateTransform) throw;
        res.stop = StopReason::Diverged;
        break;
      }
      const Eigen::Index outside = lin.warped.inside.size() - lin.warped.inside_count();
      if (!opts.completion && outside > outside0) {
        res.stop = StopReason::BoundaryHit;
        break;
      }
    }

    LinearizedProblem prob;
    prob.D = lin.D;
    prob.J = lin.J;
    prob.lambda = lambda;
    prob.constraints = build_constraints(effective_mode(opts, tau), tau, window);

    if (opts.completion) prob.support = lin.warped.inside;
    prob.symmetry = opts.symmetry;
    prob.strict_conditioning = false;
    const Decomposition dec = solve_inner(prob, opts.inner);

    res.I0 = dec.I0;
    res.E = dec.E;
    res.window_norm = lin.norm;
    res.tau = tau;
    res.inside_fraction = lin.warped.inside_fraction();
    res.objective_trace.push_back(dec.objective);
    res.inner_iters.push_back(dec.iters);
    res.outer_iters = it;
    have_solution = true;

    const TransformParams next = tau.plus(dec.dtau);
    if (!next.satisfies_invariants()) {
      res.stop = StopReason::Diverged;
      break;
    }
    const double step = dec.dtau.norm();
    const bool small_step = step < opts.outer_tol * (1.0 + tau.params().norm());
    const bool stalled = it > 1 && std::abs(prev_objective - dec.objective) < opts.objective_tol;
    tau = next;
    res.tau = tau;
    prev_objective = dec.objective;
    if (small_step || stalled) {
      res.stop = small_step ? StopReason::StepConverged : StopReason::ObjectiveStalled;
      res.converged = true;
      break;
    }
    if (it == opts.outer_max_iters) res.stop = StopReason::MaxIterations;
  }
  if (!have_solution) raise(ErrorCode::DegenerateTransform, "no valid iterate");
  if (res.I0.norm() > 0.0) res.final_rank = thresholded_rank(res.I0);
  return res;
}

SolveResult tilt(const Image& image, const WindowSpec& window, const TransformParams& tau0,
                 const TiltOptions& opts) {
  return tilt(PreparedImage::from(image), window, tau0, opts);
}

SuccessScore success_metric(const TransformParams& tau_est, const TransformParams& tau_true,
                            const WindowSpec& window, double threshold, Quotient quotient) {
  const TransformParams c = compose(tau_est.inverse(), tau_true);
  const auto corners = window.corners();
  std::array<Point2, 4> mapped;
  for (size_t k = 0; k < 4; ++k) mapped[k] = c.apply(corners[k]);

  // Per axis: least-squares fit of mapped = scale * corner + shift.
  SuccessScore score;
  std::array<Point2, 4> fitted;
  for (int axis = 0; axis < 2; ++axis) {
    double su = 0, sv = 0, suu = 0, suv = 0;
    for (size_t k = 0; k < 4; ++k) {
      const double u = corners[k][axis];
      const double v = mapped[k][axis];
      su += u;
      sv += v;
      suu += u * u;
      suv += u * v;
    }
    const double var = suu - su * su / 4.0;
    const double scale = var > 0.0 ? (suv - su * sv / 4.0) / var : 0.0;
    const double shift = (sv - scale * su) / 4.0;
    for (size_t k = 0; k < 4; ++k) fitted[k][axis] = scale * corners[k][axis] + shift;
    (axis == 0 ? score.scale_x : score.scale_y) = scale;
  }
  const bool x_only = quotient == Quotient::ColumnProfile;
  for (size_t k = 0; k < 4; ++k) {
    const double d = x_only ? std::abs(mapped[k].x() - fitted[k].x()) : (mapped[k] - fitted[k]).norm();
    score.residual = std::max(score.residual, d);
  }
  score.success = score.residual < threshold && score.scale_x > 0.0 && (x_only || score.scale_y > 0.0);
  return score;
}

}  // namespace tilt
