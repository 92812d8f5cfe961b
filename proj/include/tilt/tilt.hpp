#pragma once

#include <string>
#include <vector>

#include "tilt/constraints.hpp"
#include "tilt/image.hpp"
#include "tilt/inner_solver.hpp"
#include "tilt/jacobian.hpp"
#include "tilt/transform.hpp"

namespace tilt {

struct TiltOptions {
  /// lambda = lambda_coeff / sqrt(max(m, n)).
  double lambda_coeff = 1.0;
  AdmSchedule inner;
  int outer_max_iters = 50;
  double outer_tol = 1e-4;
  double objective_tol = 1e-9;
  ConstraintMode constraints = ConstraintMode::Auto;
  /// Restrict data terms to in-image samples instead of zero-filling.
  bool completion = false;
  SymmetryMap symmetry;
  /// Windows whose mean-removed normalized sigma_max is below this are textureless.
  double min_texture = 0.05;

  void validate() const;
  double lambda_for(Eigen::Index rows, Eigen::Index cols) const;
};

enum class StopReason {
  StepConverged,     ///< ||dtau|| < outer_tol (1 + ||tau||)
  ObjectiveStalled,  ///< objective change below objective_tol
  MaxIterations,
  Diverged,          ///< the update left the group's invariant set
  BoundaryHit,       ///< more samples left the image than at the start
};

const char* to_string(StopReason reason);

struct LevelRecord {
  int level = 0;
  int image_width = 0;
  int image_height = 0;
  int window_rows = 0;
  int window_cols = 0;
  TransformParams tau_init;
  TransformParams tau_final;
  int outer_iters = 0;
  bool converged = false;
  double objective = 0.0;
};

struct BranchRecord {
  std::string stage;  ///< "theta", "skew_x" or "skew_y"
  double theta = 0.0;
  double t = 0.0;
  TransformParams tau_init;
  double objective = 0.0;  ///< coarse-level objective
  /// Nuclear norm of the normalized full-resolution window at the branch
  /// solution; branches are ranked by this.
  double score = 0.0;
  int outer_iters = 0;
  bool ok = false;
  std::string error;
};

struct SolveResult {
  TransformParams tau;
  Matrix I0;
  Matrix E;
  /// Frobenius norm of the warped window the final I0, E were computed from.
  double window_norm = 0.0;
  bool converged = false;
  StopReason stop = StopReason::MaxIterations;
  int outer_iters = 0;
  std::vector<double> objective_trace;
  std::vector<int> inner_iters;
  int final_rank = 0;
  double inside_fraction = 1.0;
  std::vector<LevelRecord> levels;
  std::vector<BranchRecord> branches;

  double objective() const { return objective_trace.empty() ? 0.0 : objective_trace.back(); }
};

/// Sampling grid for `tau`: the FEP lattice for rotational maps, the window lattice otherwise.
SamplingGrid grid_for(const TransformParams& tau, const WindowSpec& window);

/// Iterative linearization: warp and normalize, differentiate, solve the
/// convex inner program, update tau additively; repeated until the step or
/// the objective stops changing.
SolveResult tilt(const PreparedImage& image, const WindowSpec& window, const TransformParams& tau0,
                 const TiltOptions& opts = {});
SolveResult tilt(const Image& image, const WindowSpec& window, const TransformParams& tau0,
                 const TiltOptions& opts = {});

/// Which transforms count as equivalent when scoring.
enum class Quotient {
  ScaleTranslation,  ///< axis-aligned scaling plus translation (textures of rank >= 2)
  ColumnProfile,     ///< only the x coordinate is compared (textures constant along y)
};

struct SuccessScore {
  double residual = 0.0;
  bool success = false;
  /// Fitted axis scales of tau_est^-1 o tau_true.
  double scale_x = 0.0;
  double scale_y = 0.0;
};

/// Compares two transforms modulo axis-aligned scaling and translation: fits
/// that subgroup to tau_est^-1 o tau_true at the window corners and reports
/// the worst corner distance in pixels. Success iff it is below `threshold`
/// and the fitted scales are positive. With ColumnProfile only the x
/// coordinate enters the fit and the residual.
SuccessScore success_metric(const TransformParams& tau_est, const TransformParams& tau_true,
                            const WindowSpec& window, double threshold = 1.0,
                            Quotient quotient = Quotient::ScaleTranslation);

}  // namespace tilt
