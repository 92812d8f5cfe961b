#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "tilt/constraints.hpp"
#include "tilt/linalg.hpp"
#include "tilt/types.hpp"

namespace tilt {

/// Soft threshold sign(x) max(|x| - mu, 0).
double shrink(double x, double mu);
Matrix shrink(const Matrix& m, double mu);

/// Singular value thresholding: the proximal operator of mu ||.||_*.
/// `nuclear_norm`, when given, receives the nuclear norm of the result.
Matrix svd_shrink(const Matrix& m, double mu, double* nuclear_norm = nullptr);

double nuclear_norm(const Matrix& m);

/// Reflection symmetry of a window: I0(i, j) = I0(m-1-i, j) when
/// `flip_rows`, I0(i, j) = I0(i, n-1-j) when `flip_cols`.
struct SymmetryMap {
  bool flip_rows = false;
  bool flip_cols = false;

  bool active() const { return flip_rows || flip_cols; }
  /// Orthogonal projection onto matrices fixed by every requested reflection.
  Matrix project(const Matrix& m) const;
  /// Largest relative violation ||X - g(X)||_F / ||X||_F over the requested reflections.
  double violation(const Matrix& m) const;
};

struct AdmSchedule {
  double mu0 = 0.0;  ///< <= 0 selects 1.25 / sigma_max(D)
  double rho = 1.25;
  int max_iters = 500;
  double tol = 1e-7;

  void validate() const;
};

/// One linearized convex program:
///   min ||I0||_* + lambda ||E||_1  s.t.  D + J dtau = I0 + E (on the support),
///   A_eq dtau = 0, and I0 fixed by the symmetry map.
struct LinearizedProblem {
  Matrix D;
  Matrix J;
  double lambda = 0.0;
  ConstraintSet constraints;
  std::optional<Mask> support;
  SymmetryMap symmetry;
  /// When false a rank-deficient J N falls back to the minimum-norm step
  /// instead of throwing PoorlyConditionedJacobian.
  bool strict_conditioning = true;

  void validate() const;
};

struct AdmIterate {
  int iter = 0;
  double residual = 0.0;
  double nuclear = 0.0;
  double l1 = 0.0;
  double mu = 0.0;
};

struct Decomposition {
  Matrix I0;
  Matrix E;
  Vector dtau;
  Matrix Y;
  int iters = 0;
  bool converged = false;
  std::vector<double> residual_trace;
  std::vector<AdmIterate> diagnostics;
  double objective = 0.0;
  double jacobian_condition = 0.0;
};

/// Precomputed solver for min ||J dtau - b|| over {dtau : A_eq dtau = 0}.
class ConstrainedStep {
 public:
  ConstrainedStep(const Matrix& J, const Matrix& A_eq, bool strict = true);
  Vector solve(const Eigen::Ref<const Vector>& b) const;
  double condition() const { return pinv_.condition(); }
  const Matrix& basis() const { return N_; }

 private:
  Matrix N_;
  PseudoInverse pinv_;
};

/// dtau = N (J N)^+ vec(target), N an orthonormal nullspace basis of A_eq.
/// Throws PoorlyConditionedJacobian when cond(J N) > 1e10.
Vector constrained_pinv_step(const Matrix& J, const Matrix& A_eq, const Matrix& target);

Decomposition solve_inner(const LinearizedProblem& prob, const AdmSchedule& sched = {});

/// CSV with header iter,residual,nuclear_norm,l1_norm,mu.
void write_diagnostics_csv(const Decomposition& dec, std::ostream& os);

}  // namespace tilt
