#include "tilt/inner_solver.hpp"

#include <cmath>
#include <limits>

#include "tilt/error.hpp"
#include "tilt/kernels.hpp"

namespace tilt {

namespace {

constexpr double kMaxCondition = 1e10;

void zero_outside(Matrix& m, const Mask& support) {
  m = support.select(m, 0.0);
}

// Deterministic tiny perturbation used for the single SVD retry.
Matrix jitter(const Matrix& m) {
  Matrix out = m;
  const double scale = 1e-12 * std::max(1.0, m.norm());
  for (Eigen::Index e = 0; e < out.size(); ++e) {
    out.data()[e] += scale * std::sin(1.0 + 12.9898 * static_cast<double>(e));
  }
  return out;
}

}  // namespace

double shrink(double x, double mu) {
  const double a = std::abs(x) - mu;
  return a > 0.0 ? std::copysign(a, x) : 0.0;
}

Matrix shrink(const Matrix& m, double mu) {
  Matrix out = m;
  kernels::soft_threshold(out, mu);
  return out;
}

Matrix svd_shrink(const Matrix& m, double mu, double* nuclear) {
  if (mu < 0.0) raise(ErrorCode::InvalidArgument, "shrinkage level must be nonnegative");
  const Svd svd = thin_svd(m);
  Eigen::Index keep = 0;
  while (keep < svd.S.size() && svd.S[keep] > mu) ++keep;
  const Vector s = (svd.S.head(keep).array() - mu).matrix();
  if (nuclear) *nuclear = s.sum();
  if (keep == 0) return Matrix::Zero(m.rows(), m.cols());
  return svd.U.leftCols(keep) * s.asDiagonal() * svd.V.leftCols(keep).transpose();
}

double nuclear_norm(const Matrix& m) { return singular_values(m).sum(); }

Matrix SymmetryMap::project(const Matrix& m) const {
  Matrix out = m;
  if (flip_rows) out = 0.5 * (out + out.colwise().reverse().eval());
  if (flip_cols) out = 0.5 * (out + out.rowwise().reverse().eval());
  return out;
}

double SymmetryMap::violation(const Matrix& m) const {
  const double norm = m.norm();
  if (norm == 0.0) return 0.0;
  double worst = 0.0;
  if (flip_rows) worst = std::max(worst, (m - m.colwise().reverse()).norm() / norm);
  if (flip_cols) worst = std::max(worst, (m - m.rowwise().reverse()).norm() / norm);
  return worst;
}

void AdmSchedule::validate() const {
  if (!(rho > 1.0)) raise(ErrorCode::InvalidArgument, "ADM rho must exceed 1");
  if (max_iters < 1) raise(ErrorCode::InvalidArgument, "ADM max_iters must be >= 1");
  if (!(tol > 0.0)) raise(ErrorCode::InvalidArgument, "ADM tol must be positive");
}

void LinearizedProblem::validate() const {
  if (D.size() == 0) raise(ErrorCode::InvalidArgument, "empty data matrix");
  if (J.rows() != D.size()) raise(ErrorCode::InvalidArgument, "Jacobian rows must equal m*n");
  if (!(lambda > 0.0)) raise(ErrorCode::InvalidArgument, "lambda must be positive");
  if (!constraints.empty() && constraints.cols() != J.cols()) {
    raise(ErrorCode::InvalidArgument, "constraint width does not match the Jacobian");
  }
  if (support && (support->rows() != D.rows() || support->cols() != D.cols())) {
    raise(ErrorCode::InvalidArgument, "support mask shape does not match D");
  }
}

ConstrainedStep::ConstrainedStep(const Matrix& J, const Matrix& A_eq, bool strict)
    : N_(nullspace_basis(A_eq, J.cols())) {
  if (N_.cols() == 0) return;
  pinv_ = PseudoInverse(J * N_);
  if (strict && !(pinv_.condition() <= kMaxCondition)) {
    raise(ErrorCode::PoorlyConditionedJacobian,
          "cond(J N) = " + std::to_string(pinv_.condition()));
  }
}

Vector ConstrainedStep::solve(const Eigen::Ref<const Vector>& b) const {
  if (N_.cols() == 0) return Vector::Zero(N_.rows());
  return N_ * pinv_.solve(b);
}

Vector constrained_pinv_step(const Matrix& J, const Matrix& A_eq, const Matrix& target) {
  if (target.size() != J.rows()) raise(ErrorCode::InvalidArgument, "target size must equal J rows");
  const Matrix A = A_eq.size() == 0 ? Matrix(0, J.cols()) : A_eq;
  return ConstrainedStep(J, A).solve(vec(target));
}

Decomposition solve_inner(const LinearizedProblem& prob, const AdmSchedule& sched) {
  prob.validate();
  sched.validate();
  const Eigen::Index m = prob.D.rows();
  const Eigen::Index n = prob.D.cols();
  const Eigen::Index p = prob.J.cols();

  // An all-true mask is the unmasked problem; dropping it keeps the two paths identical.
  const Mask* omega = prob.support && !prob.support->all() ? &*prob.support : nullptr;

  Matrix D = prob.D;
  Matrix J = prob.J;
  if (omega) {
    zero_outside(D, *omega);
    for (Eigen::Index e = 0; e < J.rows(); ++e) {
      if (!omega->data()[e]) J.row(e).setZero();
    }
  }
  const Matrix A = prob.constraints.empty() ? Matrix(0, p) : prob.constraints.A_eq;
  const ConstrainedStep step(J, A, prob.strict_conditioning);

  const double d_norm = D.norm();
  double mu = sched.mu0;
  if (!(mu > 0.0)) {
    const Vector s = singular_values(D);
    mu = s.size() > 0 && s[0] > 0.0 ? 1.25 / s[0] : 1.0;
  }

  Decomposition dec;
  dec.jacobian_condition = step.basis().cols() > 0 ? step.condition() : 0.0;
  dec.I0 = Matrix::Zero(m, n);
  dec.E = Matrix::Zero(m, n);
  dec.Y = Matrix::Zero(m, n);
  dec.dtau = Vector::Zero(p);
  Matrix Jd = Matrix::Zero(m, n);

  Decomposition best;
  double best_residual = std::numeric_limits<double>::infinity();
  double nuclear = 0.0;

  for (int k = 1; k <= sched.max_iters; ++k) {
    const double inv_mu = 1.0 / mu;

    Matrix T = D + Jd - dec.E + inv_mu * dec.Y;
    if (omega) T = omega->select(T, dec.I0);
    if (prob.symmetry.active()) T = prob.symmetry.project(T);
    try {
      dec.I0 = svd_shrink(T, inv_mu, &nuclear);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SvdFailure) throw;
      dec.I0 = svd_shrink(jitter(T), inv_mu, &nuclear);
    }
    // Shrinking a reflection-invariant target gives an invariant result up
    // to rounding; projecting again makes it exact.
    if (prob.symmetry.active()) dec.I0 = prob.symmetry.project(dec.I0);

    dec.E = shrink(D + Jd - dec.I0 + inv_mu * dec.Y, prob.lambda * inv_mu);
    if (omega) zero_outside(dec.E, *omega);

    Matrix target = -D + dec.I0 + dec.E - inv_mu * dec.Y;
    if (omega) zero_outside(target, *omega);
    dec.dtau = step.solve(vec(target));
    vec(Jd) = J * dec.dtau;

    Matrix R = D + Jd - dec.I0 - dec.E;
    if (omega) zero_outside(R, *omega);
    dec.Y += mu * R;

    const double r = R.norm();
    const double l1 = dec.E.lpNorm<1>();
    dec.residual_trace.push_back(r);
    dec.diagnostics.push_back({k, r, nuclear, l1, mu});
    dec.iters = k;
    dec.objective = nuclear + prob.lambda * l1;
    mu *= sched.rho;

    if (r <= sched.tol * d_norm) {
      dec.converged = true;
      return dec;
    }
    if (r < best_residual) {
      best_residual = r;
      best.I0 = dec.I0;
      best.E = dec.E;
      best.dtau = dec.dtau;
      best.Y = dec.Y;
      best.objective = dec.objective;
    }
  }
  // Not converged: hand back the most feasible iterate, flagged.
  dec.I0 = std::move(best.I0);
  dec.E = std::move(best.E);
  dec.dtau = std::move(best.dtau);
  dec.Y = std::move(best.Y);
  dec.objective = best.objective;
  dec.converged = false;
  return dec;
}

void write_diagnostics_csv(const Decomposition& dec, std::ostream& os) {
  os << "iter,residual,nuclear_norm,l1_norm,mu\n";
  os.precision(17);
  for (const AdmIterate& it : dec.diagnostics) {
    os << it.iter << ',' << it.residual << ',' << it.nuclear << ',' << it.l1 << ',' << it.mu
       << '\n';
  }
}

}  // namespace tilt
