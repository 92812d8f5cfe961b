#pragma once

#include "tilt/types.hpp"

namespace tilt {

/// Thin SVD M = U diag(S) V^T with S sorted descending.
struct Svd {
  Matrix U;
  Vector S;
  Matrix V;
};

/// LAPACK divide-and-conquer SVD. Throws SvdFailure when it does not converge.
Svd thin_svd(const Matrix& m);
Vector singular_values(const Matrix& m);

/// Orthonormal basis (cols x q) of {x : A x = 0}. Rows of A that are
/// numerically dependent are ignored; an empty A gives the identity.
Matrix nullspace_basis(const Matrix& A, Eigen::Index cols, double rel_tol = 1e-10);

/// Truncated pseudo-inverse solve for min ||M x - b||, precomputed once and
/// reused. Columns are equilibrated before factorisation, so `condition()`
/// is insensitive to parameter units.
class PseudoInverse {
 public:
  PseudoInverse() = default;
  explicit PseudoInverse(const Matrix& m, double rel_cutoff = 1e-10);

  Vector solve(const Eigen::Ref<const Vector>& b) const;
  double condition() const { return condition_; }
  Eigen::Index rank() const { return rank_; }
  Eigen::Index cols() const { return pinv_.rows(); }

 private:
  Matrix pinv_;
  double condition_ = 0.0;
  Eigen::Index rank_ = 0;
};

}  // namespace tilt
