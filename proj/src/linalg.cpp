#include "tilt/linalg.hpp"

#include <lapacke.h>

#include <limits>

#include "tilt/error.hpp"

namespace tilt {

Svd thin_svd(const Matrix& m) {
  const lapack_int rows = static_cast<lapack_int>(m.rows());
  const lapack_int cols = static_cast<lapack_int>(m.cols());
  const lapack_int k = std::min(rows, cols);
  Svd out{Matrix(rows, k), Vector(k), Matrix(cols, k)};
  if (k == 0) return out;
  Matrix a = m;
  Matrix vt(k, cols);
  const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', rows, cols, a.data(), rows,
                                         out.S.data(), out.U.data(), rows, vt.data(), k);
  if (info != 0) {
    raise(ErrorCode::SvdFailure, "dgesdd returned info=" + std::to_string(info));
  }
  out.V = vt.transpose();
  return out;
}

Vector singular_values(const Matrix& m) {
  const lapack_int rows = static_cast<lapack_int>(m.rows());
  const lapack_int cols = static_cast<lapack_int>(m.cols());
  const lapack_int k = std::min(rows, cols);
  Vector s(k);
  if (k == 0) return s;
  Matrix a = m;
  const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, a.data(), rows,
                                         s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) {
    raise(ErrorCode::SvdFailure, "dgesdd returned info=" + std::to_string(info));
  }
  return s;
}

Matrix nullspace_basis(const Matrix& A, Eigen::Index cols, double rel_tol) {
  if (A.rows() == 0) return Matrix::Identity(cols, cols);
  if (A.cols() != cols) raise(ErrorCode::InvalidArgument, "constraint matrix has wrong width");
  // Needs the complete right basis, which dgesdd 'S' does not return; A is at
  // most 8 columns wide so Jacobi is fine here.
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  Eigen::Index rank = 0;
  const double smax = s.size() > 0 ? s[0] : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > rel_tol * smax && s[i] > 0.0) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

PseudoInverse::PseudoInverse(const Matrix& m, double rel_cutoff) {
  const Eigen::Index n = m.cols();
  Vector scale = Vector::Ones(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double c = m.col(k).norm();
    if (c > 0.0) scale[k] = 1.0 / c;
  }
  const Matrix scaled = m * scale.asDiagonal();
  const Svd svd = thin_svd(scaled);
  const double smax = svd.S.size() > 0 ? svd.S[0] : 0.0;
  Vector inv = Vector::Zero(svd.S.size());
  rank_ = 0;
  double smin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < svd.S.size(); ++i) {
    smin = std::min(smin, svd.S[i]);
    if (svd.S[i] > rel_cutoff * smax && svd.S[i] > 0.0) {
      inv[i] = 1.0 / svd.S[i];
      ++rank_;
    }
  }
  condition_ = (smax > 0.0 && smin > 0.0) ? smax / smin : std::numeric_limits<double>::infinity();
  if (svd.S.size() < n) condition_ = std::numeric_limits<double>::infinity();
  pinv_ = scale.asDiagonal() * svd.V * inv.asDiagonal() * svd.U.transpose();
}

Vector PseudoInverse::solve(const Eigen::Ref<const Vector>& b) const { return pinv_ * b; }

}  // namespace tilt
