#include "tilt/constraints.hpp"

#include <cmath>

#include "tilt/error.hpp"

namespace tilt {

ConstraintSet ConstraintSet::none(Eigen::Index params) {
  return {Matrix(0, params), Vector(0)};
}

ConstraintSet ConstraintSet::stacked(const ConstraintSet& other) const {
  if (other.cols() != cols()) raise(ErrorCode::InvalidArgument, "constraint widths differ");
  ConstraintSet out{Matrix(rows() + other.rows(), cols()), Vector(rows() + other.rows())};
  out.A_eq << A_eq, other.A_eq;
  out.rhs << rhs, other.rhs;
  return out;
}

ConstraintSet ConstraintSet::reduced(double rel_tol) const {
  if (empty()) return *this;
  Eigen::JacobiSVD<Matrix> svd(A_eq, Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > rel_tol * s[0] && s[i] > 0.0) ++rank;
  }
  return {svd.matrixV().leftCols(rank).transpose(), Vector::Zero(rank)};
}

const char* to_string(ConstraintMode mode) {
  switch (mode) {
    case ConstraintMode::Auto: return "auto";
    case ConstraintMode::None: return "none";
    case ConstraintMode::CenterOnly: return "center";
    case ConstraintMode::CenterAndScale: return "center_and_scale";
    case ConstraintMode::ScaleOnly: return "scale";
    case ConstraintMode::ProjectiveFixedCorners: return "fixed_corners";
  }
  return "unknown";
}

namespace {

void require_affine(const TransformParams& tau, const char* what) {
  if (tau.group() != TransformGroup::Affine) {
    raise(ErrorCode::UnsupportedGroup, std::string(what) + " is defined for affine transforms");
  }
}

}  // namespace

ConstraintSet translation_constraints(const TransformParams& tau, const WindowSpec& window) {
  require_affine(tau, "translation_constraints");
  const Point2& x0 = window.center;
  ConstraintSet c{Matrix::Zero(2, 6), Vector::Zero(2)};
  c.A_eq.row(0) << x0.x(), 0.0, x0.y(), 0.0, 1.0, 0.0;
  c.A_eq.row(1) << 0.0, x0.x(), 0.0, x0.y(), 0.0, 1.0;
  return c;
}

ConstraintSet scale_constraints(const TransformParams& tau, const WindowSpec& /*window*/) {
  require_affine(tau, "scale_constraints");
  const Vector& p = tau.params();
  const double a11 = p[0], a21 = p[1], a12 = p[2], a22 = p[3];
  const double det = a11 * a22 - a12 * a21;
  if (det == 0.0) raise(ErrorCode::DegenerateTransform, "scale constraints at singular A");
  const double sign = det > 0.0 ? 1.0 : -1.0;
  ConstraintSet c{Matrix::Zero(2, 6), Vector::Zero(2)};
  c.A_eq.row(0) << sign * a22, -sign * a12, -sign * a21, sign * a11, 0.0, 0.0;
  c.A_eq.row(1) << 2.0 * a11, 2.0 * a21, -2.0 * a12, -2.0 * a22, 0.0, 0.0;
  return c;
}

ConstraintSet projective_fixed_point_constraints(const TransformParams& tau, const Point2& p1,
                                                 const Point2& p2) {
  if (tau.group() != TransformGroup::Projective) {
    raise(ErrorCode::UnsupportedGroup, "fixed-point constraints are defined for homographies");
  }
  if ((p1 - p2).norm() == 0.0) raise(ErrorCode::InvalidArgument, "fixed points must differ");
  ConstraintSet c{Matrix::Zero(4, 8), Vector::Zero(4)};
  const Point2 pts[2] = {p1, p2};
  for (int k = 0; k < 2; ++k) {
    ParamJacobian dp;
    tau.apply(pts[k], &dp);  // raises DegenerateTransform near the line at infinity
    c.A_eq.middleRows(2 * k, 2) = dp;
  }
  return c;
}

ConstraintSet fep_constraints(const TransformParams& tau) {
  if (tau.group() != TransformGroup::RotationalFEP) {
    raise(ErrorCode::UnsupportedGroup, "FEP constraints need a rotational FEP transform");
  }
  const Vector& p = tau.params();
  const double a11 = p[3], a21 = p[4], a12 = p[5], a22 = p[6];
  const double det = a11 * a22 - a12 * a21;
  const double sign = det >= 0.0 ? 1.0 : -1.0;
  ConstraintSet c{Matrix::Zero(3, 7), Vector::Zero(3)};
  c.A_eq(0, 2) = 1.0;
  c.A_eq.row(1) << 0, 0, 0, sign * a22, -sign * a12, -sign * a21, sign * a11;
  // d/dphi of A * R(phi) at phi = 0 is A * [0 -1; 1 0] = [a12 -a11; a22 -a21].
  c.A_eq.row(2) << 0, 0, 0, a12, a22, -a11, -a21;
  return c;
}

ConstraintSet build_constraints(ConstraintMode mode, const TransformParams& tau,
                                const WindowSpec& window) {
  const Eigen::Index p = tau.size();
  if (mode == ConstraintMode::Auto) {
    switch (tau.group()) {
      case TransformGroup::Affine: mode = ConstraintMode::CenterAndScale; break;
      case TransformGroup::Projective: mode = ConstraintMode::ProjectiveFixedCorners; break;
      case TransformGroup::RotationalFEP: return fep_constraints(tau);
    }
  }
  switch (mode) {
    case ConstraintMode::None:
      return ConstraintSet::none(p);
    case ConstraintMode::CenterOnly:
      return translation_constraints(tau, window);
    case ConstraintMode::CenterAndScale:
      return translation_constraints(tau, window).stacked(scale_constraints(tau, window));
    case ConstraintMode::ScaleOnly:
      return scale_constraints(tau, window);
    case ConstraintMode::ProjectiveFixedCorners: {
      const auto corners = window.corners();
      return projective_fixed_point_constraints(tau, corners[0], corners[2]);
    }
    case ConstraintMode::Auto:
      break;
  }
  raise(ErrorCode::InvalidArgument, "unhandled constraint mode");
}

}  // namespace tilt
