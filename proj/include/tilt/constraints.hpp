#pragma once

#include "tilt/image.hpp"
#include "tilt/transform.hpp"
#include "tilt/types.hpp"

namespace tilt {

/// Linear equality constraints A_eq * dtau = 0 on a parameter increment.
struct ConstraintSet {
  Matrix A_eq;
  Vector rhs;

  static ConstraintSet none(Eigen::Index params);
  Eigen::Index rows() const { return A_eq.rows(); }
  Eigen::Index cols() const { return A_eq.cols(); }
  bool empty() const { return A_eq.rows() == 0; }

  ConstraintSet stacked(const ConstraintSet& other) const;
  /// Orthonormal row basis of the same constraint space (dependent rows dropped).
  ConstraintSet reduced(double rel_tol = 1e-10) const;
};

enum class ConstraintMode {
  Auto,  ///< CenterAndScale for affine, ProjectiveFixedCorners for projective, FEP set for rotational
  None,
  CenterOnly,
  CenterAndScale,
  ScaleOnly,
  ProjectiveFixedCorners,
};

const char* to_string(ConstraintMode mode);

/// Keeps tau(x0) stationary, x0 the window centre:
///   x0(1) dA11 + x0(2) dA12 + db1 = 0,  x0(1) dA21 + x0(2) dA22 + db2 = 0.
ConstraintSet translation_constraints(const TransformParams& tau, const WindowSpec& window);

/// Rows: gradient of |det A| and of C(A) = |a1|^2 - |a2|^2 (a1, a2 the
/// columns of A) in the A-parameters, zeros in the b columns.
ConstraintSet scale_constraints(const TransformParams& tau, const WindowSpec& window);

/// Four rows keeping the dehomogenized images of p1 and p2 stationary.
ConstraintSet projective_fixed_point_constraints(const TransformParams& tau, const Point2& p1,
                                                 const Point2& p2);

/// Rotational FEP ambiguities: radius fixed, |det A| fixed, and no
/// infinitesimal rotation A -> A R(phi) (a circular column shift of the FEP).
ConstraintSet fep_constraints(const TransformParams& tau);

ConstraintSet build_constraints(ConstraintMode mode, const TransformParams& tau,
                                const WindowSpec& window);

}  // namespace tilt
