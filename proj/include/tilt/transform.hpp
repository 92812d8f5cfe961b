#pragma once

#include <string>

#include "tilt/types.hpp"

namespace tilt {

enum class TransformGroup { Affine, Projective, RotationalFEP };

const char* to_string(TransformGroup group);
TransformGroup parse_group(const std::string& name);

/// Size of the Frieze-expansion grid: `radial` rows by `angular` columns.
struct FepGrid {
  int radial = 0;
  int angular = 0;

  friend bool operator==(const FepGrid&, const FepGrid&) = default;
};

/// d apply(p) / d params, at most 8 columns; fixed capacity keeps the
/// per-pixel Jacobian assembly off the heap.
using ParamJacobian = Eigen::Matrix<double, 2, Eigen::Dynamic, 0, 2, 8>;

/// A point of the transformation group G with its parameter vector.
///
/// Parameter layouts:
///   Affine         [A11, A21, A12, A22, b1, b2]            x -> A x + b
///   Projective     [h11, h12, h13, h21, h22, h23, h31, h32] (row-major H, h33 = 1)
///   RotationalFEP  [cx, cy, R, A11, A21, A12, A22]
///
/// For RotationalFEP a canonical point (x0, y0) is (radial index, angular
/// index) of the FEP grid and maps to
///   A * (R x0/m cos(2 pi y0/n), R x0/m sin(2 pi y0/n)) + c.
class TransformParams {
 public:
  /// The affine identity.
  TransformParams();
  static TransformParams identity(TransformGroup group = TransformGroup::Affine);
  static TransformParams affine(const Eigen::Matrix2d& A, const Point2& b);
  static TransformParams projective(const Eigen::Matrix3d& H);
  static TransformParams rotational_fep(const Point2& center, double radius,
                                        const Eigen::Matrix2d& A, FepGrid grid);
  static TransformParams from_vector(TransformGroup group, const Vector& params,
                                     FepGrid grid = {});

  TransformGroup group() const { return group_; }
  const Vector& params() const { return params_; }
  Eigen::Index size() const { return params_.size(); }
  FepGrid fep_grid() const { return fep_; }

  /// Linear 2x2 part (affine A, the top-left block of H, or the FEP affine part).
  Eigen::Matrix2d linear() const;
  /// Homogeneous 3x3 matrix; affine maps get bottom row [0 0 1].
  Eigen::Matrix3d homography() const;
  Point2 fep_center() const;
  double fep_radius() const;

  Point2 apply(const Point2& p) const;
  /// Also fills d apply / d params when `dp` is non-null.
  Point2 apply(const Point2& p, ParamJacobian* dp) const;

  /// Additive parameter update tau + delta (the solver's step rule).
  TransformParams plus(const Vector& delta) const;

  bool satisfies_invariants() const;
  /// Throws DegenerateTransform when the group invariants do not hold.
  void validate() const;

  /// Inverse map; affine and projective only.
  TransformParams inverse() const;
  /// Affine embedded as a homography; projective returned unchanged.
  TransformParams to_projective() const;
  /// Conjugate by an isotropic scaling s of both domain and range:
  /// x -> s * tau(x / s). Used to move between pyramid levels.
  TransformParams rescaled(double s) const;

 private:
  TransformParams(TransformGroup group, Vector params, FepGrid grid = {});

  TransformGroup group_ = TransformGroup::Affine;
  Vector params_;
  FepGrid fep_;
};

/// (a o b)(p) = a(b(p)). Both must be affine or projective; the result is
/// affine only when both inputs are.
TransformParams compose(const TransformParams& a, const TransformParams& b);

/// A(theta, t) = R(theta) * [1 t; 0 1], with b chosen so `center` is fixed.
TransformParams branch_parameterization(double theta, double t, const Point2& center = Point2::Zero());

/// Same rotation, but the skew acts along y: R(theta) * [1 0; t 1].
TransformParams branch_parameterization_yskew(double theta, double t,
                                              const Point2& center = Point2::Zero());

/// Multiplies the linear part on the right by M, keeping `center` fixed.
TransformParams right_multiply_linear(const TransformParams& tau, const Eigen::Matrix2d& M,
                                      const Point2& center);

}  // namespace tilt
