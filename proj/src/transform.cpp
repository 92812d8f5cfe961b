#include "tilt/transform.hpp"

#include <cmath>
#include <numbers>

#include "tilt/error.hpp"

namespace tilt {

namespace {

constexpr double kMinDeterminant = 1e-9;
constexpr double kMinDenominator = 1e-9;
constexpr double kMaxHomographyNorm = 1e6;

Eigen::Index expected_size(TransformGroup group) {
  switch (group) {
    case TransformGroup::Affine: return 6;
    case TransformGroup::Projective: return 8;
    case TransformGroup::RotationalFEP: return 7;
  }
  return 0;
}

}  // namespace

const char* to_string(TransformGroup group) {
  switch (group) {
    case TransformGroup::Affine: return "affine";
    case TransformGroup::Projective: return "projective";
    case TransformGroup::RotationalFEP: return "rotational_fep";
  }
  return "unknown";
}

TransformGroup parse_group(const std::string& name) {
  if (name == "affine") return TransformGroup::Affine;
  if (name == "projective") return TransformGroup::Projective;
  if (name == "rotational_fep" || name == "rotational") return TransformGroup::RotationalFEP;
  raise(ErrorCode::InvalidArgument, "unknown transform group '" + name + "'");
}

TransformParams::TransformParams(TransformGroup group, Vector params, FepGrid grid)
    : group_(group), params_(std::move(params)), fep_(grid) {}

TransformParams::TransformParams()
    : group_(TransformGroup::Affine), params_((Vector(6) << 1, 0, 0, 1, 0, 0).finished()) {}

TransformParams TransformParams::identity(TransformGroup group) {
  switch (group) {
    case TransformGroup::Affine:
      return affine(Eigen::Matrix2d::Identity(), Point2::Zero());
    case TransformGroup::Projective:
      return projective(Eigen::Matrix3d::Identity());
    case TransformGroup::RotationalFEP:
      raise(ErrorCode::InvalidArgument, "rotational FEP has no parameter-free identity");
  }
  raise(ErrorCode::InvalidArgument, "unknown group");
}

TransformParams TransformParams::affine(const Eigen::Matrix2d& A, const Point2& b) {
  Vector p(6);
  p << A(0, 0), A(1, 0), A(0, 1), A(1, 1), b.x(), b.y();
  return TransformParams(TransformGroup::Affine, std::move(p));
}

TransformParams TransformParams::projective(const Eigen::Matrix3d& H) {
  if (std::abs(H(2, 2)) < 1e-12) {
    raise(ErrorCode::DegenerateTransform, "homography with h33 = 0 cannot be normalized");
  }
  const Eigen::Matrix3d Hn = H / H(2, 2);
  Vector p(8);
  p << Hn(0, 0), Hn(0, 1), Hn(0, 2), Hn(1, 0), Hn(1, 1), Hn(1, 2), Hn(2, 0), Hn(2, 1);
  return TransformParams(TransformGroup::Projective, std::move(p));
}

TransformParams TransformParams::rotational_fep(const Point2& center, double radius,
                                                const Eigen::Matrix2d& A, FepGrid grid) {
  if (grid.radial < 1 || grid.angular < 1) {
    raise(ErrorCode::InvalidArgument, "FEP grid must be at least 1x1");
  }
  Vector p(7);
  p << center.x(), center.y(), radius, A(0, 0), A(1, 0), A(0, 1), A(1, 1);
  return TransformParams(TransformGroup::RotationalFEP, std::move(p), grid);
}

TransformParams TransformParams::from_vector(TransformGroup group, const Vector& params,
                                             FepGrid grid) {
  if (params.size() != expected_size(group)) {
    raise(ErrorCode::InvalidArgument, std::string("wrong parameter count for group ") +
                                          to_string(group));
  }
  if (group == TransformGroup::RotationalFEP && (grid.radial < 1 || grid.angular < 1)) {
    raise(ErrorCode::InvalidArgument, "rotational FEP parameters need a grid");
  }
  return TransformParams(group, params, group == TransformGroup::RotationalFEP ? grid : FepGrid{});
}

Eigen::Matrix2d TransformParams::linear() const {
  Eigen::Matrix2d A;
  switch (group_) {
    case TransformGroup::Affine:
      A << params_[0], params_[2], params_[1], params_[3];
      break;
    case TransformGroup::Projective:
      A << params_[0], params_[1], params_[3], params_[4];
      break;
    case TransformGroup::RotationalFEP:
      A << params_[3], params_[5], params_[4], params_[6];
      break;
  }
  return A;
}

Eigen::Matrix3d TransformParams::homography() const {
  Eigen::Matrix3d H;
  switch (group_) {
    case TransformGroup::Affine:
      H << params_[0], params_[2], params_[4], params_[1], params_[3], params_[5], 0, 0, 1;
      return H;
    case TransformGroup::Projective:
      H << params_[0], params_[1], params_[2], params_[3], params_[4], params_[5], params_[6],
          params_[7], 1;
      return H;
    case TransformGroup::RotationalFEP:
      break;
  }
  raise(ErrorCode::UnsupportedGroup, "rotational FEP has no homography form");
}

Point2 TransformParams::fep_center() const {
  if (group_ != TransformGroup::RotationalFEP) {
    raise(ErrorCode::UnsupportedGroup, "not a rotational FEP transform");
  }
  return {params_[0], params_[1]};
}

double TransformParams::fep_radius() const {
  if (group_ != TransformGroup::RotationalFEP) {
    raise(ErrorCode::UnsupportedGroup, "not a rotational FEP transform");
  }
  return params_[2];
}

Point2 TransformParams::apply(const Point2& p) const { return apply(p, nullptr); }

Point2 TransformParams::apply(const Point2& p, ParamJacobian* dp) const {
  const double x = p.x();
  const double y = p.y();
  const Vector& q = params_;
  switch (group_) {
    case TransformGroup::Affine: {
      if (dp) {
        dp->setZero(2, 6);
        (*dp)(0, 0) = x;
        (*dp)(0, 2) = y;
        (*dp)(0, 4) = 1.0;
        (*dp)(1, 1) = x;
        (*dp)(1, 3) = y;
        (*dp)(1, 5) = 1.0;
      }
      return {q[0] * x + q[2] * y + q[4], q[1] * x + q[3] * y + q[5]};
    }
    case TransformGroup::Projective: {
      const double u = q[0] * x + q[1] * y + q[2];
      const double v = q[3] * x + q[4] * y + q[5];
      const double w = q[6] * x + q[7] * y + 1.0;
      if (std::abs(w) < kMinDenominator) {
        raise(ErrorCode::DegenerateTransform, "point maps to the line at infinity");
      }
      const double iw = 1.0 / w;
      const double px = u * iw;
      const double py = v * iw;
      if (dp) {
        dp->setZero(2, 8);
        (*dp)(0, 0) = x * iw;
        (*dp)(0, 1) = y * iw;
        (*dp)(0, 2) = iw;
        (*dp)(0, 6) = -px * x * iw;
        (*dp)(0, 7) = -px * y * iw;
        (*dp)(1, 3) = x * iw;
        (*dp)(1, 4) = y * iw;
        (*dp)(1, 5) = iw;
        (*dp)(1, 6) = -py * x * iw;
        (*dp)(1, 7) = -py * y * iw;
      }
      return {px, py};
    }
    case TransformGroup::RotationalFEP: {
      const double m = fep_.radial;
      const double n = fep_.angular;
      const double angle = 2.0 * std::numbers::pi * y / n;
      const double rho = x / m;
      const double R = q[2];
      const double ux = R * rho * std::cos(angle);
      const double uy = R * rho * std::sin(angle);
      if (dp) {
        dp->setZero(2, 7);
        (*dp)(0, 0) = 1.0;
        (*dp)(1, 1) = 1.0;
        // d/dR of A * (rho cos, rho sin) * R
        const double ex = rho * std::cos(angle);
        const double ey = rho * std::sin(angle);
        (*dp)(0, 2) = q[3] * ex + q[5] * ey;
        (*dp)(1, 2) = q[4] * ex + q[6] * ey;
        (*dp)(0, 3) = ux;
        (*dp)(1, 4) = ux;
        (*dp)(0, 5) = uy;
        (*dp)(1, 6) = uy;
      }
      return {q[3] * ux + q[5] * uy + q[0], q[4] * ux + q[6] * uy + q[1]};
    }
  }
  return p;
}

TransformParams TransformParams::plus(const Vector& delta) const {
  if (delta.size() != params_.size()) {
    raise(ErrorCode::InvalidArgument, "parameter increment has the wrong size");
  }
  return TransformParams(group_, params_ + delta, fep_);
}

bool TransformParams::satisfies_invariants() const {
  if (!params_.allFinite()) return false;
  switch (group_) {
    case TransformGroup::Affine:
      return linear().determinant() > kMinDeterminant;
    case TransformGroup::Projective: {
      const Eigen::Matrix3d H = homography();
      return std::abs(H.determinant()) > kMinDeterminant && H.norm() < kMaxHomographyNorm;
    }
    case TransformGroup::RotationalFEP:
      return params_[2] > 0.0 && std::abs(linear().determinant()) > kMinDeterminant;
  }
  return false;
}

void TransformParams::validate() const {
  if (!satisfies_invariants()) {
    raise(ErrorCode::DegenerateTransform,
          std::string("transform violates the ") + to_string(group_) + " invariants");
  }
}

TransformParams TransformParams::inverse() const {
  switch (group_) {
    case TransformGroup::Affine: {
      const Eigen::Matrix2d Ai = linear().inverse();
      const Point2 b(params_[4], params_[5]);
      return affine(Ai, -Ai * b);
    }
    case TransformGroup::Projective:
      return projective(homography().inverse());
    case TransformGroup::RotationalFEP:
      break;
  }
  raise(ErrorCode::UnsupportedGroup, "rotational FEP maps are not inverted");
}

TransformParams TransformParams::to_projective() const {
  if (group_ == TransformGroup::Projective) return *this;
  return projective(homography());
}

TransformParams TransformParams::rescaled(double s) const {
  switch (group_) {
    case TransformGroup::Affine: {
      Vector p = params_;
      p[4] *= s;
      p[5] *= s;
      return TransformParams(group_, std::move(p));
    }
    case TransformGroup::Projective: {
      const Eigen::Matrix3d S = Eigen::Vector3d(s, s, 1.0).asDiagonal();
      const Eigen::Matrix3d Si = Eigen::Vector3d(1.0 / s, 1.0 / s, 1.0).asDiagonal();
      return projective(S * homography() * Si);
    }
    case TransformGroup::RotationalFEP: {
      Vector p = params_;
      p[0] *= s;
      p[1] *= s;
      p[2] *= s;
      return TransformParams(group_, std::move(p), fep_);
    }
  }
  return *this;
}

TransformParams compose(const TransformParams& a, const TransformParams& b) {
  if (a.group() == TransformGroup::RotationalFEP || b.group() == TransformGroup::RotationalFEP) {
    raise(ErrorCode::UnsupportedGroup, "compose is defined for affine and projective maps");
  }
  const Eigen::Matrix3d H = a.homography() * b.homography();
  if (a.group() == TransformGroup::Affine && b.group() == TransformGroup::Affine) {
    return TransformParams::affine(H.topLeftCorner<2, 2>(), H.topRightCorner<2, 1>());
  }
  return TransformParams::projective(H);
}

namespace {

Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d R;
  R << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return R;
}

TransformParams centered_affine(const Eigen::Matrix2d& A, const Point2& center) {
  return TransformParams::affine(A, center - A * center);
}

}  // namespace

TransformParams branch_parameterization(double theta, double t, const Point2& center) {
  Eigen::Matrix2d skew;
  skew << 1.0, t, 0.0, 1.0;
  return centered_affine(rotation(theta) * skew, center);
}

TransformParams branch_parameterization_yskew(double theta, double t, const Point2& center) {
  Eigen::Matrix2d skew;
  skew << 1.0, 0.0, t, 1.0;
  return centered_affine(rotation(theta) * skew, center);
}

TransformParams right_multiply_linear(const TransformParams& tau, const Eigen::Matrix2d& M,
                                      const Point2& center) {
  if (tau.group() != TransformGroup::Affine) {
    raise(ErrorCode::UnsupportedGroup, "right_multiply_linear expects an affine map");
  }
  const Eigen::Matrix2d A = tau.linear() * M;
  const Point2 image_of_center = tau.apply(center);
  return TransformParams::affine(A, image_of_center - A * center);
}

}  // namespace tilt
