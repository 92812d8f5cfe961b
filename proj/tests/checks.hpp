#pragma once

// Oracles shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "tilt/error.hpp"
#include "tilt/inner_solver.hpp"
#include "tilt/serialize.hpp"
#include "tilt/tilt.hpp"

namespace tilt::checks {

/// c0 + c1 x + c2 y + c3 x y: reproduced exactly by bilinear interpolation
/// and by the smoothed central-difference gradient (>= 3 px from the border).
inline Image bilinear_field(int w, int h) {
  Matrix px(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) px(y, x) = 0.3 + 0.004 * x + 0.006 * y + 5e-5 * x * y;
  return Image(px);
}

/// Central differences of the normalized warped window, one column per parameter.
inline Matrix finite_difference_jacobian(const Image& image, const TransformParams& tau,
                                         const WindowSpec& window, double h) {
  const SamplingGrid grid = grid_for(tau, window);
  auto normalized = [&](const TransformParams& t) {
    const Matrix v = warp_grid(image, t, grid).values;
    return Vector(vec(v) / v.norm());
  };
  Matrix J(static_cast<Eigen::Index>(grid.rows()) * grid.cols(), tau.size());
  for (Eigen::Index k = 0; k < tau.size(); ++k) {
    const double step = h * std::max(1.0, std::abs(tau.params()(k)));
    Vector e = Vector::Zero(tau.size());
    e(k) = step;
    J.col(k) = (normalized(tau.plus(e)) - normalized(tau.plus(-e))) / (2.0 * step);
  }
  return J;
}

inline double relative_error(const Matrix& a, const Matrix& b) { return (a - b).norm() / b.norm(); }

/// The three groups on a 120 x 110 bilinear field; returns the worst relative error.
inline double worst_jacobian_error() {
  const Image image = bilinear_field(120, 110);
  const WindowSpec window = WindowSpec::from_pixels(35, 30, 40, 36);
  Eigen::Matrix3d H = branch_parameterization(-0.2, 0.1, window.center).homography();
  H(2, 0) = 4e-4;
  H(2, 1) = -3e-4;
  Eigen::Matrix2d A;
  A << 1.05, 0.1, -0.05, 0.95;
  const TransformParams cases[] = {
      branch_parameterization(0.25, 0.15, window.center),
      TransformParams::projective(H / H(2, 2)),
      TransformParams::rotational_fep(Point2(60.0, 55.0), 25.0, A, {25, 120}),
  };
  double worst = 0.0;
  for (const auto& tau : cases) {
    const double h = tau.group() == TransformGroup::Projective ? 1e-6 : 1e-5;
    worst = std::max(worst, relative_error(image_param_jacobian(image, tau, window),
                                           finite_difference_jacobian(image, tau, window, h)));
  }
  return worst;
}

struct OracleInstance {
  LinearizedProblem problem;
  double objective = 0.0;
};

/// Instances of tests/fixtures/inner_oracle.json (interior-point reference objectives).
inline std::vector<OracleInstance> load_oracle(const std::string& path) {
  std::ifstream is(path);
  if (!is) raise(ErrorCode::IoError, "cannot open " + path);
  const Json j = Json::parse(is);
  auto to_matrix = [](const Json& rows) {
    const auto v = rows.get<std::vector<std::vector<double>>>();
    Matrix m(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.front().size()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index k = 0; k < m.cols(); ++k) m(i, k) = v[i][k];
    return m;
  };
  std::vector<OracleInstance> out;
  for (const auto& in : j.at("instances")) {
    OracleInstance o;
    o.problem.D = to_matrix(in.at("D"));
    o.problem.J = to_matrix(in.at("J"));
    o.problem.constraints.A_eq = to_matrix(in.at("A_eq"));
    o.problem.constraints.rhs = Vector::Zero(o.problem.constraints.A_eq.rows());
    o.problem.lambda = in.at("lambda").get<double>();
    o.objective = in.at("objective").get<double>();
    out.push_back(std::move(o));
  }
  return out;
}

/// Largest relative objective gap of solve_inner over the oracle instances.
inline double worst_oracle_gap(const std::vector<OracleInstance>& instances) {
  double worst = 0.0;
  for (const auto& o : instances) {
    const Decomposition d = solve_inner(o.problem);
    worst = std::max(worst, std::abs(d.objective - o.objective) / std::abs(o.objective));
  }
  return worst;
}

/// Counts perturbations that beat the proximal points of mu |.|_1 (shrink)
/// and mu ||.||_* (svd_shrink) on `instances` random instances each.
struct ProxTally {
  int instances = 0;
  long long trials = 0;
  long long beaten = 0;
};

inline ProxTally prox_perturbation_check(int instances, int perturbations, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::uniform_int_distribution<int> dim(2, 12);
  ProxTally t;
  auto gaussian = [&](int r, int c) {
    Matrix m(r, c);
    for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = n01(rng);
    return m;
  };
  auto l1_obj = [](const Matrix& x, const Matrix& w, double mu) {
    return mu * x.cwiseAbs().sum() + 0.5 * (x - w).squaredNorm();
  };
  auto nuc_obj = [](const Matrix& x, const Matrix& w, double mu) {
    return mu * nuclear_norm(x) + 0.5 * (x - w).squaredNorm();
  };
  for (int i = 0; i < instances; ++i) {
    const int r = dim(rng), c = dim(rng);
    const Matrix w = gaussian(r, c);
    const double mu = u(rng);
    const Matrix xs = shrink(w, mu);
    const Matrix xn = svd_shrink(w, mu);
    const double fs = l1_obj(xs, w, mu);
    const double fn = nuc_obj(xn, w, mu);
    for (int k = 0; k < perturbations; ++k) {
      // Mix of scales so both tiny and large moves are probed.
      const double scale = std::pow(10.0, -3.0 + 3.0 * (k % 4) / 3.0);
      const Matrix ds = scale * gaussian(r, c);
      const Matrix dn = scale * gaussian(r, c);
      t.trials += 2;
      if (l1_obj(xs + ds, w, mu) < fs - 1e-12) ++t.beaten;
      if (nuc_obj(xn + dn, w, mu) < fn - 1e-12) ++t.beaten;
    }
    ++t.instances;
  }
  return t;
}

}  // namespace tilt::checks
