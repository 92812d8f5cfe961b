// tilt: rectify low-rank textures in images and run the synthetic experiments.

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tilt/error.hpp"
#include "tilt/experiments.hpp"
#include "tilt/extensions.hpp"
#include "tilt/image_io.hpp"
#include "tilt/render.hpp"
#include "tilt/serialize.hpp"

namespace fs = std::filesystem;
using namespace tilt;

namespace {

constexpr Color kRed{230, 40, 40};
constexpr Color kGreen{40, 200, 60};
constexpr Color kBlue{40, 90, 230};

struct RectifyArgs {
  std::string image;
  std::vector<double> center;
  std::vector<double> size;
  std::vector<double> corners;
  std::string group = "affine";
  bool branch_and_bound = false;
  bool completion = false;
  std::string symmetry;
  double lambda_coeff = 1.0;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool json = false;
};

struct ExperimentArgs {
  std::string name;
  std::string config;
  std::string out_dir = ".";
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) raise(ErrorCode::IoError, "cannot write " + path.string());
  os << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) raise(ErrorCode::IoError, "cannot read config " + path);
  try {
    return Json::parse(is);
  } catch (const Json::exception& e) {
    raise(ErrorCode::ConfigError, path + ": " + e.what());
  }
}

// Least-squares affine map or exact homography taking `from` onto `to`.
TransformParams fit_corners(const std::array<Point2, 4>& from, const std::array<Point2, 4>& to,
                            bool projective) {
  if (!projective) {
    Eigen::Matrix<double, 4, 3> X;
    Eigen::Matrix<double, 4, 2> Y;
    for (int k = 0; k < 4; ++k) {
      X.row(k) << from[k].x(), from[k].y(), 1.0;
      Y.row(k) = to[k].transpose();
    }
    const Eigen::Matrix<double, 3, 2> P = X.colPivHouseholderQr().solve(Y);
    return TransformParams::affine(P.topRows<2>().transpose(), P.row(2).transpose());
  }
  Eigen::Matrix<double, 8, 8> M = Eigen::Matrix<double, 8, 8>::Zero();
  Eigen::Matrix<double, 8, 1> rhs;
  for (int k = 0; k < 4; ++k) {
    const double x = from[k].x(), y = from[k].y(), u = to[k].x(), v = to[k].y();
    M.row(2 * k) << x, y, 1, 0, 0, 0, -u * x, -u * y;
    M.row(2 * k + 1) << 0, 0, 0, x, y, 1, -v * x, -v * y;
    rhs(2 * k) = u;
    rhs(2 * k + 1) = v;
  }
  const Eigen::Matrix<double, 8, 1> h = M.fullPivLu().solve(rhs);
  Eigen::Matrix3d H;
  H << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), 1.0;
  return TransformParams::projective(H);
}

bool is_parallelogram(const std::array<Point2, 4>& q) {
  const double scale = (q[2] - q[0]).norm() + (q[3] - q[1]).norm();
  return ((q[0] + q[2]) - (q[1] + q[3])).norm() <= 1e-6 * scale;
}

struct InitialWindow {
  WindowSpec window;
  TransformParams tau0;
};

InitialWindow initial_window(const RectifyArgs& a, TransformGroup group) {
  if (!a.corners.empty()) {
    if (a.corners.size() != 8) raise(ErrorCode::InvalidArgument, "--corners needs 8 numbers");
    std::array<Point2, 4> q;
    for (int k = 0; k < 4; ++k) q[k] = Point2(a.corners[2 * k], a.corners[2 * k + 1]);
    const double w = 0.5 * ((q[1] - q[0]).norm() + (q[2] - q[3]).norm());
    const double h = 0.5 * ((q[3] - q[0]).norm() + (q[2] - q[1]).norm());
    WindowSpec win;
    win.center = 0.25 * (q[0] + q[1] + q[2] + q[3]);
    win.half_extents = {0.5 * w, 0.5 * h};
    win.cols = std::max(2, static_cast<int>(std::lround(w)));
    win.rows = std::max(2, static_cast<int>(std::lround(h)));
    win.validate();
    const bool projective = group == TransformGroup::Projective && !is_parallelogram(q);
    TransformParams tau0 = fit_corners(win.corners(), q, projective);
    tau0.validate();
    return {win, tau0};
  }
  if (a.center.size() != 2 || a.size.size() != 2) {
    raise(ErrorCode::InvalidArgument, "give the window as --center X,Y --size W,H or --corners");
  }
  if (!(a.size[0] >= 2.0 && a.size[1] >= 2.0)) raise(ErrorCode::InvalidArgument, "window too small");
  WindowSpec win;
  win.center = Point2(a.center[0], a.center[1]);
  win.half_extents = {0.5 * a.size[0], 0.5 * a.size[1]};
  win.cols = static_cast<int>(std::lround(a.size[0]));
  win.rows = static_cast<int>(std::lround(a.size[1]));
  win.validate();
  return {win, TransformParams::identity()};
}

std::vector<Point2> outline(const TransformParams& tau, const WindowSpec& window) {
  std::vector<Point2> pts;
  if (tau.group() == TransformGroup::RotationalFEP) {
    const FepGrid g = tau.fep_grid();
    for (int j = 0; j <= g.angular; ++j) pts.push_back(tau.apply(Point2(g.radial, j)));
    return pts;
  }
  for (const Point2& p : mapped_corners(tau, window.corners())) pts.push_back(p);
  pts.push_back(pts.front());
  return pts;
}

void draw_outline(RgbImage& img, const std::vector<Point2>& pts, Color c) {
  for (size_t k = 1; k < pts.size(); ++k) draw_line(img, pts[k - 1], pts[k], c);
}

int cmd_rectify(const RectifyArgs& a) {
  const TransformGroup group = parse_group(a.group);
  const Image image = load_image(a.image);
  const InitialWindow init = initial_window(a, group);

  TiltOptions opts;
  opts.lambda_coeff = a.lambda_coeff;
  opts.completion = a.completion;
  if (!a.symmetry.empty()) opts.symmetry = symmetry_for(parse_axes(a.symmetry));
  opts.validate();

  SolveResult result;
  TransformParams tau0 = init.tau0;
  switch (group) {
    case TransformGroup::Affine:
      result = a.branch_and_bound ? tilt_branch_and_bound(image, init.window, opts)
                                  : tilt_multires(image, init.window, tau0, opts);
      break;
    case TransformGroup::Projective:
      if (tau0.group() == TransformGroup::Projective) {
        result = tilt_multires(image, init.window, tau0, opts);
      } else {
        if (a.branch_and_bound) tau0 = tilt_branch_and_bound(image, init.window, opts).tau;
        result = tilt_projective_cascade(image, init.window, opts, tau0);
      }
      break;
    case TransformGroup::RotationalFEP: {
      const double radius = std::min(init.window.half_extents.x(), init.window.half_extents.y());
      result = tilt_rotational(image, init.window.center, radius, opts);
      tau0 = TransformParams::rotational_fep(init.window.center, radius, Eigen::Matrix2d::Identity(),
                                             result.tau.fep_grid());
      break;
    }
  }

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  DisplayRange i0_range, e_range;
  const Matrix i0_img = rescale_for_display(result.I0, &i0_range);
  const Matrix e_img = rescale_for_display(result.E.cwiseAbs(), &e_range);
  save_png(i0_img, (dir / "rectified.png").string());
  save_png(e_img, (dir / "error.png").string());
  write_csv(result.I0, (dir / "I0.csv").string());
  write_csv(result.E, (dir / "E.csv").string());

  RgbImage overlay = to_rgb(image.pixels());
  draw_outline(overlay, outline(tau0, init.window), kRed);
  draw_outline(overlay, outline(result.tau, init.window), kGreen);
  save_png(overlay, (dir / "overlay.png").string());

  Json j = to_json(result);
  j["input"] = {{"image", fs::path(a.image).filename().string()},
                {"group", to_string(group)},
                {"branch_and_bound", a.branch_and_bound},
                {"completion", a.completion},
                {"symmetry", a.symmetry},
                {"lambda_coeff", a.lambda_coeff},
                {"seed", a.seed}};
  j["window"] = to_json(init.window);
  j["initial_transform"] = to_json(tau0);
  j["display_ranges"] = {{"rectified", {{"min", i0_range.min}, {"max", i0_range.max}}},
                         {"error_abs", {{"min", e_range.min}, {"max", e_range.max}}}};
  const std::string text = dump(j);
  write_text(dir / "result.json", text);
  if (a.json) std::cout << text;
  else {
    std::cout << (result.converged ? "converged" : "not converged") << " (" << to_string(result.stop)
              << ") after " << result.outer_iters << " outer iterations, rank " << result.final_rank
              << "\n";
  }
  return result.converged ? 0 : 2;
}

bool report(const std::vector<ClaimCheck>& claims) {
  bool all = true;
  for (const ClaimCheck& c : claims) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " [" << c.detail << "]\n";
    all = all && c.passed;
  }
  return all;
}

int cmd_experiment(const ExperimentArgs& a) {
  const Json cfg = a.config.empty() ? Json::object() : read_json(a.config);
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  bool ok = true;
  if (a.name == "roc-affine") {
    const AffineRocConfig c = affine_roc_config_from_json(cfg);
    const AffineRocResult r = roc_affine_experiment(c);
    write_text(dir / "roc_affine.json", dump(to_json(r, c)));
    write_csv(r.success_rate, (dir / "success_rate.csv").string());
    save_png(heat_map(r.success_rate), (dir / "roc_affine.png").string());
    ok = report(check_claims(r, c));
  } else if (a.name == "roc-projective") {
    const ProjectiveRocConfig c = projective_roc_config_from_json(cfg);
    const ProjectiveRocResult r = roc_projective_experiment(c);
    write_text(dir / "roc_projective.json", dump(to_json(r, c)));
    Matrix onset(static_cast<Eigen::Index>(r.axis_angles.size()), 3);
    Curve plain{{}, {}, kBlue}, cascade{{}, {}, kRed};
    for (size_t i = 0; i < r.axis_angles.size(); ++i) {
      const double deg = 180.0 / std::numbers::pi;
      onset.row(static_cast<Eigen::Index>(i)) << r.axis_angles[i] * deg, r.plain_onset[i] * deg,
          r.cascade_onset[i] * deg;
      plain.x.push_back(r.axis_angles[i] * deg);
      plain.y.push_back(r.plain_onset[i] * deg);
      cascade.x.push_back(r.axis_angles[i] * deg);
      cascade.y.push_back(r.cascade_onset[i] * deg);
    }
    write_csv(onset, (dir / "onset_deg.csv").string());
    save_png(plot_curves({plain, cascade}, 0.0, 90.0, 0.0, 90.0), (dir / "roc_projective.png").string());
    ok = report(check_claims(r));
  } else if (a.name == "robustness") {
    const RobustnessConfig c = robustness_config_from_json(cfg);
    const RobustnessResult r = robustness_experiment(c);
    write_text(dir / "robustness.json", dump(to_json(r, c)));
    write_csv(r.success_rate, (dir / "success_rate.csv").string());
    Matrix shown = r.success_rate.unaryExpr([](double v) { return std::isnan(v) ? 0.0 : v; });
    save_png(heat_map(shown), (dir / "robustness.png").string());
    for (size_t i = 0; i < r.textures.size(); ++i) {
      std::cout << r.textures[i] << ": tolerates " << r.tolerated[i] << "\n";
    }
    ok = report(check_claims(r));
  } else if (a.name == "tpca-baseline") {
    const TpcaConfig c = tpca_config_from_json(cfg);
    const TpcaResult r = tpca_experiment(c);
    write_text(dir / "tpca_baseline.json", dump(to_json(r, c)));
    ok = report(check_claims(r));
  } else {
    raise(ErrorCode::ConfigError, "unknown experiment " + a.name);
  }
  return ok ? 0 : 2;
}

std::optional<int> threads_from_env() {
  const char* v = std::getenv("TILT_THREADS");
  if (v == nullptr || *v == '\0') return std::nullopt;
  try {
    const int n = std::stoi(v);
    if (n >= 1) return n;
  } catch (const std::exception&) {
  }
  std::cerr << "warning: ignoring TILT_THREADS=" << v << "\n";
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transform invariant low-rank textures"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: TILT_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  RectifyArgs ra;
  CLI::App* rectify = app.add_subcommand("rectify", "rectify one window of an image");
  rectify->add_option("image", ra.image, "PNG or PGM input")->required()->check(CLI::ExistingFile);
  auto* center = rectify->add_option("--center", ra.center, "window centre X,Y")->delimiter(',')->expected(2);
  auto* size = rectify->add_option("--size", ra.size, "window size W,H")->delimiter(',')->expected(2);
  auto* corners = rectify->add_option("--corners", ra.corners, "TL,TR,BR,BL corners as 8 numbers")
                      ->delimiter(',')
                      ->expected(8);
  center->needs(size);
  size->needs(center);
  corners->excludes(center)->excludes(size);
  rectify->add_option("--group", ra.group, "transformation group")
      ->check(CLI::IsMember({"affine", "projective", "rotational"}));
  rectify->add_flag("--branch-and-bound", ra.branch_and_bound, "search rotation and skew initializations");
  rectify->add_flag("--completion", ra.completion, "allow the window to leave the image");
  rectify->add_option("--symmetry", ra.symmetry, "reflection axes")->check(CLI::IsMember({"x", "y", "xy"}));
  rectify->add_option("--lambda-coeff", ra.lambda_coeff, "lambda = coeff / sqrt(max(m, n))")
      ->check(CLI::PositiveNumber);
  rectify->add_option("--out-dir", ra.out_dir, "output directory");
  rectify->add_option("--seed", ra.seed, "recorded in result.json");
  rectify->add_flag("--json", ra.json, "print result.json to stdout");

  ExperimentArgs ea;
  CLI::App* experiment = app.add_subcommand("experiment", "run a synthetic experiment");
  experiment->add_option("name", ea.name, "experiment")
      ->required()
      ->check(CLI::IsMember({"roc-affine", "roc-projective", "robustness", "tpca-baseline"}));
  experiment->add_option("--config", ea.config, "JSON config (defaults when omitted)")
      ->check(CLI::ExistingFile);
  experiment->add_option("--out-dir", ea.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (threads > 0) omp_set_num_threads(threads);
  else if (const auto env = threads_from_env()) omp_set_num_threads(*env);

  try {
    if (rectify->parsed()) return cmd_rectify(ra);
    return cmd_experiment(ea);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}
