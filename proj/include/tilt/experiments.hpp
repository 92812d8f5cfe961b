#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "tilt/serialize.hpp"
#include "tilt/synth.hpp"
#include "tilt/tilt.hpp"

namespace tilt {

/// Rotation/skew grid for the affine range-of-convergence study.
struct ExperimentGrid {
  std::vector<double> theta;  ///< radians
  std::vector<double> t;
  int trials_per_cell = 10;
  std::uint64_t seed = 1;

  /// theta 0..pi/6 step pi/60, t 0..1 step 0.05, 10 trials.
  static ExperimentGrid defaults();
};

/// Synthetic scene shared by the experiments: a square image with the
/// window centred in it.
struct Scene {
  int image_size = 320;
  int window = 80;
  double square = 40.0;  ///< checkerboard square side in pixels
  int supersample = 4;

  WindowSpec window_spec() const;
};

struct AffineRocConfig {
  ExperimentGrid grid = ExperimentGrid::defaults();
  Scene scene;
  /// Per-trial jitter: theta += U(-1,1) jitter (pi/6), t += U(-1,1) jitter.
  double jitter = 0.02;
  /// Also draw the checkerboard phase uniformly per trial. Off by default:
  /// a square corner then sits at the window centre.
  bool random_phase = false;
  TiltOptions opts;
};

struct TrialRecord {
  double theta = 0.0;
  double t = 0.0;
  int trial = 0;
  double residual = 0.0;
  bool success = false;
  int outer_iters = 0;
};

struct AffineRocResult {
  Matrix success_rate;  ///< theta rows x t columns
  std::vector<TrialRecord> trials;
};

AffineRocResult roc_affine_experiment(const AffineRocConfig& config);

struct ProjectiveRocConfig {
  std::vector<double> axis_angles;       ///< radians
  std::vector<double> rotation_amounts;  ///< radians, ascending
  Scene scene;
  /// Camera depth (= focal length) in window widths.
  double depth_factor = 2.0;
  /// Stop sweeping an axis after its first failure.
  bool stop_at_first_failure = true;
  TiltOptions opts;

  /// Axes and amounts 0..90 degrees in 5 degree steps.
  static ProjectiveRocConfig defaults();
};

struct ProjectiveRocResult {
  std::vector<double> axis_angles;
  std::vector<double> rotation_amounts;
  /// Largest amount such that it and every smaller amount succeeded
  /// (-1 when amount 0 already fails), per axis.
  std::vector<double> plain_onset;
  std::vector<double> cascade_onset;
  /// axes x amounts; 1 success, 0 failure, -1 not run.
  Matrix plain_success;
  Matrix cascade_success;
};

ProjectiveRocResult roc_projective_experiment(const ProjectiveRocConfig& config);

/// Synthetic texture families for the robustness study.
std::vector<std::string> texture_names();
Texture make_texture(const std::string& name, const Point2& origin, double square);
/// ColumnProfile for textures that are constant along y (the edge).
Quotient texture_quotient(const std::string& name);

struct RobustnessConfig {
  std::vector<std::string> textures = texture_names();
  std::vector<double> fractions;  ///< ascending
  int trials = 10;
  std::uint64_t seed = 7;
  double theta = std::numbers::pi / 18.0;
  double pass_rate = 0.8;
  Scene scene;
  bool stop_at_first_failure = true;
  TiltOptions opts;

  /// Fractions 0..1 step 0.05.
  static RobustnessConfig defaults();
};

struct RobustnessResult {
  std::vector<std::string> textures;
  std::vector<double> fractions;
  Matrix success_rate;  ///< textures x fractions; NaN when not run
  /// Largest fraction such that it and every smaller one reach pass_rate (-1 if none).
  std::vector<double> tolerated;
};

RobustnessResult robustness_experiment(const RobustnessConfig& config);

/// Success of a single corrupted, rotated trial (shared by the harness and tests).
TrialRecord robustness_trial(const std::string& texture, double fraction, double theta,
                             std::uint64_t seed, const Scene& scene, const TiltOptions& opts);

struct TpcaConfig {
  double theta = 14.0 * std::numbers::pi / 180.0;
  double t = 0.1;
  std::vector<int> ranks = {1, 2, 3};
  Scene scene = {.square = 20.0};  ///< four squares across the window
  TiltOptions opts;
};

struct TpcaResult {
  std::vector<int> ranks;
  std::vector<double> residual;
  std::vector<bool> success;
  double tilt_residual = 0.0;
  bool tilt_success = false;
};

TpcaResult tpca_experiment(const TpcaConfig& config);

/// A synthetic image with its initial window and the true deformation.
struct Scenario {
  Image image;
  WindowSpec window;
  TransformParams truth;
};

/// Checkerboard rotated by `theta` about the window centre, placed so that the
/// true (rotated) window reaches `outside` of the window width past the left
/// image edge. The initial axis-aligned window is almost entirely inside.
Scenario boundary_scenario(double outside = 0.15, double theta = 20.0 * std::numbers::pi / 180.0);

/// A checkerboard with 16 px squares rotated by `theta` about the centre of
/// one square; the 80 px window is displaced from that centre by `offset`.
Scenario off_center_scenario(const Point2& offset = Point2(20.0, 5.0),
                             double theta = 5.0 * std::numbers::pi / 180.0);

/// Relative mirror violation ||D - g(D)||_F / ||D||_F of the window sampled at tau.
double window_symmetry_violation(const Image& image, const TransformParams& tau,
                                 const WindowSpec& window, const SymmetryMap& symmetry);

/// One acceptance check of an experiment against the claimed behaviour.
struct ClaimCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Every cell with theta <= 20 deg and t <= 0.4 succeeds in >= 95% of trials.
std::vector<ClaimCheck> check_claims(const AffineRocResult& r, const AffineRocConfig& c);
/// Plain onset >= 45 deg on every axis; cascade onset >= 55 deg on every
/// axis and >= plain everywhere, strictly somewhere.
std::vector<ClaimCheck> check_claims(const ProjectiveRocResult& r);
/// Checkerboard passes at 30% corruption; low-contrast and glyph textures
/// (when present) tolerate strictly less than the checkerboard.
std::vector<ClaimCheck> check_claims(const RobustnessResult& r);
/// Only the rank-2 baseline succeeds among r in {1, 2, 3}; TILT succeeds.
std::vector<ClaimCheck> check_claims(const TpcaResult& r);

// JSON config parsing; unknown keys are rejected with ConfigError.
AffineRocConfig affine_roc_config_from_json(const Json& j);
ProjectiveRocConfig projective_roc_config_from_json(const Json& j);
RobustnessConfig robustness_config_from_json(const Json& j);
TpcaConfig tpca_config_from_json(const Json& j);
TiltOptions tilt_options_from_json(const Json& j, TiltOptions base = {});

Json to_json(const AffineRocResult& r, const AffineRocConfig& c);
Json to_json(const ProjectiveRocResult& r, const ProjectiveRocConfig& c);
Json to_json(const RobustnessResult& r, const RobustnessConfig& c);
Json to_json(const TpcaResult& r, const TpcaConfig& c);

}  // namespace tilt
