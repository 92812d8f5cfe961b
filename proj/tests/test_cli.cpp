#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

#include "tilt/experiments.hpp"
#include "tilt/image_io.hpp"
#include "tilt/synth.hpp"

namespace tilt {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "tilt_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

CliRun run(const std::string& args, const fs::path& dir) {
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(TILT_CLI_PATH) + " " + args + " > " + (dir / "stdout.txt").string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err)};
}

std::string fmt_point(const Point2& p) {
  std::ostringstream os;
  os.precision(17);
  os << p.x() << "," << p.y();
  return os.str();
}

fs::path deformed_board(const fs::path& dir) {
  const WindowSpec w = WindowSpec::from_pixels(60, 60, 80, 80);
  const auto truth = branch_parameterization(15 * std::numbers::pi / 180, 0.2, w.center);
  const fs::path p = dir / "board.png";
  save_png(render_deformed(checkerboard_texture(40, 0.1, 0.9, w.center), 200, 200, truth, 4).pixels(),
           p.string());
  return p;
}

TEST(Cli, RectifiesDeformedCheckerboard) {
  const fs::path dir = scratch("board");
  const fs::path img = deformed_board(dir);
  const CliRun r = run("rectify " + img.string() + " --center 99.5,99.5 --size 80,80 --out-dir " +
                        (dir / "out").string(),
                    dir);
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"result.json", "rectified.png", "error.png", "overlay.png", "I0.csv", "E.csv"})
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
  EXPECT_EQ(thresholded_rank(load_image((dir / "out" / "rectified.png").string()).pixels()), 2);
  const Json j = Json::parse(slurp(dir / "out" / "result.json"));
  EXPECT_EQ(j.at("schema").get<int>(), 1);
  EXPECT_TRUE(j.at("converged").get<bool>());
  EXPECT_TRUE(j.contains("display_ranges"));
}

TEST(Cli, OutputsAreByteIdenticalAcrossRuns) {
  const fs::path dir = scratch("determinism");
  const fs::path img = deformed_board(dir);
  for (const char* out : {"a", "b"}) {
    const CliRun r = run("rectify " + img.string() + " --center 99.5,99.5 --size 80,80 --seed 4 --out-dir " +
                          (dir / out).string(),
                      dir);
    ASSERT_EQ(r.code, 0) << r.err;
  }
  for (const char* f : {"result.json", "rectified.png", "error.png", "overlay.png", "I0.csv", "E.csv"})
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
}

TEST(Cli, FlatImageIsAnError) {
  const fs::path dir = scratch("flat");
  save_png(Matrix::Constant(100, 100, 0.5), (dir / "flat.png").string());
  const CliRun r = run("rectify " + (dir / "flat.png").string() + " --center 50,50 --size 40,40", dir);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ZeroWindow"), std::string::npos) << r.err;
}

TEST(Cli, WindowNearTheEdgeNeedsCompletion) {
  const fs::path dir = scratch("edge");
  const Scenario sc = boundary_scenario();
  save_png(sc.image.pixels(), (dir / "edge.png").string());
  const std::string base = "rectify " + (dir / "edge.png").string() + " --center " + fmt_point(sc.window.center) +
                           " --size 80,80 --out-dir " + (dir / "out").string();
  EXPECT_EQ(run(base, dir).code, 2);
  EXPECT_EQ(run(base + " --completion", dir).code, 0);
}

TEST(Cli, UsageErrorsExitNonZero) {
  const fs::path dir = scratch("usage");
  save_png(gen_checkerboard(40, 40, 4).pixels(), (dir / "b.png").string());
  EXPECT_NE(run("rectify " + (dir / "b.png").string(), dir).code, 0);
  EXPECT_NE(run("rectify " + (dir / "b.png").string() + " --center 20,20 --size 20,20 --group similarity", dir).code, 0);
  EXPECT_NE(run("rectify /nonexistent.png --center 1,1 --size 2,2", dir).code, 0);
}

TEST(Cli, ExperimentConfigErrorsExitOne) {
  const fs::path dir = scratch("config");
  std::ofstream(dir / "bad.json") << R"({"not_a_key": 3})";
  const CliRun r = run("experiment tpca-baseline --config " + (dir / "bad.json").string(), dir);
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, TpcaExperimentReportsClaims) {
  const fs::path dir = scratch("tpca");
  const CliRun r = run("experiment tpca-baseline --out-dir " + (dir / "out").string(), dir);
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string out = slurp(dir / "stdout.txt");
  EXPECT_NE(out.find("PASS"), std::string::npos) << out;
  EXPECT_EQ(out.find("FAIL"), std::string::npos) << out;
}

}  // namespace
}  // namespace tilt
