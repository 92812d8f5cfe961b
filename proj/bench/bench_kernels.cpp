// OpenMP kernels against their serial references. Arg is the side length of
// the square window (or image, for the whole-image kernels).

#include <benchmark/benchmark.h>

#include <random>

#include "tilt/kernels.hpp"

namespace {

using namespace tilt;

Matrix noise(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m(n, n);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = u(rng);
  return m;
}

std::vector<Point2> lattice(int n) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) pts.emplace_back(j - 0.5 * (n - 1), i - 0.5 * (n - 1));
  return pts;
}

TransformParams warp(int n) {
  Eigen::Matrix2d A;
  A << 1.05, 0.12, -0.08, 0.97;
  return TransformParams::affine(A, Point2(n, n));
}

template <bool Omp>
void BM_SamplePoints(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix px = noise(2 * n, 1);
  std::vector<Point2> mapped;
  kernels::map_points(warp(n), lattice(n), mapped);
  Matrix values(n, n);
  Mask inside(n, n);
  for (auto _ : state) {
    if constexpr (Omp) kernels::sample_points(px, mapped, values, inside);
    else kernels::reference::sample_points(px, mapped, values, inside);
    benchmark::DoNotOptimize(values.data());
  }
}

template <bool Omp>
void BM_SeparableBlur(benchmark::State& state) {
  const Matrix px = noise(static_cast<int>(state.range(0)), 2);
  const auto taps = kernels::gaussian_taps(1.0);
  for (auto _ : state) {
    Matrix out = Omp ? kernels::separable_blur(px, taps) : kernels::reference::separable_blur(px, taps);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Omp>
void BM_CentralDifferences(benchmark::State& state) {
  const Matrix px = noise(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    Gradient g = Omp ? kernels::central_differences(px) : kernels::reference::central_differences(px);
    benchmark::DoNotOptimize(g);
  }
}

template <bool Omp>
void BM_SoftThreshold(benchmark::State& state) {
  const Matrix src = noise(static_cast<int>(state.range(0)), 4);
  Matrix m;
  for (auto _ : state) {
    m = src;
    if constexpr (Omp) kernels::soft_threshold(m, 0.3);
    else kernels::reference::soft_threshold(m, 0.3);
    benchmark::DoNotOptimize(m.data());
  }
}

template <bool Omp>
void BM_JacobianRows(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matrix gx = noise(2 * n, 5);
  const Matrix gy = noise(2 * n, 6);
  const TransformParams tau = warp(n);
  const auto pts = lattice(n);
  Matrix J(static_cast<Eigen::Index>(pts.size()), tau.size());
  for (auto _ : state) {
    if constexpr (Omp) kernels::jacobian_rows(gx, gy, tau, pts, J);
    else kernels::reference::jacobian_rows(gx, gy, tau, pts, J);
    benchmark::DoNotOptimize(J.data());
  }
}

#define TILT_BENCH_PAIR(fn)                                              \
  BENCHMARK_TEMPLATE(fn, false)->Name(#fn "/serial")->Arg(64)->Arg(256); \
  BENCHMARK_TEMPLATE(fn, true)->Name(#fn "/omp")->Arg(64)->Arg(256)

TILT_BENCH_PAIR(BM_SamplePoints);
TILT_BENCH_PAIR(BM_SeparableBlur);
TILT_BENCH_PAIR(BM_CentralDifferences);
TILT_BENCH_PAIR(BM_SoftThreshold);
TILT_BENCH_PAIR(BM_JacobianRows);

}  // namespace

BENCHMARK_MAIN();
