// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "cylflow/axisym.hpp"
#include "cylflow/galerkin.hpp"
#include "cylflow/geometry.hpp"
#include "cylflow/jacobi.hpp"
#include "cylflow/spectrum.hpp"

using namespace cylflow;

static void BM_EnumerateModes(benchmark::State& state) {
  const auto s = CylinderShape::make(4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_modes(s, Rational(static_cast<int>(state.range(0)))));
}
BENCHMARK(BM_EnumerateModes)->Arg(2)->Arg(4);

static void BM_ApplyL(benchmark::State& state) {
  const auto s = CylinderShape::make(3, 1);
  SpectralField f(s);
  for (const ModeEntry& e : enumerate_modes(s, Rational(3))) f.set(e.mode, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(apply_L(f));
}
BENCHMARK(BM_ApplyL);

static void BM_GaussianDistance(benchmark::State& state) {
  const auto s = CylinderShape::make(2, 1);
  auto grid = std::make_shared<const CylinderGrid>(CylinderGrid::hermite(s, 12, static_cast<int>(state.range(0))));
  std::vector<double> v(grid->size());
  for (std::size_t a = 0; a < v.size(); ++a) v[a] = 1e-3 * std::sin(static_cast<double>(a));
  const GraphFunction g(grid, v);
  for (auto _ : state) benchmark::DoNotOptimize(d_u(g));
}
BENCHMARK(BM_GaussianDistance)->Arg(16)->Arg(32);

static void BM_GalerkinNonlinearity(benchmark::State& state) {
  GalerkinConfig c;
  c.gamma_max = 2.0;
  c.sphere_degree = 10;
  c.spine_nodes = 32;
  const GalerkinSolver S(c);
  SpectralField f(S.shape());
  f.set({0, 0, {2}}, 1e-3);
  f.set({1, 0, {1}}, 5e-4);
  const Eigen::VectorXd x = S.coefficients(f);
  for (auto _ : state) benchmark::DoNotOptimize(S.nonlinearity(x));
}
BENCHMARK(BM_GalerkinNonlinearity);

static void BM_AxisymStep(benchmark::State& state) {
  const AxisymmetricState s0 =
      make_axisym_state(2, 10.0, 0.05, 0.0, [](double y) { return 1e-3 * (y * y - 2) * std::exp(-y * y / 8); });
  for (auto _ : state) {
    std::vector<double> prev;
    benchmark::DoNotOptimize(axisym_step(s0, 0.01, prev));
  }
}
BENCHMARK(BM_AxisymStep);

static void BM_SolveInhomogeneous(benchmark::State& state) {
  const auto s = CylinderShape::make(2, 1);
  SpectralField phi(s);
  for (const ModeEntry& e : enumerate_modes(s, Rational(2))) phi.set(e.mode, 0.1);
  const InhomogeneousProblem p{s, {{1.25, phi}}, 0.25, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(solve_inhomogeneous(p));
}
BENCHMARK(BM_SolveInhomogeneous);

BENCHMARK_MAIN();
