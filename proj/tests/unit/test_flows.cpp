// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "cylflow/axisym.hpp"
#include "cylflow/galerkin.hpp"
#include "cylflow/low_spherical.hpp"

using namespace cylflow;

TEST_CASE("axisymmetric cylinder is stationary") {
  const AxisymmetricState s0 = make_axisym_state(2, 6.0, 0.1, 0.0, [](double) { return 0.0; });
  AxisymSchedule sched;
  sched.growth = 0.0;
  sched.R0 = 6.0;
  const AxisymmetricState s1 = axisym_run(s0, 1.0, sched);
  for (double v : s1.v()) CHECK(std::abs(v) <= 1e-13);
  CHECK(s1.tau == doctest::Approx(1.0));
}

TEST_CASE("axisymmetric flow preserves reflection symmetry") {
  const AxisymmetricState s0 =
      make_axisym_state(2, 6.0, 0.1, 0.0, [](double y) { return 1e-3 * std::exp(-y * y / 4) * (y * y - 2); });
  AxisymSchedule sched;
  sched.growth = 0.0;
  sched.R0 = 6.0;
  const AxisymmetricState s1 = axisym_run(s0, 1.0, sched);
  const auto v = s1.v();
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - v[v.size() - 1 - i]) <= 1e-14);
}

TEST_CASE("quadratic mode projection recovers the coefficient") {
  const AxisymmetricState s = make_axisym_state(2, 10.0, 0.02, 0.0, [](double y) { return 0.01 * (y * y - 2); },
                                                AxisymBoundary::FittedProfile);
  CHECK(axisym_quadratic_mode(s) == doctest::Approx(0.01).epsilon(1e-3));
  CHECK(std::abs(axisym_constant_mode(s)) <= 1e-4);
}

TEST_CASE("axisymmetric nonlinearity is quadratic") {
  auto q = [](double eps) {
    const AxisymmetricState s =
        make_axisym_state(2, 6.0, 0.1, 0.0, [eps](double y) { return eps * std::exp(-y * y / 8) * (1 + y); });
    return axisym_nonlinearity(s);
  };
  const auto a = q(1e-3), b = q(2e-3);
  std::size_t mid = a.size() / 2 + 3;
  CHECK(b[mid] / a[mid] == doctest::Approx(4.0).epsilon(1e-2));
}

namespace {

GalerkinConfig small_config() {
  GalerkinConfig c;
  c.gamma_max = 2.0;
  c.sphere_degree = 10;
  c.spine_nodes = 32;
  c.half_width = 7.0;
  return c;
}

}  // namespace

TEST_CASE("Galerkin nonlinearity vanishes at zero and scales like eps^2") {
  const GalerkinSolver S(small_config());
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(S.size()));
  CHECK(S.nonlinearity(zero).norm() == 0.0);
  SpectralField f(S.shape());
  f.set({0, 0, {2}}, 1.0);
  f.set({1, 0, {1}}, 0.5);
  const Eigen::VectorXd c = S.coefficients(f);
  const double q1 = S.nonlinearity(1e-4 * c).norm(), q2 = S.nonlinearity(2e-4 * c).norm();
  CHECK(q1 > 0);
  CHECK(q2 / q1 == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("Galerkin coefficients and field are inverse") {
  const GalerkinSolver S(small_config());
  SpectralField f(S.shape());
  f.set({0, 0, {3}}, 0.3);
  f.set({2, 0, {0}}, -0.1);
  CHECK((S.field(S.coefficients(f)) - f).norm() <= 1e-14);
  CHECK(S.index_of({0, 0, {30}}) == -1);
}

TEST_CASE("linear step is exact for a single mode at zero amplitude limit") {
  const GalerkinSolver S(small_config());
  SpectralField f(S.shape());
  const ModeIndex mode{0, 0, {3}};
  f.set(mode, 1e-9);
  const Eigen::VectorXd c = S.step(S.coefficients(f), 0.1);
  CHECK(c(S.index_of(mode)) == doctest::Approx(1e-9 * std::exp(-0.05)).epsilon(1e-6));
}

TEST_CASE("exp weights match quadrature and small-z limits") {
  CHECK(exp_weight_late(0.0) == doctest::Approx(0.5));
  CHECK(exp_weight_early(0.0) == doctest::Approx(0.5));
  const double z = 1.7;
  // int_0^1 e^{-z t} t dt = (1 - (1 + z) e^{-z}) / z^2.
  CHECK(exp_weight_late(z) == doctest::Approx((1 - (1 + z) * std::exp(-z)) / (z * z)).epsilon(1e-13));
  CHECK(exp_weight_early(1e-9) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("low spherical flow: leading decay of a quadratic harmonic seed") {
  SphereFlowConfig cfg;
  cfg.m = 2;
  cfg.degree = 6;
  const auto S = SphereFlowSolver::make(cfg);
  const Eigen::VectorXd psi = quadratic_seed(*S, 0.01);
  const LowSphericalFlow flow = S->xi_map(psi, 1e-10);
  CHECK(flow.converged);
  // Leading term e^{-tau/m} psi.
  const Eigen::VectorXd c5 = flow.at(5.0).c;
  CHECK((c5 - std::exp(-2.5) * psi).norm() <= 0.05 * std::exp(-2.5) * psi.norm());
}
