// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "cylflow/jacobi.hpp"

using namespace cylflow;

TEST_CASE("linear flow decays each mode at its eigenvalue") {
  const auto s = CylinderShape::make(2, 1);
  SpectralField f(s);
  const ModeIndex a{0, 0, {3}}, b{1, 0, {1}};
  f.set(a, 2.0);
  f.set(b, -1.0);
  const SpectralField g = evolve_linear(f, 2.0);
  CHECK(g.coeff(a) == doctest::Approx(2.0 * std::exp(-0.5 * 2.0)).epsilon(1e-14));
  CHECK(g.coeff(b) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("linear decay order of a single mode is its eigenvalue") {
  const auto s = CylinderShape::make(3, 1);
  for (const ModeEntry& e : enumerate_modes(s, Rational(2))) {
    SpectralField f(s);
    f.set(e.mode, 0.7);
    CHECK(linear_decay_order(f, 1.5) == doctest::Approx(e.eigenvalue.to_double()).epsilon(1e-10));
  }
}

TEST_CASE("linear decay order is non-increasing for random mixtures") {
  const auto s = CylinderShape::make(2, 1);
  std::mt19937 rng(17);
  std::normal_distribution<double> N;
  for (int trial = 0; trial < 20; ++trial) {
    SpectralField f(s);
    for (const ModeEntry& e : enumerate_modes(s, Rational(2))) f.set(e.mode, N(rng));
    double prev = linear_decay_order(f, 0.0);
    for (double t = 0.5; t <= 5.0; t += 0.5) {
      const double cur = linear_decay_order(f, t);
      CHECK(cur <= prev + 1e-12);
      CHECK(cur >= -1.0 - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("inhomogeneous solution satisfies the Duhamel equation") {
  const auto s = CylinderShape::make(2, 1);
  SpectralField phi(s);
  phi.set({0, 0, {2}}, 1.0);
  phi.set({0, 0, {4}}, -0.5);
  phi.set({2, 0, {0}}, 0.25);
  InhomogeneousProblem p{s, {{1.25, phi}}, 0.25, 0.0};
  const ModalTrajectory w = solve_inhomogeneous(p);
  for (double t : {0.0, 0.5, 2.0, 5.0}) {
    const SpectralField res = w.derivative(t) - apply_L(w.at(t)) - p.h(t);
    CHECK(res.norm() <= 1e-10);
  }
  const SpectralField hi = project(w.at(0.0), Relation::GE, Rational(1, 4));
  for (const auto& [mode, c] : hi.coeffs()) CHECK(c == 0.0);
}
