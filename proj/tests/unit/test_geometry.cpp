// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <memory>

#include "cylflow/geometry.hpp"
#include "cylflow/quadrature.hpp"
#include "cylflow/trajectory.hpp"
#include "cylflow/whitney.hpp"

using namespace cylflow;

TEST_CASE("Gauss-Hermite rule integrates Gaussian moments") {
  // Probabilists' weight normalized to mass 1: E[y^2] = 1, E[y^4] = 3.
  const Rule1D r = gauss_hermite(10);
  double m0 = 0, m2 = 0, m4 = 0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    m0 += r.w[i];
    m2 += r.w[i] * r.x[i] * r.x[i];
    m4 += r.w[i] * std::pow(r.x[i], 4);
  }
  CHECK(m2 / m0 == doctest::Approx(1.0 * spine_moment(2) / spine_moment(0)).epsilon(1e-12));
  CHECK(m4 / m2 == doctest::Approx(spine_moment(4) / spine_moment(2)).epsilon(1e-12));
}

TEST_CASE("sphere rule integrates low-degree harmonics to zero") {
  const SphereRule r = sphere_rule(2, 8);
  double mass = 0, z2 = 0, xyz = 0;
  for (std::size_t a = 0; a < r.size(); ++a) {
    const auto w = r.node(a);
    mass += r.w[a];
    z2 += r.w[a] * (w[2] * w[2] - 1.0 / 3.0);
    xyz += r.w[a] * w[0] * w[1] * w[2];
  }
  CHECK(mass > 0);
  CHECK(std::abs(z2) <= 1e-13 * mass);
  CHECK(std::abs(xyz) <= 1e-13 * mass);
}

TEST_CASE("cutoff chi: odd, identity near 0, saturates at 1, C^2 joins") {
  for (double s : {0.0, 0.1, 0.3, 0.5}) {
    CHECK(chi(s) == s);
    CHECK(chi(-s) == -s);
  }
  for (double s : {1.0, 1.5, 10.0}) CHECK(chi(s) == 1.0);
  double prev = chi(0.0);
  for (double s = 0.01; s <= 1.2; s += 0.01) {
    CHECK(chi(s) >= prev - 1e-15);
    CHECK(chi(-s) == -chi(s));
    prev = chi(s);
  }
  const double h = 1e-6;
  for (double j : {0.5, 1.0}) {
    CHECK(chi_prime(j - h) == doctest::Approx(chi_prime(j + h)).epsilon(1e-4));
    CHECK(chi_second(j - h) == doctest::Approx(chi_second(j + h)).epsilon(1e-3).scale(1.0));
  }
}

TEST_CASE("cutoff chi is not concave on [0, 1]") {
  // chi'' changes sign on (1/2, 1); the smooth cutoff is monotone but not concave.
  bool positive = false, negative = false;
  for (double s = 0.51; s < 1.0; s += 0.01) {
    positive = positive || chi_second(s) > 1e-9;
    negative = negative || chi_second(s) < -1e-9;
  }
  CHECK(negative);
  CHECK(positive);
}

TEST_CASE("d_u vanishes on the cylinder and scales linearly for small constants") {
  const auto s = CylinderShape::make(2, 1);
  auto grid = std::make_shared<const CylinderGrid>(CylinderGrid::hermite(s, 8, 16));
  const GraphFunction zero(grid, std::vector<double>(grid->size(), 0.0));
  CHECK(d_u(zero) <= 1e-14);
  const GraphFunction c1(grid, std::vector<double>(grid->size(), 1e-4));
  const GraphFunction c2(grid, std::vector<double>(grid->size(), 2e-4));
  CHECK(d_u(c2) / d_u(c1) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("identity transformation reproduces the graph") {
  const auto s = CylinderShape::make(3, 1);
  auto grid = std::make_shared<const CylinderGrid>(CylinderGrid::truncated(s, 8, 3.0, 8, 4));
  Polynomial P(s.dim());
  P.add_term({1, 0, 0, 1}, 1e-4);
  P.add_term({0, 0, 0, 2}, -2e-4);
  const GraphFunction v = GraphFunction::sample(grid, std::make_shared<const PolynomialGraphSource>(s, P));
  const GraphFunction t = transform_graph(v, 1.0, Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(1),
                                          Eigen::MatrixXd::Zero(4, 4));
  for (std::size_t a = 0; a < v.values().size(); ++a) CHECK(std::abs(t.values()[a] - v.values()[a]) <= 1e-12);
}

TEST_CASE("first-order transformation model: residual within the product bound") {
  const auto s = CylinderShape::make(3, 1);
  const double R = 3.0;
  auto grid = std::make_shared<const CylinderGrid>(CylinderGrid::truncated(s, 8, R, 8, 4));
  Polynomial P(s.dim());
  P.add_term({1, 0, 0, 1}, 2e-5);
  P.add_term({0, 0, 0, 2}, 1e-5);
  auto src = std::make_shared<const PolynomialGraphSource>(s, P);
  const GraphFunction v = GraphFunction::sample(grid, src);
  double vc2 = 0;
  for (const GraphJet& j : v.jets()) vc2 = std::max(vc2, c2_density(s, j));
  Eigen::VectorXd x(3);
  x << 0.3, 0.05, -0.2;
  Eigen::MatrixXd ell(3, 1);
  ell << 0.2, -0.05, -0.3;
  const Eigen::VectorXd y0 = Eigen::VectorXd::Constant(1, 0.4);
  double prev = INFINITY;
  for (double sc : {0.05, 0.025, 0.0125}) {
    const Eigen::MatrixXd A = rotation_generator(s, sc * ell);
    const double lambda = 1.0 + 0.5 * sc;
    const GraphFunction t = transform_graph(v, lambda, sc * x, y0, A);
    double r = 0;
    for (std::size_t a = 0; a < t.values().size(); ++a)
      r = std::max(r, std::abs(transform_first_order(*src, lambda, sc * x, y0, sc * ell, grid->omega(a), grid->y(a)) -
                               t.values()[a]));
    const double size = (sc * x).norm() + R * std::abs(lambda - 1.0) + R * operator_norm(A);
    CHECK(r <= (vc2 + size) * size);
    if (std::isfinite(prev)) CHECK(prev / r == doctest::Approx(4.0).epsilon(0.15));
    prev = r;
  }
}

TEST_CASE("graphical radius of the cylinder reaches R_max") {
  const auto s = CylinderShape::make(2, 1);
  SpectralField zero(s);
  CHECK(graphical_radius(*field_source(zero), 1.0, 6.0) == doctest::Approx(6.0));
  SpectralField f(s);
  f.set({0, 0, {2}}, 0.01);
  const double r = graphical_radius(*field_source(f), 1.0, 50.0);
  CHECK(r > 2.0);
  CHECK(r < 50.0);
}
