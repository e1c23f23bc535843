// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <memory>

#include "cylflow/decay.hpp"
#include "cylflow/profile.hpp"
#include "cylflow/snapshot.hpp"
#include "cylflow/whitney.hpp"

using namespace cylflow;

namespace {

DecaySeries series_of(double (*d)(double), double t1) {
  DecaySeries s;
  for (double t = 0.0; t <= t1 + 1e-9; t += 0.25) {
    s.tau.push_back(t);
    s.d.push_back(d(t));
  }
  return s;
}

}  // namespace

TEST_CASE("decay order of a pure exponential") {
  const DecaySeries s = series_of([](double t) { return 3.0 * std::exp(-0.5 * t); }, 20.0);
  CHECK(decay_order(s, 4.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("trichotomy: exponential, polynomial and super-exponential cases") {
  const auto shape = CylinderShape::make(2, 1);
  const AsymptoticProfile e = classify_trichotomy(shape, series_of([](double t) { return std::exp(-0.5 * t); }, 20.0));
  CHECK(e.kind == ProfileCase::Exponential);
  CHECK(e.gamma == Rational(1, 2));
  const AsymptoticProfile p = classify_trichotomy(shape, series_of([](double t) { return 1.0 / (t + 20.0); }, 40.0));
  CHECK(p.kind == ProfileCase::Polynomial);
  const AsymptoticProfile x = classify_trichotomy(shape, series_of([](double t) { return std::exp(-t * t); }, 8.0));
  CHECK(x.kind == ProfileCase::SuperExponential);
}

TEST_CASE("localization error bound is C / ((tau - T0) R^2)") {
  CHECK(localization_error(3.0, 1.0, 4.0, 8.0) == doctest::Approx(8.0 / (2.0 * 16.0)));
}

TEST_CASE("Whitney compatibility of a jet with itself is exact") {
  const auto shape = CylinderShape::make(2, 1);
  const Eigen::Vector2d a(1.0, 0.5);
  auto G = [&](double y) -> Eigen::VectorXd { return a * y * y; };
  auto dG = [&](double y) -> Eigen::VectorXd { return 2.0 * a * y; };
  auto d2G = [&](double) -> Eigen::VectorXd { return 2.0 * a; };
  const WhitneyJet j = curve_jet(shape, G, dG, d2G, 0.3);
  CHECK(j.projection_defect() <= 1e-12);
  const WhitneyJet j2 = curve_jet(shape, G, dG, d2G, 0.35);
  const CompatibilityReport same = compatibility_check(j, j, 0.9, 1000, 10);
  for (double r : same.residual) CHECK(r <= 1e-14);
  const CompatibilityReport rep = compatibility_check(j, j2, 0.9, 1000, 10);
  CHECK(rep.residual[0] > 0);
}

TEST_CASE("Whitney residuals are invariant under signed permutations and translations") {
  const auto shape = CylinderShape::make(2, 1);
  const Eigen::Vector2d a(1.0, 0.5);
  auto G = [&](double y) -> Eigen::VectorXd { return a * y * y; };
  auto dG = [&](double y) -> Eigen::VectorXd { return 2.0 * a * y; };
  auto d2G = [&](double) -> Eigen::VectorXd { return 2.0 * a; };
  const WhitneyJet j1 = curve_jet(shape, G, dG, d2G, 0.3), j2 = curve_jet(shape, G, dG, d2G, 0.32);
  // Max-abs derivative norms are preserved by signed coordinate permutations.
  Eigen::Matrix3d R;
  R << 0, 0, 1, -1, 0, 0, 0, 1, 0;
  const Eigen::Vector3d b(0.2, -1.0, 0.5);
  const CompatibilityReport r0 = compatibility_check(j1, j2, 0.9, 1000, 10);
  const CompatibilityReport r1 = compatibility_check(move_jet(j1, R, b), move_jet(j2, R, b), 0.9, 1000, 10);
  for (int i = 0; i < 4; ++i) CHECK(r1.residual[static_cast<std::size_t>(i)] == doctest::Approx(r0.residual[static_cast<std::size_t>(i)]).epsilon(1e-10));
}

TEST_CASE("extracting a jet from a synthesized half mode returns q") {
  const auto shape = CylinderShape::make(2, 1);
  HalfModeDecomposition d;
  d.q = {Eigen::MatrixXd::Constant(1, 1, 0.4), Eigen::MatrixXd::Constant(1, 1, -0.25)};
  d.c[{3}] = 0.2;
  const SpectralField psi = synthesize_W_half(shape, d);
  const HalfModeDecomposition back = decompose_W_half(psi);
  for (std::size_t c = 0; c < 2; ++c) CHECK(back.q[c](0, 0) == doctest::Approx(d.q[c](0, 0)).epsilon(1e-12));
  CHECK(back.c.at({3}) == doctest::Approx(0.2).epsilon(1e-12));
  const WhitneyJet j = extract_whitney_jet(shape, psi, Eigen::VectorXd::Zero(3), 0.0, Eigen::MatrixXd::Zero(3, 3));
  for (std::size_t c = 0; c < 2; ++c) CHECK(j.q[c](0, 0) == doctest::Approx(d.q[c](0, 0)).epsilon(1e-10));
  SpectralField bad(shape);
  bad.set({0, 0, {2}}, 1.0);
  CHECK_THROWS_AS(extract_whitney_jet(shape, bad, Eigen::VectorXd::Zero(3), 0.0, Eigen::MatrixXd::Zero(3, 3)),
                  NotHalfModeError);
}

TEST_CASE("location estimate of a jet against itself is zero at comparable distance") {
  const auto shape = CylinderShape::make(2, 1);
  const Eigen::Vector2d a(0.6, 0.3);
  auto G = [&](double y) -> Eigen::VectorXd { return a * y * y; };
  auto dG = [&](double y) -> Eigen::VectorXd { return 2.0 * a * y; };
  auto d2G = [&](double) -> Eigen::VectorXd { return 2.0 * a; };
  WhitneyJet o = curve_jet(shape, G, dG, d2G, 0.0);
  o.A.setZero();
  // Exact quadratic spine: x = q_o(y) so only the frame and Q terms remain.
  const LocationTerms L = location_estimate_check(shape, o, curve_jet(shape, G, dG, d2G, 0.05), 1.0, 0.05);
  CHECK(L.y_comparable);
  CHECK(L.lhs_t == 0.0);
  CHECK(L.lhs_x <= 1e-12);
}

TEST_CASE("reexpansion at the origin is the identity") {
  const auto shape = CylinderShape::make(2, 1);
  auto grid = std::make_shared<const CylinderGrid>(CylinderGrid::hermite(shape, 8, 12));
  SpectralField f(shape);
  f.set({0, 0, {2}}, 0.01);
  auto src = std::make_shared<const PolynomialGraphSource>(shape, f.to_polynomial());
  Basepoint p{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(1), 0.0};
  const Reexpansion re = basepoint_reexpansion([&](double) { return src; }, 0.0, 10.0, p, {1.0, 2.0}, grid);
  REQUIRE(re.graphs.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(re.sigma[i] == doctest::Approx(re.tau[i]));
    CHECK(re.lambda[i] == doctest::Approx(1.0));
    const GraphFunction g = GraphFunction::sample(grid, src);
    for (std::size_t a = 0; a < g.values().size(); ++a) CHECK(re.graphs[i].values()[a] == doctest::Approx(g.values()[a]));
  }
}

TEST_CASE("snapshot encoding round-trips bit for bit") {
  const auto shape = CylinderShape::make(2, 1);
  auto grid = std::make_shared<const CylinderGrid>(CylinderGrid::hermite(shape, 6, 8));
  Snapshot s;
  s.tau = 1.25;
  s.grid = grid;
  for (std::size_t a = 0; a < grid->size(); ++a) s.values.push_back(std::sin(static_cast<double>(a)));
  s.extra_tag = "coeffs";
  s.extra = {1.0, -2.0};
  const std::string bytes = encode_snapshot(s);
  std::size_t off = 0;
  const Snapshot t = decode_snapshot(bytes, off);
  CHECK(off == bytes.size());
  CHECK(t.tau == s.tau);
  CHECK(t.values == s.values);
  CHECK(t.extra_tag == s.extra_tag);
  CHECK(encode_snapshot(t) == bytes);
  CHECK(encode_trajectory({s, t}) == encode_trajectory({t, s}));
}
