// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "cylflow/spectrum.hpp"

using namespace cylflow;

namespace doctest {
template <>
struct StringMaker<Rational> {
  static String convert(const Rational& r) { return r.str().c_str(); }
};
}  // namespace doctest

namespace {

/// Independent oracle: -L eigenvalue from sphere degree i and Hermite degree j.
Rational oracle_gamma(int m, int i, int j) {
  // i(i + m - 1)/(2m) sphere part, j/2 spine part, shifted by -1 for the +v term.
  return Rational(i * (i + m - 1), 2 * m) + Rational(j - 2, 2);
}

}  // namespace

TEST_CASE("eigenvalues of C_{2,1}: frozen table") {
  const auto s = CylinderShape::make(2, 1);
  CHECK(eigenvalue_exact(s, 0, 0) == Rational(-1));
  CHECK(eigenvalue_exact(s, 1, 0) == Rational(-1, 2));
  CHECK(eigenvalue_exact(s, 0, 1) == Rational(-1, 2));
  CHECK(eigenvalue_exact(s, 1, 1) == Rational(0));
  CHECK(eigenvalue_exact(s, 0, 2) == Rational(0));
  CHECK(eigenvalue_exact(s, 2, 0) == Rational(1));
  CHECK(eigenvalue_exact(s, 0, 3) == Rational(1, 2));
  CHECK(eigenvalue_exact(s, 2, 2) == Rational(2));
  CHECK(eigenvalue_exact(CylinderShape::make(3, 1), 2, 0) == Rational(1, 2));
}

TEST_CASE("eigenvalues agree with the closed form for several shapes") {
  for (auto [n, k] : {std::pair{2, 1}, {3, 1}, {3, 2}, {4, 2}, {5, 1}}) {
    const auto s = CylinderShape::make(n, k);
    for (int i = 0; i <= 5; ++i)
      for (int j = 0; j <= 6; ++j) CHECK(eigenvalue_exact(s, i, j) == oracle_gamma(n - k, i, j));
  }
}

TEST_CASE("gamma_plus and gamma_sphere") {
  CHECK(CylinderShape::make(2, 1).gamma_plus() == Rational(1));
  CHECK(CylinderShape::make(3, 1).gamma_plus() == Rational(1));
  CHECK(CylinderShape::make(4, 1).gamma_plus() == Rational(5, 6));
  CHECK(CylinderShape::make(3, 1).gamma_sphere() == Rational(1, 2));
}

TEST_CASE("invalid shapes are rejected") {
  CHECK_THROWS(CylinderShape::make(1, 1));
  CHECK_THROWS(CylinderShape::make(3, 3));
  CHECK_THROWS(CylinderShape::make(3, 0));
}

TEST_CASE("Hermite coefficients match the probabilists' recurrence") {
  CHECK(hermite_coefficients(0) == std::vector<long long>{1});
  CHECK(hermite_coefficients(2) == std::vector<long long>{-2, 0, 1});
  CHECK(hermite_coefficients(3) == std::vector<long long>{0, -6, 0, 1});
  CHECK(hermite_coefficients(4) == std::vector<long long>{12, 0, -12, 0, 1});
  for (double y : {-1.3, 0.0, 0.7, 2.5}) CHECK(hermite(3, y) == doctest::Approx(y * y * y - 6 * y).epsilon(1e-14));
}

TEST_CASE("modes are L-eigenfunctions: apply_L scales by -gamma") {
  const auto s = CylinderShape::make(3, 1);
  for (const ModeEntry& e : enumerate_modes(s, Rational(2))) {
    SpectralField f(s);
    f.set(e.mode, 1.0);
    const SpectralField Lf = apply_L(f);
    CHECK(Lf.coeff(e.mode) == doctest::Approx(-e.eigenvalue.to_double()).epsilon(1e-14));
  }
}

TEST_CASE("projections partition a field") {
  const auto s = CylinderShape::make(2, 1);
  std::mt19937 rng(3);
  std::normal_distribution<double> N;
  SpectralField f(s);
  for (const ModeEntry& e : enumerate_modes(s, Rational(2))) f.set(e.mode, N(rng));
  const Rational g(1, 2);
  const SpectralField sum = project(f, Relation::LT, g) + project(f, Relation::EQ, g) + project(f, Relation::GT, g);
  CHECK((sum - f).norm() <= 1e-15);
  CHECK(project(f, Relation::GE, g).dot(project(f, Relation::LT, g)) == doctest::Approx(0.0));
}

TEST_CASE("field_from_polynomial inverts to_polynomial") {
  const auto s = CylinderShape::make(3, 2);
  std::mt19937 rng(5);
  std::normal_distribution<double> N;
  SpectralField f(s);
  for (const ModeEntry& e : enumerate_modes(s, Rational(3, 2))) f.set(e.mode, N(rng));
  const SpectralField g = field_from_polynomial(s, f.to_polynomial());
  CHECK((g - f).norm() <= 1e-10 * f.norm());
}

TEST_CASE("Hermite translation gap for k = 1, l = 2 has the closed form") {
  const Polynomial h = hermite_polynomial(2, 1, 0);
  for (double a : {-3.0, 0.5, 2.0})
    for (double Y : {1.0, 2.5, 4.0}) {
      Eigen::VectorXd v(1);
      v << Y;
      CHECK(hermite_translation_gap(1, h, a, v) ==
            doctest::Approx(std::sqrt((a + Y * Y) * (a + Y * Y) + 8 * Y * Y)).epsilon(1e-10));
    }
}
