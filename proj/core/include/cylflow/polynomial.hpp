// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <span>
#include <vector>

namespace cylflow {

/// Sparse multivariate polynomial with real coefficients.
///
/// Terms are kept in an ordered map keyed by exponent vectors so iteration
/// order (and therefore every floating point reduction) is deterministic.
class Polynomial {
 public:
  using Exponent = std::vector<int>;

  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}

  static Polynomial constant(int nvars, double c);
  static Polynomial variable(int nvars, int index, double c = 1.0);
  static Polynomial monomial(const Exponent& e, double c = 1.0);

  int nvars() const { return nvars_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, double>& terms() const { return terms_; }
  double coefficient(const Exponent& e) const;
  double max_abs_coefficient() const;

  void add_term(const Exponent& e, double c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Polynomial derivative(int var) const;
  /// Sum of second derivatives in variables [first, first + count).
  Polynomial laplacian(int first, int count) const;
  /// Terms of total degree exactly d.
  Polynomial homogeneous_part(int d) const;
  Polynomial pruned(double tol) const;
  /// Re-embed into nvars_new variables, shifting variable v to v + offset.
  Polynomial embedded(int nvars_new, int offset) const;

  double evaluate(std::span<const double> x) const;
  double operator()(std::span<const double> x) const { return evaluate(x); }

 private:
  int nvars_ = 0;
  std::map<Exponent, double> terms_;
};

/// All exponent vectors of total degree d in nvars variables, in
/// lexicographically decreasing order (x0^d first).
std::vector<Polynomial::Exponent> exponents_of_degree(int nvars, int d);

}  // namespace cylflow
