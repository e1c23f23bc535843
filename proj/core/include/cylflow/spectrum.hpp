// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cylflow/polynomial.hpp"
#include "cylflow/rational.hpp"

namespace cylflow {

/// Round generalized cylinder S^{n-k}(rho) x R^k in R^{n+1}, rho^2 = 2(n-k).
struct CylinderShape {
  int n = 2;
  int k = 1;

  /// Validating constructor: n >= 2, 1 <= k <= n-1.
  static CylinderShape make(int n, int k);

  int m() const { return n - k; }
  int rho_squared() const { return 2 * (n - k); }
  double rho() const;
  /// Number of ambient coordinates carried by the sphere factor.
  int dim_theta() const { return m() + 1; }
  /// Ambient dimension n + 1.
  int dim() const { return n + 1; }
  /// 1/(n-k), the slowest spherical rate.
  Rational gamma_sphere() const { return Rational(1, m()); }
  /// 1/2 + min(1/2, 1/(n-k)).
  Rational gamma_plus() const;

  friend bool operator==(const CylinderShape&, const CylinderShape&) = default;
};

/// Eigenmode label: spherical degree i, index s in the degree-i harmonic
/// basis, Hermite multi-degree alpha.
struct ModeIndex {
  int i = 0;
  int s = 0;
  std::vector<int> alpha;

  int j() const;
  auto operator<=>(const ModeIndex&) const = default;
  std::string str() const;
};

/// mu_i + j/2 - 1 with mu_i = i(i - 1 + m)/(2m), exact.
Rational eigenvalue_exact(const CylinderShape& shape, int i, int j);
double eigenvalue(const CylinderShape& shape, int i, int j);
Rational eigenvalue_exact(const CylinderShape& shape, const ModeIndex& mode);

/// Monic Hermite polynomial h_l with h'' - (y/2)h' + (l/2)h = 0.
double hermite(int l, double y);
/// Integer coefficients of h_l in ascending powers.
std::vector<long long> hermite_coefficients(int l);
/// h_l in variable var of an nvars-variate polynomial ring.
Polynomial hermite_polynomial(int l, int nvars, int var);
/// Integral of h_l^2 e^{-y^2/4} over R: 2^l l! sqrt(4 pi).
double hermite_norm_squared(int l);

/// Dimension of degree-i spherical harmonics on S^m.
long long harmonic_dimension(int m, int i);

/// Integral of x^alpha over the sphere of the given radius in R^{alpha.size()}.
double sphere_monomial_integral(const Polynomial::Exponent& alpha, double radius);
/// Integral of y^p e^{-y^2/4} over R.
double spine_moment(int p);
/// (4 pi)^{-n/2} e^{-(n-k)/2}: density of the Gaussian measure on the cylinder
/// relative to dsigma(theta) e^{-|y|^2/4} dy.
double cylinder_measure_constant(const CylinderShape& shape);
/// Gaussian mass of the full cylinder.
double gaussian_mass(const CylinderShape& shape);

/// Orthonormal basis of degree-i harmonics in L^2(S^m(sqrt(2m)), dsigma),
/// stored as homogeneous harmonic polynomials in m+1 ambient variables.
/// Built once per (m, i) by harmonic projection of monomials in
/// decreasing lexicographic order followed by Gram-Schmidt.
const std::vector<Polynomial>& sphere_harmonics(int m, int i);

struct ModeEntry {
  ModeIndex mode;
  Rational eigenvalue;
};

/// All modes with eigenvalue <= gamma_max, sorted by eigenvalue then index.
std::vector<ModeEntry> enumerate_modes(const CylinderShape& shape, Rational gamma_max);
std::vector<ModeEntry> enumerate_modes(const CylinderShape& shape, double gamma_max);

/// Gaussian-L^2-orthonormal eigenfunction as a polynomial in (theta, y).
const Polynomial& mode_polynomial(const CylinderShape& shape, const ModeIndex& mode);
/// Evaluates the orthonormal eigenfunction; throws if |theta| != rho.
double evaluate_mode(const CylinderShape& shape, const ModeIndex& mode, std::span<const double> theta,
                     std::span<const double> y);

/// Exact Gaussian integral of a polynomial in (theta, y) over the cylinder.
double gaussian_integral(const CylinderShape& shape, const Polynomial& p);
double gaussian_inner(const CylinderShape& shape, const Polynomial& p, const Polynomial& q);

enum class Relation { GE, GT, EQ, NE, LT, LE };
bool relation_holds(const Rational& lhs, Relation rel, const Rational& rhs);

/// Finitely supported coefficient vector over the orthonormal eigenbasis.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const CylinderShape& shape) : shape_(shape) {}

  const CylinderShape& shape() const { return shape_; }
  const std::map<ModeIndex, double>& coeffs() const { return coeffs_; }
  double coeff(const ModeIndex& mode) const;
  void set(const ModeIndex& mode, double c);
  void add(const ModeIndex& mode, double c);
  bool empty() const { return coeffs_.empty(); }

  double norm() const;
  double dot(const SpectralField& o) const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  Polynomial to_polynomial() const;
  double evaluate(std::span<const double> theta, std::span<const double> y) const;

 private:
  CylinderShape shape_;
  std::map<ModeIndex, double> coeffs_;
};

/// L = Delta - (1/2) y . grad_y + 1 on the field (multiplies by -eigenvalue).
SpectralField apply_L(const SpectralField& field);
/// Orthogonal projection onto the eigenspaces with eigenvalue `rel` gamma.
SpectralField project(const SpectralField& field, Relation rel, Rational gamma);
/// Exact expansion of a polynomial in (theta, y) restricted to the cylinder.
SpectralField field_from_polynomial(const CylinderShape& shape, const Polynomial& p);

/// Translation-like field x . theta-hat (eigenvalue -1/2).
SpectralField psi_translation(const CylinderShape& shape, const Eigen::VectorXd& x);
/// Rotation-like field <A(0,y), (theta-hat, 0)> for A with off-diagonal block ell.
SpectralField psi_rotation(const CylinderShape& shape, const Eigen::MatrixXd& ell);
/// The (n+1)x(n+1) generator [[0, ell], [-ell^T, 0]].
Eigen::MatrixXd rotation_generator(const CylinderShape& shape, const Eigen::MatrixXd& ell);
/// Off-diagonal block of a generator; throws if the diagonal blocks are nonzero.
Eigen::MatrixXd generator_block(const CylinderShape& shape, const Eigen::MatrixXd& A, double tol = 1e-12);

/// Structure of an element of W_{1/2}: psi = <q(y) - 2 tr q, theta-hat> + c(y).
struct HalfModeDecomposition {
  /// q[a] is the symmetric k x k matrix of the a-th component.
  std::vector<Eigen::MatrixXd> q;
  /// Coefficients of the monic cubic Hermite products h_alpha, |alpha| = 3.
  std::map<std::vector<int>, double> c;
  /// Max coefficient deviation after reassembly.
  double residual = 0.0;
};

HalfModeDecomposition decompose_W_half(const SpectralField& psi, double tol = 1e-8);
Polynomial half_mode_polynomial(const CylinderShape& shape, const HalfModeDecomposition& d);
SpectralField synthesize_W_half(const CylinderShape& shape, const HalfModeDecomposition& d);

/// Gap ||a + h(. + Y) - h||_{L^2(gamma_k)} by tensor Gauss-Hermite quadrature
/// in the probability Gaussian measure on R^k. `nodes` per axis must be >= deg h + 1.
double hermite_translation_gap(int k, const Polynomial& h, double a, const Eigen::VectorXd& Y, int nodes = 0);

}  // namespace cylflow
