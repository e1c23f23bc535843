// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <span>
#include <vector>

#include "cylflow/spectrum.hpp"

namespace cylflow {

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss rule for the weight e^{-y^2/4} on R (Golub-Welsch).
Rule1D gauss_hermite(int n);
/// Gauss-Legendre rule on [a, b].
Rule1D gauss_legendre(int n, double a = -1.0, double b = 1.0);
/// Gauss rule for the weight sqrt(1 - t^2) on [-1, 1] (closed form).
Rule1D gauss_chebyshev2(int n);

/// Quadrature on the unit sphere S^m in R^{m+1} for the surface measure.
struct SphereRule {
  int m = 1;
  std::vector<double> nodes;  ///< row-major, (m+1) per node
  std::vector<double> w;
  int exact_degree = 0;
  std::size_t size() const { return w.size(); }
  std::span<const double> node(std::size_t a) const {
    return {nodes.data() + a * (m + 1), static_cast<std::size_t>(m + 1)};
  }
};

/// Product rule exact for polynomials of total degree <= degree (m in {0,1,2,3}).
SphereRule sphere_rule(int m, int degree);

/// Quadrature on R^k (or a ball in it) for e^{-|y|^2/4} dy.
struct SpineRule {
  int k = 1;
  std::vector<double> nodes;  ///< row-major, k per node
  std::vector<double> w;      ///< Gaussian weight folded in
  int exact_degree = 0;       ///< nominal polynomial degree (exact for untruncated rules)
  double radius = std::numeric_limits<double>::infinity();
  std::size_t size() const { return w.size(); }
  std::span<const double> node(std::size_t a) const {
    return {nodes.data() + a * k, static_cast<std::size_t>(k)};
  }
};

/// Tensor Gauss-Hermite rule, n nodes per axis.
SpineRule spine_gauss_hermite(int k, int n);
/// Ball B^k_R in polar form: radial Gauss-Legendre on [r0, r1] against
/// r^{k-1} e^{-r^2/4} times a sphere rule on S^{k-1}.
SpineRule spine_ball(int k, double r0, double r1, int n_radial, int angular_degree);
/// Tensor Gauss-Legendre on the cube [-L, L]^k with the Gaussian weight folded in.
SpineRule spine_box_legendre(int k, double L, int n);
/// Concatenation of two spine rules (used for piecewise rules).
SpineRule spine_concat(const SpineRule& a, const SpineRule& b);

/// Tensor product quadrature on the cylinder for the Gaussian measure.
///
/// Node a = is * spine.size() + iy. weight(a) includes the constant
/// (4 pi)^{-n/2} e^{-rho^2/4}, the sphere radius factor rho^m and e^{-|y|^2/4}.
class CylinderGrid {
 public:
  CylinderGrid(const CylinderShape& shape, SphereRule sphere, SpineRule spine);

  /// Untruncated grid exact for harmonics up to sphere_degree and Hermite
  /// products up to 2 n_spine - 1.
  static CylinderGrid hermite(const CylinderShape& shape, int sphere_degree, int n_spine);
  /// Grid on the truncated cylinder with spine ball of radius R.
  static CylinderGrid truncated(const CylinderShape& shape, int sphere_degree, double R, int n_radial,
                                int angular_degree = 8);

  const CylinderShape& shape() const { return shape_; }
  const SphereRule& sphere() const { return sphere_; }
  const SpineRule& spine() const { return spine_; }
  std::size_t size() const { return sphere_.size() * spine_.size(); }
  std::size_t sphere_index(std::size_t a) const { return a / spine_.size(); }
  std::size_t spine_index(std::size_t a) const { return a % spine_.size(); }
  std::span<const double> omega(std::size_t a) const { return sphere_.node(sphere_index(a)); }
  std::span<const double> y(std::size_t a) const { return spine_.node(spine_index(a)); }
  double weight(std::size_t a) const { return weights_[a]; }
  double truncation_radius() const { return spine_.radius; }

  /// Gaussian integral of node samples (fixed summation order).
  double integrate(std::span<const double> f) const;

 private:
  CylinderShape shape_;
  SphereRule sphere_;
  SpineRule spine_;
  std::vector<double> weights_;
};

}  // namespace cylflow
