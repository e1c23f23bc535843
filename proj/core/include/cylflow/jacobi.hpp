// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <vector>

#include "cylflow/geometry.hpp"

namespace cylflow {

/// a tau^p e^{-rate tau}.
struct ExpTerm {
  double a = 0.0;
  double rate = 0.0;
  int power = 0;

  double value(double tau) const;
  double derivative(double tau) const;
};

/// Field whose mode coefficients are finite sums of ExpTerms in tau.
class ModalTrajectory {
 public:
  ModalTrajectory() = default;
  explicit ModalTrajectory(const CylinderShape& shape) : shape_(shape) {}

  const CylinderShape& shape() const { return shape_; }
  const std::map<ModeIndex, std::vector<ExpTerm>>& terms() const { return terms_; }
  void add(const ModeIndex& mode, ExpTerm t);

  SpectralField at(double tau) const;
  SpectralField derivative(double tau) const;
  ModalTrajectory& operator+=(const ModalTrajectory& o);

 private:
  CylinderShape shape_;
  std::map<ModeIndex, std::vector<ExpTerm>> terms_;
};

/// e^{tau L} applied to the field: coefficients times e^{-gamma tau}.
SpectralField evolve_linear(const SpectralField& field, double tau);
/// The same flow as a closed-form trajectory.
ModalTrajectory linear_flow(const SpectralField& field);

/// ln(||v(tau)|| / ||v(tau + 1)||) for the linear flow of `field`; throws on zero.
double linear_decay_order(const SpectralField& field, double tau);

/// Forcing h(tau) = sum_t e^{-rate_t tau} phi_t with spectral avoidance level
/// lambda and weight power lambda_prime.
struct InhomogeneousProblem {
  CylinderShape shape;
  std::vector<std::pair<double, SpectralField>> forcing;  ///< (rate, phi)
  double lambda = 0.0;
  double lambda_prime = 0.0;

  SpectralField h(double tau) const;
};

/// Tail horizon with e^{(gamma_j - lambda) T} below 1e-13 for every mode below lambda.
double tail_horizon(const InhomogeneousProblem& p);

/// Closed-form Duhamel solution: modes above lambda integrate forward from 0,
/// modes below integrate the tail back from the horizon. Throws if a forced
/// mode sits within `gap` of lambda.
ModalTrajectory solve_inhomogeneous(const InhomogeneousProblem& p, double gap = 1e-9);

/// sup over pointwise samples of |h(tau)| / (e^{-lambda tau} (1 + |y|^2)^{lambda'}).
double forcing_bound_ratio(const InhomogeneousProblem& p, const CylinderGrid& grid, const std::vector<double>& taus,
                           double far_radius);

/// max over (tau, node) of |e^{tau L} h| e^{lambda tau} / (1 + |y|^2)^{lambda'}.
double semigroup_weighted_bound_check(const SpectralField& h, double lambda, double lambda_prime,
                                      const CylinderGrid& grid, const std::vector<double>& taus,
                                      double far_radius);

struct AsymptoticProjection {
  SpectralField psi;
  double ratio = 0.0;   ///< max |w - e^{-mu tau} psi| e^{lambda tau} / (1+|y|^2)^{lambda'}
  bool psi_vanishes = false;
};
/// psi = Pi_{=mu} w(0) and the weighted residual ratio.
AsymptoticProjection asymptotic_projection_check(const ModalTrajectory& w, Rational mu, double lambda,
                                                 double lambda_prime, const CylinderGrid& grid,
                                                 const std::vector<double>& taus, double far_radius);

/// Node samples of a field on `grid` plus a far-field ring of spine points
/// out to far_radius (sphere node 0), as (|y|^2, value) pairs.
std::vector<std::pair<double, double>> pointwise_samples(const SpectralField& f, const CylinderGrid& grid,
                                                         double far_radius);

}  // namespace cylflow
