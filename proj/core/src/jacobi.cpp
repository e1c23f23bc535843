// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/jacobi.hpp"

#include <algorithm>
#include <cmath>

namespace cylflow {

double ExpTerm::value(double tau) const { return a * std::pow(tau, power) * std::exp(-rate * tau); }

double ExpTerm::derivative(double tau) const {
  const double e = std::exp(-rate * tau);
  double d = -rate * a * std::pow(tau, power) * e;
  if (power > 0) d += a * power * std::pow(tau, power - 1) * e;
  return d;
}

void ModalTrajectory::add(const ModeIndex& mode, ExpTerm t) { terms_[mode].push_back(t); }

SpectralField ModalTrajectory::at(double tau) const {
  SpectralField f(shape_);
  for (const auto& [mode, ts] : terms_) {
    double c = 0.0;
    for (const ExpTerm& t : ts) c += t.value(tau);
    f.set(mode, c);
  }
  return f;
}

SpectralField ModalTrajectory::derivative(double tau) const {
  SpectralField f(shape_);
  for (const auto& [mode, ts] : terms_) {
    double c = 0.0;
    for (const ExpTerm& t : ts) c += t.derivative(tau);
    f.set(mode, c);
  }
  return f;
}

ModalTrajectory& ModalTrajectory::operator+=(const ModalTrajectory& o) {
  for (const auto& [mode, ts] : o.terms_)
    for (const ExpTerm& t : ts) terms_[mode].push_back(t);
  return *this;
}

SpectralField evolve_linear(const SpectralField& field, double tau) {
  SpectralField out(field.shape());
  for (const auto& [mode, c] : field.coeffs())
    out.set(mode, c * std::exp(-eigenvalue_exact(field.shape(), mode).to_double() * tau));
  return out;
}

ModalTrajectory linear_flow(const SpectralField& field) {
  ModalTrajectory w(field.shape());
  for (const auto& [mode, c] : field.coeffs())
    w.add(mode, ExpTerm{c, eigenvalue_exact(field.shape(), mode).to_double(), 0});
  return w;
}

double linear_decay_order(const SpectralField& field, double tau) {
  // Factor out the slowest exponential so large tau does not underflow.
  double gmin = INFINITY;
  for (const auto& [mode, c] : field.coeffs())
    if (c != 0.0) gmin = std::min(gmin, eigenvalue_exact(field.shape(), mode).to_double());
  if (!std::isfinite(gmin)) throw std::domain_error("linear_decay_order: zero field");
  double s0 = 0.0, s1 = 0.0;
  for (const auto& [mode, c] : field.coeffs()) {
    const double g = eigenvalue_exact(field.shape(), mode).to_double() - gmin;
    s0 += c * c * std::exp(-2.0 * g * tau);
    s1 += c * c * std::exp(-2.0 * g * (tau + 1.0));
  }
  return gmin + 0.5 * std::log(s0 / s1);
}

SpectralField InhomogeneousProblem::h(double tau) const {
  SpectralField f(shape);
  for (const auto& [rate, phi] : forcing) f += std::exp(-rate * tau) * phi;
  return f;
}

double tail_horizon(const InhomogeneousProblem& p) {
  double gap = INFINITY;
  for (const auto& [rate, phi] : p.forcing)
    for (const auto& [mode, c] : phi.coeffs()) {
      const double g = eigenvalue_exact(p.shape, mode).to_double();
      if (g < p.lambda) gap = std::min(gap, p.lambda - g);
    }
  if (!std::isfinite(gap)) return 0.0;
  return std::log(1e13) / gap;
}

ModalTrajectory solve_inhomogeneous(const InhomogeneousProblem& p, double gap) {
  ModalTrajectory w(p.shape);
  const double T = tail_horizon(p);
  for (const auto& [mu, phi] : p.forcing) {
    for (const auto& [mode, c] : phi.coeffs()) {
      if (c == 0.0) continue;
      const double g = eigenvalue_exact(p.shape, mode).to_double();
      if (std::abs(g - p.lambda) < gap) throw std::invalid_argument("solve_inhomogeneous: forced mode at lambda");
      if (g > p.lambda) {
        // int_0^tau e^{-g (tau - s)} c e^{-mu s} ds
        if (std::abs(g - mu) < 1e-14) {
          w.add(mode, ExpTerm{c, g, 1});
        } else {
          w.add(mode, ExpTerm{c / (g - mu), mu, 0});
          w.add(mode, ExpTerm{-c / (g - mu), g, 0});
        }
      } else {
        // -int_tau^T e^{-g (tau - s)} c e^{-mu s} ds
        if (std::abs(g - mu) < 1e-14) {
          w.add(mode, ExpTerm{c, g, 1});
          w.add(mode, ExpTerm{-c * T, g, 0});
        } else {
          w.add(mode, ExpTerm{-c / (mu - g), mu, 0});
          w.add(mode, ExpTerm{c * std::exp((g - mu) * T) / (mu - g), g, 0});
        }
      }
    }
  }
  return w;
}

std::vector<std::pair<double, double>> pointwise_samples(const SpectralField& f, const CylinderGrid& grid,
                                                         double far_radius) {
  const CylinderShape& shape = f.shape();
  const int dt = shape.dim_theta(), k = shape.k;
  const double rho = shape.rho();
  const Polynomial P = f.to_polynomial();
  std::vector<std::pair<double, double>> out;
  std::vector<double> x(shape.dim());
  for (std::size_t a = 0; a < grid.size(); ++a) {
    double y2 = 0.0;
    for (int c = 0; c < dt; ++c) x[c] = rho * grid.omega(a)[c];
    for (int b = 0; b < k; ++b) {
      x[dt + b] = grid.y(a)[b];
      y2 += x[dt + b] * x[dt + b];
    }
    out.emplace_back(y2, P.evaluate(x));
  }
  if (far_radius > 0) {
    // Far-field ring: radial rays along each spine axis and the diagonal.
    const int nr = 24;
    for (int c = 0; c < dt; ++c) x[c] = rho * grid.sphere().node(0)[c];
    for (int dir = 0; dir <= k; ++dir) {
      for (int i = 1; i <= nr; ++i) {
        const double r = far_radius * i / nr;
        for (int b = 0; b < k; ++b) x[dt + b] = dir < k ? (b == dir ? r : 0.0) : r / std::sqrt(double(k));
        out.emplace_back(r * r, P.evaluate(x));
        for (int b = 0; b < k; ++b) x[dt + b] = -x[dt + b];
        out.emplace_back(r * r, P.evaluate(x));
      }
    }
  }
  return out;
}

double forcing_bound_ratio(const InhomogeneousProblem& p, const CylinderGrid& grid, const std::vector<double>& taus,
                           double far_radius) {
  double worst = 0.0;
  for (double tau : taus)
    for (const auto& [y2, val] : pointwise_samples(p.h(tau), grid, far_radius))
      worst = std::max(worst, std::abs(val) * std::exp(p.lambda * tau) / std::pow(1.0 + y2, p.lambda_prime));
  return worst;
}

double semigroup_weighted_bound_check(const SpectralField& h, double lambda, double lambda_prime,
                                      const CylinderGrid& grid, const std::vector<double>& taus,
                                      double far_radius) {
  double worst = 0.0;
  for (double tau : taus)
    for (const auto& [y2, val] : pointwise_samples(evolve_linear(h, tau), grid, far_radius))
      worst = std::max(worst, std::abs(val) * std::exp(lambda * tau) / std::pow(1.0 + y2, lambda_prime));
  return worst;
}

AsymptoticProjection asymptotic_projection_check(const ModalTrajectory& w, Rational mu, double lambda,
                                                 double lambda_prime, const CylinderGrid& grid,
                                                 const std::vector<double>& taus, double far_radius) {
  AsymptoticProjection out;
  out.psi = project(w.at(0.0), Relation::EQ, mu);
  out.psi_vanishes = out.psi.norm() == 0.0;
  const double m = mu.to_double();
  for (double tau : taus) {
    SpectralField r = w.at(tau) - std::exp(-m * tau) * out.psi;
    for (const auto& [y2, val] : pointwise_samples(r, grid, far_radius))
      out.ratio = std::max(out.ratio, std::abs(val) * std::exp(lambda * tau) / std::pow(1.0 + y2, lambda_prime));
  }
  return out;
}

}  // namespace cylflow
