// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/galerkin.hpp"

#include <algorithm>
#include <cmath>

#include "cylflow/rmcf.hpp"

namespace cylflow {

double exp_weight_late(double z) {
  if (std::abs(z) < 1e-3) return 0.5 - z / 3.0 + z * z / 8.0 - z * z * z / 30.0;
  return (1.0 - (1.0 + z) * std::exp(-z)) / (z * z);
}

double exp_weight_early(double z) {
  if (std::abs(z) < 1e-3) return 0.5 - z / 6.0 + z * z / 24.0 - z * z * z / 120.0;
  return (z + std::expm1(-z)) / (z * z);
}

namespace {

// (1 - e^{-z}) / z
double phi1(double z) { return std::abs(z) < 1e-8 ? 1.0 - 0.5 * z : -std::expm1(-z) / z; }

}  // namespace

Eigen::VectorXd GalerkinTrajectory::at(double tau) const {
  const std::size_t T = times.size();
  if (T == 0) throw std::out_of_range("GalerkinTrajectory: empty");
  if (T < 4) return coeffs.col(0);
  const double h = times[1] - times[0];
  const double s = (tau - times[0]) / h;
  long i0 = static_cast<long>(std::floor(s)) - 1;
  i0 = std::clamp(i0, 0L, static_cast<long>(T) - 4);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(coeffs.rows());
  for (long a = 0; a < 4; ++a) {
    double w = 1.0;
    for (long b = 0; b < 4; ++b)
      if (b != a) w *= (s - static_cast<double>(i0 + b)) / static_cast<double>(a - b);
    out += w * coeffs.col(i0 + a);
  }
  return out;
}

GalerkinSolver::GalerkinSolver(const GalerkinConfig& cfg) : cfg_(cfg), shape_(CylinderShape::make(cfg.n, cfg.k)) {
  for (const ModeEntry& e : enumerate_modes(shape_, cfg.gamma_max)) modes_.push_back(e.mode);
  gamma_.resize(static_cast<Eigen::Index>(modes_.size()));
  for (std::size_t q = 0; q < modes_.size(); ++q) gamma_(static_cast<Eigen::Index>(q)) = eigenvalue(shape_, modes_[q].i, modes_[q].j());
  grid_ = std::make_shared<CylinderGrid>(shape_, sphere_rule(shape_.m(), cfg.sphere_degree),
                                         spine_box_legendre(shape_.k, cfg.half_width, cfg.spine_nodes));
  sampler_ = std::make_unique<ModalSampler>(grid_, modes_, true);
}

int GalerkinSolver::index_of(const ModeIndex& mode) const {
  const auto it = std::find(modes_.begin(), modes_.end(), mode);
  return it == modes_.end() ? -1 : static_cast<int>(it - modes_.begin());
}

Eigen::VectorXd GalerkinSolver::coefficients(const SpectralField& f) const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(modes_.size()));
  for (const auto& [mode, value] : f.coeffs()) {
    const int q = index_of(mode);
    if (q < 0) throw std::invalid_argument("galerkin: field has a mode outside the truncation: " + mode.str());
    c(q) = value;
  }
  return c;
}

SpectralField GalerkinSolver::field(const Eigen::VectorXd& c) const {
  SpectralField f(shape_);
  for (std::size_t q = 0; q < modes_.size(); ++q)
    if (c(static_cast<Eigen::Index>(q)) != 0.0) f.set(modes_[q], c(static_cast<Eigen::Index>(q)));
  return f;
}

Eigen::VectorXd GalerkinSolver::nonlinearity(const Eigen::VectorXd& c) const {
  const std::vector<GraphJet> jets = sampler_->synthesize_jets(c);
  std::vector<double> nodes(jets.size());
  const int m = shape_.m(), k = shape_.k;
  const double rho = shape_.rho();
  for (std::size_t a = 0; a < jets.size(); ++a) nodes[a] = rmcf_speed(m, k, rho, jets[a], grid_->y(a)).N;
  return sampler_->analyze(nodes);
}

double GalerkinSolver::aliasing_indicator(const Eigen::VectorXd& q) const {
  const double total = q.norm();
  if (total == 0.0) return 0.0;
  double top = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i)
    if (gamma_(i) > cfg_.gamma_max - 1.0) top += q(i) * q(i);
  return std::sqrt(top) / total;
}

Eigen::VectorXd GalerkinSolver::step(const Eigen::VectorXd& c, double dt) const {
  const Eigen::VectorXd n0 = nonlinearity(c);
  const double alias = aliasing_indicator(n0);
  if (alias > cfg_.aliasing_tol && n0.norm() > 1e-14) throw AliasingError(alias);
  Eigen::VectorXd a(c.size()), out(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    const double z = gamma_(i) * dt;
    a(i) = std::exp(-z) * c(i) + dt * phi1(z) * n0(i);
  }
  const Eigen::VectorXd n1 = nonlinearity(a);
  for (Eigen::Index i = 0; i < c.size(); ++i) out(i) = a(i) + dt * exp_weight_early(gamma_(i) * dt) * (n1(i) - n0(i));
  return out;
}

GalerkinTrajectory GalerkinSolver::stable_manifold(const Eigen::VectorXd& seed, double tol, int max_iter) const {
  GalerkinTrajectory tr;
  const double h = cfg_.dt;
  const long steps = std::lround(cfg_.horizon / h);
  const Eigen::Index Q = static_cast<Eigen::Index>(modes_.size()), T = steps + 1;
  for (long i = 0; i <= steps; ++i) tr.times.push_back(static_cast<double>(i) * h);
  tr.coeffs = Eigen::MatrixXd::Zero(Q, T);
  for (Eigen::Index q = 0; q < Q; ++q)
    if (gamma_(q) >= cfg_.split)
      for (Eigen::Index t = 0; t < T; ++t) tr.coeffs(q, t) = std::exp(-gamma_(q) * tr.times[t]) * seed(q);
  Eigen::MatrixXd N(Q, T);
  for (int it = 0; it < max_iter; ++it) {
    for (Eigen::Index t = 0; t < T; ++t) {
      N.col(t) = nonlinearity(tr.coeffs.col(t));
      tr.max_aliasing = std::max(tr.max_aliasing, aliasing_indicator(N.col(t)));
    }
    Eigen::MatrixXd next(Q, T);
    for (Eigen::Index q = 0; q < Q; ++q) {
      const double z = gamma_(q) * h;
      if (gamma_(q) >= cfg_.split) {
        const double E = std::exp(-z), wa = h * exp_weight_early(z), wb = h * exp_weight_late(z);
        // Linear interpolation of N on each step, integrated exactly against the kernel.
        next(q, 0) = seed(q);
        for (Eigen::Index t = 0; t + 1 < T; ++t)
          next(q, t + 1) = E * next(q, t) + wb * N(q, t) + wa * N(q, t + 1);
      } else {
        const double E = std::exp(z), wl = h * exp_weight_early(-z), wr = h * exp_weight_late(-z);
        next(q, T - 1) = 0.0;
        for (Eigen::Index t = T - 1; t-- > 0;) next(q, t) = E * next(q, t + 1) - wl * N(q, t) - wr * N(q, t + 1);
      }
    }
    const double inc = (next - tr.coeffs).cwiseAbs().maxCoeff();
    tr.coeffs = std::move(next);
    tr.increments.push_back(inc);
    if (inc < tol) {
      tr.converged = true;
      break;
    }
  }
  return tr;
}

SpectralField galerkin_step(const GalerkinSolver& solver, const SpectralField& field, double dt) {
  return solver.field(solver.step(solver.coefficients(field), dt));
}

}  // namespace cylflow
