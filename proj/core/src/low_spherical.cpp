// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/low_spherical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cylflow/quadrature.hpp"
#include "cylflow/rmcf.hpp"

namespace cylflow {

namespace {

double lagrange(const std::vector<double>& x, std::size_t r, double s) {
  double v = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (j != r) v *= (s - x[j]) / (x[r] - x[j]);
  return v;
}

}  // namespace

std::shared_ptr<SphereFlowSolver> SphereFlowSolver::make(const SphereFlowConfig& cfg) {
  return std::shared_ptr<SphereFlowSolver>(new SphereFlowSolver(cfg));
}

SphereFlowSolver::SphereFlowSolver(const SphereFlowConfig& cfg) : cfg_(cfg) {
  const int m = cfg_.m;
  if (m < 1 || m > 3) throw std::invalid_argument("SphereFlowSolver: m in {1,2,3}");
  if (cfg_.degree < 3) throw std::invalid_argument("SphereFlowSolver: degree >= 3 required");
  rho_ = std::sqrt(2.0 * m);
  const double T = cfg_.horizon > 0 ? cfg_.horizon : 0.5 * m * std::log(1e12);
  panels_ = static_cast<int>(std::ceil(T / cfg_.panel - 1e-9));
  horizon_ = panels_ * cfg_.panel;
  const Rule1D g = gauss_legendre(4, 0.0, cfg_.panel);
  gauss_x_ = g.x;
  for (int p = 0; p < panels_; ++p)
    for (double x : gauss_x_) times_.push_back(p * cfg_.panel + x);

  const double c0 = std::pow(4.0 * std::numbers::pi, -m / 2.0) * std::exp(-m / 2.0);
  for (int i = 0; i <= cfg_.degree; ++i) {
    for (const Polynomial& h : sphere_harmonics(m, i)) {
      basis_.push_back(h * (1.0 / std::sqrt(c0)));
      degree_.push_back(i);
      lambda_.push_back(i * (i + m - 1.0) / (2.0 * m) - 1.0);
    }
  }
  const int qd = cfg_.quad_degree > 0 ? cfg_.quad_degree : 3 * cfg_.degree;
  rule_ = sphere_rule(m, qd);
  const std::size_t N = rule_.size(), M = basis_.size();
  const int d = m + 1;
  node_weight_.resize(static_cast<Eigen::Index>(N));
  for (std::size_t a = 0; a < N; ++a) node_weight_(a) = c0 * std::pow(rho_, m) * rule_.w[a];
  val_.resize(N, M);
  grad_.assign(d, Eigen::MatrixXd(N, M));
  hess_.assign(d * d, Eigen::MatrixXd(N, M));
  for (std::size_t q = 0; q < M; ++q)
    for (std::size_t a = 0; a < N; ++a) {
      const GraphJet j = sphere_polynomial_jet(basis_[q], rho_, rule_.node(a));
      val_(a, q) = j.v;
      for (int r = 0; r < d; ++r) {
        grad_[r](a, q) = j.grad_s(r);
        for (int s = 0; s < d; ++s) hess_[r * d + s](a, q) = j.hess_s(r, s);
      }
    }
  for (int i = 0; i <= cfg_.degree; ++i) weights_.push_back(make_weights(i * (i + m - 1.0) / (2.0 * m) - 1.0));
}

void SphereFlowSolver::partial_weights(double lambda, double delta, std::vector<double>& fwd,
                                       std::vector<double>& bwd) const {
  const double h = cfg_.panel;
  fwd.assign(gauss_x_.size(), 0.0);
  bwd.assign(gauss_x_.size(), 0.0);
  if (delta > 0) {
    const Rule1D q = gauss_legendre(16, 0.0, delta);
    for (std::size_t a = 0; a < q.x.size(); ++a)
      for (std::size_t r = 0; r < gauss_x_.size(); ++r)
        fwd[r] += q.w[a] * std::exp(-lambda * (delta - q.x[a])) * lagrange(gauss_x_, r, q.x[a]);
  }
  if (delta < h) {
    const Rule1D q = gauss_legendre(16, delta, h);
    for (std::size_t a = 0; a < q.x.size(); ++a)
      for (std::size_t r = 0; r < gauss_x_.size(); ++r)
        bwd[r] += q.w[a] * std::exp(lambda * (q.x[a] - delta)) * lagrange(gauss_x_, r, q.x[a]);
  }
}

SphereFlowSolver::Weights SphereFlowSolver::make_weights(double lambda) const {
  Weights w;
  w.lambda = lambda;
  std::vector<double> f, b;
  partial_weights(lambda, cfg_.panel, w.full_fwd, b);
  partial_weights(lambda, 0.0, f, w.full_bwd);
  for (double x : gauss_x_) {
    partial_weights(lambda, x, f, b);
    w.part_fwd.push_back(f);
    w.part_bwd.push_back(b);
  }
  return w;
}

Eigen::VectorXd SphereFlowSolver::coefficients_of(const Polynomial& p) const {
  Eigen::VectorXd f(static_cast<Eigen::Index>(rule_.size()));
  std::vector<double> x(cfg_.m + 1);
  for (std::size_t a = 0; a < rule_.size(); ++a) {
    for (int c = 0; c <= cfg_.m; ++c) x[c] = rho_ * rule_.node(a)[c];
    f(a) = p.evaluate(x);
  }
  return analyze(f);
}

double SphereFlowSolver::evaluate(const Eigen::VectorXd& c, std::span<const double> omega) const {
  std::vector<double> x(cfg_.m + 1);
  for (int i = 0; i <= cfg_.m; ++i) x[i] = rho_ * omega[i];
  double s = 0.0;
  for (std::size_t q = 0; q < basis_.size(); ++q)
    if (c(q) != 0.0) s += c(q) * basis_[q].evaluate(x);
  return s;
}

Eigen::VectorXd SphereFlowSolver::synthesize(const Eigen::VectorXd& c) const { return val_ * c; }

Eigen::VectorXd SphereFlowSolver::analyze(const Eigen::VectorXd& f) const {
  return val_.transpose() * node_weight_.cwiseProduct(f);
}

std::vector<GraphJet> SphereFlowSolver::jets(const Eigen::VectorXd& c) const {
  const int d = cfg_.m + 1;
  const Eigen::VectorXd v = val_ * c;
  std::vector<Eigen::VectorXd> g(d), h(d * d);
  for (int r = 0; r < d; ++r) g[r] = grad_[r] * c;
  for (int r = 0; r < d * d; ++r) h[r] = hess_[r] * c;
  std::vector<GraphJet> out(rule_.size(), GraphJet::zero(cfg_.m, 0));
  for (std::size_t a = 0; a < rule_.size(); ++a) {
    GraphJet& j = out[a];
    j.v = v(a);
    for (int r = 0; r < d; ++r) {
      j.grad_s(r) = g[r](a);
      for (int s = 0; s < d; ++s) j.hess_s(r, s) = h[r * d + s](a);
    }
  }
  return out;
}

Eigen::VectorXd SphereFlowSolver::speed_nodes(const Eigen::VectorXd& c) const {
  const auto js = jets(c);
  Eigen::VectorXd F(static_cast<Eigen::Index>(js.size()));
  for (std::size_t a = 0; a < js.size(); ++a) F(a) = rmcf_speed(cfg_.m, 0, rho_, js[a], {}).F;
  return F;
}

Eigen::VectorXd SphereFlowSolver::nonlinearity_nodes(const Eigen::VectorXd& c) const {
  const auto js = jets(c);
  Eigen::VectorXd N(static_cast<Eigen::Index>(js.size()));
  for (std::size_t a = 0; a < js.size(); ++a) N(a) = rmcf_speed(cfg_.m, 0, rho_, js[a], {}).N;
  return N;
}

Eigen::VectorXd SphereFlowSolver::nonlinearity(const Eigen::VectorXd& c) const {
  return analyze(nonlinearity_nodes(c));
}

Eigen::VectorXd SphereFlowSolver::apply_L(const Eigen::VectorXd& c) const {
  Eigen::VectorXd out(c.size());
  for (Eigen::Index q = 0; q < c.size(); ++q) out(q) = -lambda_[q] * c(q);
  return out;
}

double SphereFlowSolver::sobolev_norm(const Eigen::VectorXd& c, int l) const {
  double s = 0.0;
  for (Eigen::Index q = 0; q < c.size(); ++q) {
    const int i = degree_[q];
    s += std::pow(1.0 + i * (i + cfg_.m - 1.0) / (rho_ * rho_), l) * c(q) * c(q);
  }
  return std::sqrt(s);
}

double SphereFlowSolver::trajectory_norm(const Eigen::MatrixXd& u) const {
  const Rule1D g = gauss_legendre(4, 0.0, cfg_.panel);
  double integral = 0.0, sup = 0.0;
  for (std::size_t t = 0; t < times_.size(); ++t) {
    const Eigen::VectorXd c = u.col(static_cast<Eigen::Index>(t));
    const double hl1 = sobolev_norm(c, cfg_.sobolev + 1);
    integral += g.w[t % 4] * std::exp(2.0 * cfg_.eta * times_[t]) * hl1 * hl1;
    sup = std::max(sup, std::exp(cfg_.sigma * times_[t]) * sobolev_norm(c, cfg_.sobolev));
  }
  return std::sqrt(integral) + sup;
}

Eigen::MatrixXd SphereFlowSolver::forcing_of(const Eigen::MatrixXd& u, const Eigen::VectorXd& phi) const {
  Eigen::MatrixXd g(u.rows(), u.cols());
  for (std::size_t t = 0; t < times_.size(); ++t) {
    const Eigen::VectorXd w = u.col(static_cast<Eigen::Index>(t)) + std::exp(-times_[t] / cfg_.m) * phi;
    g.col(static_cast<Eigen::Index>(t)) = nonlinearity(w);
  }
  return g;
}

Eigen::MatrixXd SphereFlowSolver::duhamel_map(const Eigen::MatrixXd& u, const Eigen::VectorXd& phi) const {
  if (u.rows() != static_cast<Eigen::Index>(modes()) || u.cols() != static_cast<Eigen::Index>(times_.size()))
    throw std::invalid_argument("duhamel_map: trajectory shape mismatch");
  const Eigen::MatrixXd g = forcing_of(u, phi);
  const double h = cfg_.panel;
  const int P = panels_, Q = static_cast<int>(gauss_x_.size());
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(u.rows(), u.cols());
  for (std::size_t q = 0; q < modes(); ++q) {
    const Weights& w = weights_[degree_[q]];
    const double lam = w.lambda;
    const auto row = g.row(static_cast<Eigen::Index>(q));
    if (degree_[q] >= 3) {
      double I = 0.0;  // value at the panel start
      for (int p = 0; p < P; ++p) {
        for (int a = 0; a < Q; ++a) {
          double s = std::exp(-lam * gauss_x_[a]) * I;
          for (int r = 0; r < Q; ++r) s += w.part_fwd[a][r] * row(p * Q + r);
          U(q, p * Q + a) = s;
        }
        double next = std::exp(-lam * h) * I;
        for (int r = 0; r < Q; ++r) next += w.full_fwd[r] * row(p * Q + r);
        I = next;
      }
    } else {
      double J = 0.0;  // value at the panel end
      for (int p = P - 1; p >= 0; --p) {
        for (int a = 0; a < Q; ++a) {
          double s = std::exp(lam * (h - gauss_x_[a])) * J;
          for (int r = 0; r < Q; ++r) s += w.part_bwd[a][r] * row(p * Q + r);
          U(q, p * Q + a) = -s;
        }
        double prev = std::exp(lam * h) * J;
        for (int r = 0; r < Q; ++r) prev += w.full_bwd[r] * row(p * Q + r);
        J = prev;
      }
    }
  }
  return U;
}

Eigen::VectorXd SphereFlowSolver::duhamel_at(const Eigen::MatrixXd& g, double tau) const {
  if (tau < 0 || tau > horizon_) throw std::out_of_range("duhamel_at: tau outside [0, horizon]");
  const double h = cfg_.panel;
  const int Q = static_cast<int>(gauss_x_.size());
  const int pt = std::min(panels_ - 1, static_cast<int>(std::floor(tau / h)));
  const double delta = tau - pt * h;
  Eigen::VectorXd out(static_cast<Eigen::Index>(modes()));
  std::vector<double> fwd, bwd;
  double last_lambda = NAN;
  for (std::size_t q = 0; q < modes(); ++q) {
    const Weights& w = weights_[degree_[q]];
    const double lam = w.lambda;
    if (lam != last_lambda) {
      partial_weights(lam, delta, fwd, bwd);
      last_lambda = lam;
    }
    const auto row = g.row(static_cast<Eigen::Index>(q));
    if (degree_[q] >= 3) {
      double I = 0.0;
      for (int p = 0; p < pt; ++p) {
        double next = std::exp(-lam * h) * I;
        for (int r = 0; r < Q; ++r) next += w.full_fwd[r] * row(p * Q + r);
        I = next;
      }
      double s = std::exp(-lam * delta) * I;
      for (int r = 0; r < Q; ++r) s += fwd[r] * row(pt * Q + r);
      out(q) = s;
    } else {
      double J = 0.0;
      for (int p = panels_ - 1; p > pt; --p) {
        double prev = std::exp(lam * h) * J;
        for (int r = 0; r < Q; ++r) prev += w.full_bwd[r] * row(p * Q + r);
        J = prev;
      }
      double s = std::exp(lam * (h - delta)) * J;
      for (int r = 0; r < Q; ++r) s += bwd[r] * row(pt * Q + r);
      out(q) = -s;
    }
  }
  return out;
}

LowSphericalFlow SphereFlowSolver::xi_map(const Eigen::VectorXd& psi, double tol, int max_iter) const {
  if (psi.size() != static_cast<Eigen::Index>(modes())) throw std::invalid_argument("xi_map: seed size mismatch");
  for (std::size_t q = 0; q < modes(); ++q)
    if (degree_[q] != 2 && psi(q) != 0.0) throw std::invalid_argument("xi_map: seed must be a quadratic harmonic");
  LowSphericalFlow f;
  f.solver = shared_from_this();
  f.psi = psi;
  f.sigma = cfg_.sigma;
  f.kappa = cfg_.kappa;
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(modes()), static_cast<Eigen::Index>(times_.size()));
  if (psi.norm() == 0.0) {
    f.xi = u;
    f.forcing = u;
    f.converged = true;
    return f;
  }
  for (int it = 0; it < max_iter; ++it) {
    Eigen::MatrixXd next = duhamel_map(u, psi);
    const double inc = trajectory_norm(next - u);
    f.increments.push_back(inc);
    u = std::move(next);
    if (!std::isfinite(inc) || (it >= 3 && inc > 2.0 * f.increments[it - 1]))
      throw std::runtime_error("xi_map: Picard iteration does not contract");
    if (inc < tol) {
      f.converged = true;
      break;
    }
  }
  f.xi = u;
  f.forcing = forcing_of(u, psi);
  return f;
}

SphereSpectralState LowSphericalFlow::at(double tau) const {
  SphereSpectralState s;
  s.m = solver->config().m;
  s.tau = tau;
  s.c = solver->duhamel_at(forcing, tau) + std::exp(-tau / s.m) * psi;
  return s;
}

double LowSphericalFlow::value(std::span<const double> omega, double tau) const {
  return solver->evaluate(at(tau).c, omega);
}

Eigen::VectorXd quadratic_seed(const SphereFlowSolver& s, double amplitude) {
  const int d = s.config().m + 1;
  Polynomial p(d);
  std::vector<int> e(d, 0);
  e[0] = 2;
  p.add_term(e, 1.0);
  e[0] = 0;
  e[1] = 2;
  p.add_term(e, -1.0);
  Eigen::VectorXd c = s.coefficients_of(p);
  for (Eigen::Index q = 0; q < c.size(); ++q)
    if (s.mode_degree(static_cast<std::size_t>(q)) != 2 || std::abs(c(q)) < 1e-14) c(q) = 0.0;
  return amplitude * c / c.norm();
}

SphereProfile family_U(const CylinderShape& shape, const LowSphericalFlow* flow, double tau) {
  if (shape.m() == 1 || flow == nullptr) return [](std::span<const double>) { return 0.0; };
  if (flow->solver->config().m != shape.m()) throw std::invalid_argument("family_U: sphere dimension mismatch");
  auto solver = flow->solver;
  const Eigen::VectorXd c = flow->at(tau).c;
  return [solver, c](std::span<const double> omega) { return solver->evaluate(c, omega); };
}

}  // namespace cylflow
