// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/profile.hpp"

#include <algorithm>
#include <cmath>

namespace cylflow {

namespace {

// Least-squares slope of ys against xs.
double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t N = xs.size();
  if (N < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(N);
  my /= static_cast<double>(N);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

bool in_last_third(double tau, double first, double last) { return tau >= last - (last - first) / 3.0 - 1e-12; }

// Pi_{= gamma} w without the spine-independent modes.
SpectralField eigen_part(const SpectralField& w, Rational gamma) {
  SpectralField p = project(w, Relation::EQ, gamma);
  SpectralField out(w.shape());
  for (const auto& [mode, c] : p.coeffs())
    if (mode.j() > 0) out.set(mode, c);
  return out;
}

double spine_norm2(std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s += v * v;
  return s;
}

}  // namespace

double polynomial_profile_error(const GraphFunction& v, double tau, const std::vector<int>& axes) {
  const CylinderGrid& g = v.grid();
  const CylinderShape& shape = g.shape();
  const double amp = std::sqrt(2.0 * shape.m()) / (4.0 * tau);
  double num = 0.0, den = 0.0;
  for (std::size_t a = 0; a < g.size(); ++a) {
    const auto y = g.y(a);
    if (spine_norm2(y) > tau) continue;
    double p = 0.0;
    for (int i : axes) p += amp * (y[i] * y[i] - 2.0);
    const double d = v.values()[a] - p;
    num += g.weight(a) * d * d;
    den += g.weight(a) * p * p;
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

PolynomialProfileFit fit_polynomial_profile(const std::vector<GraphSample>& window, double threshold) {
  PolynomialProfileFit fit;
  if (window.empty()) return fit;
  const CylinderShape shape = window.front().graph.shape();
  const int k = shape.k;
  const std::size_t T = window.size();
  fit.coeff.resize(static_cast<Eigen::Index>(T), k);
  fit.ratio.resize(static_cast<Eigen::Index>(T), k);
  for (std::size_t t = 0; t < T; ++t) {
    const GraphSample& s = window[t];
    const CylinderGrid& g = s.graph.grid();
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(k, k);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd basis(k);
    for (std::size_t a = 0; a < g.size(); ++a) {
      const auto y = g.y(a);
      if (spine_norm2(y) > s.tau) continue;
      for (int i = 0; i < k; ++i) basis(i) = y[i] * y[i] - 2.0;
      G += g.weight(a) * basis * basis.transpose();
      b += g.weight(a) * s.graph.values()[a] * basis;
    }
    const Eigen::VectorXd c = G.ldlt().solve(b);
    double res = 0.0;
    for (std::size_t a = 0; a < g.size(); ++a) {
      const auto y = g.y(a);
      if (spine_norm2(y) > s.tau) continue;
      double f = s.graph.values()[a];
      for (int i = 0; i < k; ++i) f -= c(i) * (y[i] * y[i] - 2.0);
      res += g.weight(a) * f * f;
    }
    fit.tau.push_back(s.tau);
    fit.coeff.row(static_cast<Eigen::Index>(t)) = c.transpose();
    fit.ratio.row(static_cast<Eigen::Index>(t)) = c.transpose() * (4.0 * s.tau / shape.rho());
    fit.residual.push_back(std::sqrt(res));
  }
  for (int i = 0; i < k; ++i)
    if (fit.ratio(static_cast<Eigen::Index>(T) - 1, i) > threshold) fit.axes.push_back(i);
  for (const GraphSample& s : window) fit.relative_error.push_back(polynomial_profile_error(s.graph, s.tau, fit.axes));
  std::vector<double> lx, ly;
  for (std::size_t t = 0; t < T; ++t)
    if (fit.residual[t] > 0.0) {
      lx.push_back(std::log(fit.tau[t]));
      ly.push_back(std::log(fit.residual[t]));
    }
  fit.residual_slope = ls_slope(lx, ly);
  return fit;
}

ExponentialProfileFit fit_exponential_profile(const std::vector<FieldSample>& window, Rational gamma, double floor) {
  ExponentialProfileFit fit;
  fit.gamma = gamma.to_double();
  if (window.empty()) return fit;
  const CylinderShape shape = window.front().w.shape();
  fit.psi = SpectralField(shape);
  const double first = window.front().tau, last = window.back().tau;
  int count = 0;
  for (const FieldSample& s : window)
    if (in_last_third(s.tau, first, last)) {
      fit.psi += std::exp(fit.gamma * s.tau) * eigen_part(s.w, gamma);
      ++count;
    }
  if (count > 0) fit.psi *= 1.0 / count;
  std::vector<double> xs, ys;
  for (const FieldSample& s : window) {
    const double r = (s.w - std::exp(-fit.gamma * s.tau) * fit.psi).norm();
    fit.tau.push_back(s.tau);
    fit.residual.push_back(r);
    if (r > floor && r > 0.0) {
      xs.push_back(s.tau);
      ys.push_back(std::log(r));
    }
  }
  fit.exponent = -ls_slope(xs, ys);
  fit.inconclusive = xs.size() < 2 || fit.exponent < fit.gamma;
  return fit;
}

std::string to_string(ProfileCase c) {
  switch (c) {
    case ProfileCase::Polynomial: return "polynomial";
    case ProfileCase::Exponential: return "exponential";
    case ProfileCase::SuperExponential: return "super-exponential";
    case ProfileCase::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

AsymptoticProfile classify_trichotomy(const CylinderShape& shape, const DecaySeries& s, double eps, double underflow) {
  AsymptoticProfile p;
  p.decay = decay_order_at_infinity(shape, s, eps, underflow);
  p.raw = p.decay.raw;
  if (p.decay.inconclusive) return p;
  if (!p.decay.finite) {
    p.kind = ProfileCase::SuperExponential;
    return p;
  }
  p.gamma = p.decay.gamma;
  if (p.gamma == Rational(0))
    p.kind = ProfileCase::Polynomial;
  else if (!(p.gamma < Rational(1, 2)))
    p.kind = ProfileCase::Exponential;
  return p;
}

WhitneyJet extract_whitney_jet(const CylinderShape& shape, const SpectralField& psi, const Eigen::VectorXd& X,
                               double t, const Eigen::MatrixXd& A, double tol) {
  const SpectralField off = psi - project(psi, Relation::EQ, Rational(1, 2));
  if (off.norm() > tol * std::max(1.0, psi.norm())) throw NotHalfModeError("extract_whitney_jet: psi is not in W_{1/2}");
  const HalfModeDecomposition d = decompose_W_half(psi, tol);
  WhitneyJet jet = WhitneyJet::from_generator(shape, X, t, A, d.q);
  jet.cubic = d.c;
  return jet;
}

SpineFit fit_spine(const GraphFunction& v, std::shared_ptr<const CylinderGrid> grid, const Eigen::MatrixXd& ell0,
                   int max_iter, double tol) {
  const CylinderShape& shape = v.shape();
  const int rows = shape.dim_theta(), cols = shape.k, P = rows * cols;
  const std::size_t M = grid->size();
  Eigen::VectorXd sw(static_cast<Eigen::Index>(M));
  for (std::size_t a = 0; a < M; ++a) sw(static_cast<Eigen::Index>(a)) = std::sqrt(grid->weight(a));
  const Eigen::VectorXd zx = Eigen::VectorXd::Zero(rows), zy = Eigen::VectorXd::Zero(cols);
  auto residual = [&](const Eigen::VectorXd& p) {
    const Eigen::MatrixXd ell = Eigen::Map<const Eigen::MatrixXd>(p.data(), rows, cols);
    const GraphFunction g = transform_graph(v, 1.0, zx, zy, -rotation_generator(shape, ell), grid);
    return Eigen::VectorXd(sw.cwiseProduct(Eigen::Map<const Eigen::VectorXd>(g.values().data(), static_cast<Eigen::Index>(M))));
  };
  Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(ell0.data(), P);
  if (ell0.size() == 0) p = Eigen::VectorXd::Zero(P);
  SpineFit fit;
  const double h = 1e-5;
  Eigen::VectorXd R = residual(p);
  for (int it = 0; it < max_iter; ++it) {
    Eigen::MatrixXd J(static_cast<Eigen::Index>(M), P);
    for (int c = 0; c < P; ++c) {
      Eigen::VectorXd pp = p, pm = p;
      pp(c) += h;
      pm(c) -= h;
      J.col(c) = (residual(pp) - residual(pm)) / (2.0 * h);
    }
    const Eigen::VectorXd delta = (J.transpose() * J).ldlt().solve(-J.transpose() * R);
    p += delta;
    R = residual(p);
    fit.iterations = it + 1;
    if (delta.norm() < tol) break;
  }
  fit.ell = Eigen::Map<const Eigen::MatrixXd>(p.data(), rows, cols);
  fit.A = rotation_generator(shape, fit.ell);
  fit.objective = R.squaredNorm();
  return fit;
}

WhitneyJet harvest_whitney_jet(const CylinderShape& shape, const std::vector<GraphSample>& window,
                               std::shared_ptr<const CylinderGrid> grid, const Eigen::VectorXd& X, double t) {
  if (window.empty()) throw std::invalid_argument("harvest_whitney_jet: empty window");
  const double first = window.front().tau, last = window.back().tau;
  const Eigen::VectorXd zx = Eigen::VectorXd::Zero(shape.dim_theta()), zy = Eigen::VectorXd::Zero(shape.k);
  Eigen::MatrixXd ell = Eigen::MatrixXd::Zero(shape.dim_theta(), shape.k), ell_sum = ell;
  SpectralField psi(shape);
  int count = 0;
  for (const GraphSample& s : window) {
    if (!in_last_third(s.tau, first, last)) continue;
    const SpineFit sf = fit_spine(s.graph, grid, ell);
    ell = sf.ell;
    const GraphFunction back = transform_graph(s.graph, 1.0, zx, zy, -sf.A, grid);
    psi += std::exp(0.5 * s.tau) * eigen_part(project_grid(back, Relation::EQ, Rational(1, 2)), Rational(1, 2));
    ell_sum += sf.ell;
    ++count;
  }
  psi *= 1.0 / count;
  ell_sum /= count;
  return extract_whitney_jet(shape, psi, X, t, rotation_generator(shape, ell_sum));
}

double Basepoint::r() const { return std::max({x.norm(), y.norm(), std::sqrt(std::abs(t))}); }

Reexpansion basepoint_reexpansion(const std::function<std::shared_ptr<const GraphSource>(double)>& flow,
                                  double sigma_min, double sigma_max, const Basepoint& p,
                                  const std::vector<double>& taus, std::shared_ptr<const CylinderGrid> grid,
                                  const Eigen::MatrixXd& A) {
  Reexpansion out;
  const CylinderShape& shape = grid->shape();
  const Eigen::MatrixXd rot = A.size() == 0 ? Eigen::MatrixXd::Zero(shape.dim(), shape.dim()) : Eigen::MatrixXd(-A);
  for (double tau : taus) {
    const double e = std::exp(-tau) - p.t;
    if (e <= 0.0) throw OutOfRangeError("basepoint_reexpansion: tau beyond the basepoint time");
    const double sigma = -std::log(e);
    if (sigma < sigma_min - 1e-12 || sigma > sigma_max + 1e-12)
      throw OutOfRangeError("basepoint_reexpansion: source time outside the stored range");
    const double lambda = std::sqrt(1.0 - p.t * std::exp(tau));
    const double s = std::exp(0.5 * tau);
    const GraphFunction base = GraphFunction::sample(grid, flow(sigma));
    out.tau.push_back(tau);
    out.sigma.push_back(sigma);
    out.lambda.push_back(lambda);
    out.x_r.push_back(s * p.x);
    out.y_r.push_back(s * p.y);
    out.graphs.push_back(transform_graph(base, lambda, s * p.x, s * p.y, rot, grid));
  }
  return out;
}

}  // namespace cylflow
