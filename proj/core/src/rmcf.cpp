// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/rmcf.hpp"

#include <cmath>

namespace cylflow {

namespace {

struct Parts {
  double R, W2, lap_s, lap_y, B;
};

Parts parts(double rho, const GraphJet& jet) {
  Parts p;
  p.R = rho + jet.v;
  if (!(p.R > 0)) throw NotGraphicalError("rmcf: graph reaches the axis");
  const Eigen::VectorXd& a = jet.grad_s;
  const double R = p.R;
  const double a2 = a.squaredNorm();
  const bool has_y = jet.grad_y.size() > 0;
  p.W2 = 1.0 + a2 / (R * R) + (has_y ? jet.grad_y.squaredNorm() : 0.0);
  p.lap_s = jet.hess_s.trace();
  p.lap_y = has_y ? jet.hess_y.trace() : 0.0;
  p.B = a2 / (R * R * R) + a.dot(jet.hess_s * a) / (R * R * R * R);
  if (has_y) {
    const Eigen::VectorXd& b = jet.grad_y;
    p.B += 2.0 * a.dot(jet.mixed * b) / (R * R) + b.dot(jet.hess_y * b);
  }
  return p;
}

}  // namespace

double graph_mean_curvature(int m, double rho, const GraphJet& jet) {
  const Parts p = parts(rho, jet);
  const double W = std::sqrt(p.W2);
  return (m / p.R - p.lap_s / (p.R * p.R) - p.lap_y) / W + p.B / (W * p.W2);
}

GraphSpeed rmcf_speed(int m, int k, double rho, const GraphJet& jet, std::span<const double> y) {
  if (std::abs(rho * rho - 2.0 * m) > 1e-9 * rho * rho)
    throw std::invalid_argument("rmcf_speed: rho^2 = 2m required");
  const Parts p = parts(rho, jet);
  double yb = 0.0;
  for (int b = 0; b < k; ++b) yb += y[b] * jet.grad_y(b);
  const double v = jet.v;
  GraphSpeed s;
  s.Lv = p.lap_s / (rho * rho) + p.lap_y - 0.5 * yb + v;
  // -m/R + R/2 - v collapses to -v^2 / (2R) since rho^2 = 2m.
  s.N = -v * v / (2.0 * p.R) - p.lap_s * v * (2.0 * rho + v) / (p.R * p.R * rho * rho) - p.B / p.W2;
  s.F = s.Lv + s.N;
  return s;
}

}  // namespace cylflow
