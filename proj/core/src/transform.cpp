// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "cylflow/geometry.hpp"

namespace cylflow {

TransformedGraphSource::TransformedGraphSource(std::shared_ptr<const GraphSource> base, double lambda,
                                               const Eigen::VectorXd& x, const Eigen::VectorXd& y0,
                                               const Eigen::MatrixXd& A)
    : GraphSource(base->shape()), base_(std::move(base)), lambda_(lambda) {
  const int dt = shape_.dim_theta(), k = shape_.k, d = shape_.dim();
  if (!(lambda > 0)) throw std::invalid_argument("TransformedGraphSource: lambda > 0 required");
  if (x.size() != dt || y0.size() != k || A.rows() != d || A.cols() != d)
    throw std::invalid_argument("TransformedGraphSource: dimension mismatch");
  ell_ = generator_block(shape_, A);
  shift_.resize(d);
  shift_ << x, y0;
  const Eigen::MatrixXd negA = -A;
  inv_rot_ = negA.exp();
}

double TransformedGraphSource::value(std::span<const double> omega, std::span<const double> y) const {
  const int dt = shape_.dim_theta(), k = shape_.k;
  const double rho = shape_.rho();
  Eigen::VectorXd w(dt), yy(k);
  for (int c = 0; c < dt; ++c) w(c) = omega[c];
  for (int b = 0; b < k; ++b) yy(b) = y[b];
  const Eigen::VectorXd inv_y = inv_rot_.rightCols(k) * yy + shift_;
  const Eigen::VectorXd inv_w = inv_rot_.leftCols(dt) * w;
  std::vector<double> om(dt), ys(k);
  // Preimage of (r omega, y) lies on graph(v) iff g(r) = 0.
  auto g = [&](double r) {
    const Eigen::VectorXd X = (r * inv_w + inv_y) / lambda_;
    const double len = X.head(dt).norm();
    for (int c = 0; c < dt; ++c) om[c] = X(c) / len;
    for (int b = 0; b < k; ++b) ys[b] = X(dt + b);
    return len - rho - base_->value(om, ys);
  };
  // First-order guess.
  double r = rho + transform_first_order(*base_, lambda_, shift_.head(dt), shift_.tail(k), ell_, omega, y);
  double lo = r, hi = r, glo = g(lo), ghi = glo;
  if (std::abs(glo) <= 1e-14 * rho) return r - rho;
  double step = 1e-3 * rho;
  while (glo > 0 || ghi < 0) {
    if (glo > 0) {
      lo = std::max(lo - step, 1e-9 * rho);
      glo = g(lo);
    }
    if (ghi < 0) {
      hi += step;
      ghi = g(hi);
    }
    step *= 2;
    if (step > 4 * rho || (lo <= 1e-9 * rho && glo > 0)) throw NotGraphicalError("transform: no radial root bracket");
  }
  if (glo == 0) return lo - rho;
  if (ghi == 0) return hi - rho;
  r = std::clamp(r, lo, hi);
  for (int it = 0; it < 100; ++it) {
    const double gr = g(r);
    if (gr == 0) break;
    if (gr < 0) lo = r; else hi = r;
    const double h = 1e-7 * rho;
    const double dg = (g(r + h) - g(r - h)) / (2 * h);
    double rn = dg > 0 ? r - gr / dg : 0.5 * (lo + hi);
    if (!(rn > lo && rn < hi)) rn = 0.5 * (lo + hi);
    const double dr = std::abs(rn - r);
    r = rn;
    if (dr < 1e-12 || hi - lo < 1e-12) break;
  }
  return r - rho;
}

double transform_first_order(const GraphSource& v, double lambda, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y0, const Eigen::MatrixXd& ell, std::span<const double> omega,
                             std::span<const double> y) {
  const CylinderShape& shape = v.shape();
  const int dt = shape.dim_theta(), k = shape.k;
  const double rho = shape.rho();
  std::vector<double> ys(k);
  for (int b = 0; b < k; ++b) ys[b] = y0(b) / lambda + y[b];
  Eigen::VectorXd w(dt), yy(k);
  for (int c = 0; c < dt; ++c) w(c) = omega[c];
  for (int b = 0; b < k; ++b) yy(b) = y[b];
  const double psi_x = x.dot(w);
  const double psi_A = w.dot(ell * yy);
  return v.value(omega, ys) + rho * (lambda - 1.0) - psi_x + psi_A;
}

GraphFunction transform_graph(const GraphFunction& v, double lambda, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y0, const Eigen::MatrixXd& A,
                              std::shared_ptr<const CylinderGrid> target) {
  if (!v.source()) throw std::invalid_argument("transform_graph: graph needs a source");
  if (!target) target = v.grid_ptr();
  auto src = std::make_shared<const TransformedGraphSource>(v.source(), lambda, x, y0, A);
  std::vector<double> vals(target->size());
  for (std::size_t a = 0; a < vals.size(); ++a) {
    try {
      vals[a] = src->value(target->omega(a), target->y(a));
    } catch (const NotGraphicalError&) {
      throw NotGraphicalError("transform_graph: not graphical at node " + std::to_string(a), a);
    }
  }
  return GraphFunction(std::move(target), std::move(vals), std::move(src));
}

}  // namespace cylflow
