// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace cylflow {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights mu0 * v0^2.
Rule1D golub_welsch(const Eigen::VectorXd& offdiag, double mu0) {
  const int n = static_cast<int>(offdiag.size()) + 1;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) J(i, i + 1) = J(i + 1, i) = offdiag(i);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = es.eigenvalues()(i);
    r.w[i] = mu0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
  // Symmetrize: these rules are symmetric, and exact symmetry keeps odd moments at zero.
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (r.x[n - 1 - i] - r.x[i]);
    const double w = 0.5 * (r.w[n - 1 - i] + r.w[i]);
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
  return r;
}

}  // namespace

Rule1D gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n >= 1");
  Eigen::VectorXd off(n - 1);
  for (int i = 1; i < n; ++i) off(i - 1) = std::sqrt(i / 2.0);
  Rule1D r = golub_welsch(off, std::sqrt(std::numbers::pi));
  // Physicists' rule for e^{-x^2}; y = 2x maps it to e^{-y^2/4}.
  for (auto& x : r.x) x *= 2.0;
  for (auto& w : r.w) w *= 2.0;
  return r;
}

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
  Eigen::VectorXd off(n - 1);
  for (int i = 1; i < n; ++i) off(i - 1) = i / std::sqrt(4.0 * i * i - 1.0);
  Rule1D r = golub_welsch(off, 2.0);
  const double h = 0.5 * (b - a), c = 0.5 * (a + b);
  for (auto& x : r.x) x = c + h * x;
  for (auto& w : r.w) w *= h;
  return r;
}

Rule1D gauss_chebyshev2(int n) {
  Rule1D r;
  for (int j = n; j >= 1; --j) {
    const double t = j * std::numbers::pi / (n + 1);
    r.x.push_back(std::cos(t));
    r.w.push_back(std::numbers::pi / (n + 1) * std::sin(t) * std::sin(t));
  }
  return r;
}

SphereRule sphere_rule(int m, int degree) {
  if (degree < 0) throw std::invalid_argument("sphere_rule: negative degree");
  SphereRule s;
  s.m = m;
  s.exact_degree = degree;
  if (m == 0) {
    s.nodes = {-1.0, 1.0};
    s.w = {1.0, 1.0};
    return s;
  }
  if (m == 1) {
    const int N = degree + 1;
    for (int j = 0; j < N; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / N;
      s.nodes.push_back(std::cos(phi));
      s.nodes.push_back(std::sin(phi));
      s.w.push_back(2.0 * std::numbers::pi / N);
    }
    return s;
  }
  if (m == 2 || m == 3) {
    // omega = (t, sqrt(1 - t^2) omega'), dsigma_m = (1 - t^2)^{(m-2)/2} dt dsigma_{m-1}.
    const int nt = (degree + 2) / 2 + (m == 3 ? 1 : 0);
    const Rule1D rt = m == 2 ? gauss_legendre(nt) : gauss_chebyshev2(nt);
    const SphereRule sub = sphere_rule(m - 1, degree);
    for (std::size_t a = 0; a < rt.x.size(); ++a) {
      const double t = rt.x[a], st = std::sqrt(std::max(0.0, 1.0 - t * t));
      for (std::size_t b = 0; b < sub.size(); ++b) {
        s.nodes.push_back(t);
        for (double c : sub.node(b)) s.nodes.push_back(st * c);
        s.w.push_back(rt.w[a] * sub.w[b]);
      }
    }
    return s;
  }
  throw std::invalid_argument("sphere_rule: only m <= 3 is supported");
}

SpineRule spine_gauss_hermite(int k, int n) {
  const Rule1D r = gauss_hermite(n);
  SpineRule s;
  s.k = k;
  s.exact_degree = 2 * n - 1;
  std::vector<int> idx(k, 0);
  const std::size_t total = static_cast<std::size_t>(std::pow(n, k));
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rem = t;
    double w = 1.0;
    for (int d = k - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(rem % n);
      rem /= n;
    }
    for (int d = 0; d < k; ++d) {
      s.nodes.push_back(r.x[idx[d]]);
      w *= r.w[idx[d]];
    }
    s.w.push_back(w);
  }
  return s;
}

SpineRule spine_ball(int k, double r0, double r1, int n_radial, int angular_degree) {
  SpineRule s;
  s.k = k;
  s.radius = r1;
  s.exact_degree = 2 * n_radial - 1;
  const Rule1D rr = gauss_legendre(n_radial, r0, r1);
  const SphereRule ang = sphere_rule(k - 1, angular_degree);
  for (std::size_t a = 0; a < rr.x.size(); ++a) {
    const double r = rr.x[a];
    const double radial = rr.w[a] * std::pow(r, k - 1) * std::exp(-r * r / 4.0);
    for (std::size_t b = 0; b < ang.size(); ++b) {
      for (double c : ang.node(b)) s.nodes.push_back(r * c);
      s.w.push_back(radial * ang.w[b]);
    }
  }
  return s;
}

SpineRule spine_box_legendre(int k, double L, int n) {
  const Rule1D r = gauss_legendre(n, -L, L);
  SpineRule s;
  s.k = k;
  s.exact_degree = 2 * n - 1;
  s.radius = L;
  std::vector<int> idx(k, 0);
  const std::size_t total = static_cast<std::size_t>(std::pow(n, k));
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t rem = t;
    double w = 1.0, r2 = 0.0;
    for (int d = k - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(rem % n);
      rem /= n;
    }
    for (int d = 0; d < k; ++d) {
      s.nodes.push_back(r.x[idx[d]]);
      w *= r.w[idx[d]];
      r2 += r.x[idx[d]] * r.x[idx[d]];
    }
    s.w.push_back(w * std::exp(-r2 / 4.0));
  }
  return s;
}

SpineRule spine_concat(const SpineRule& a, const SpineRule& b) {
  if (a.k != b.k) throw std::invalid_argument("spine_concat: dimension mismatch");
  SpineRule s = a;
  s.nodes.insert(s.nodes.end(), b.nodes.begin(), b.nodes.end());
  s.w.insert(s.w.end(), b.w.begin(), b.w.end());
  s.exact_degree = std::min(a.exact_degree, b.exact_degree);
  s.radius = std::max(a.radius, b.radius);
  return s;
}

CylinderGrid::CylinderGrid(const CylinderShape& shape, SphereRule sphere, SpineRule spine)
    : shape_(shape), sphere_(std::move(sphere)), spine_(std::move(spine)) {
  if (sphere_.m != shape_.m() || spine_.k != shape_.k)
    throw std::invalid_argument("CylinderGrid: rule dimensions do not match the shape");
  const double c = cylinder_measure_constant(shape_) * std::pow(shape_.rho(), shape_.m());
  weights_.resize(size());
  for (std::size_t is = 0; is < sphere_.size(); ++is)
    for (std::size_t iy = 0; iy < spine_.size(); ++iy)
      weights_[is * spine_.size() + iy] = c * sphere_.w[is] * spine_.w[iy];
}

CylinderGrid CylinderGrid::hermite(const CylinderShape& shape, int sphere_degree, int n_spine) {
  return CylinderGrid(shape, sphere_rule(shape.m(), sphere_degree), spine_gauss_hermite(shape.k, n_spine));
}

CylinderGrid CylinderGrid::truncated(const CylinderShape& shape, int sphere_degree, double R, int n_radial,
                                     int angular_degree) {
  SpineRule spine = shape.k == 1 ? spine_box_legendre(1, R, n_radial)
                                 : spine_ball(shape.k, 0.0, R, n_radial, angular_degree);
  return CylinderGrid(shape, sphere_rule(shape.m(), sphere_degree), std::move(spine));
}

double CylinderGrid::integrate(std::span<const double> f) const {
  if (f.size() != size()) throw std::invalid_argument("integrate: sample count mismatch");
  double s = 0.0;
  for (std::size_t a = 0; a < f.size(); ++a) s += weights_[a] * f[a];
  return s;
}

}  // namespace cylflow
