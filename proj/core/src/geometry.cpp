// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>

namespace cylflow {

GraphJet GraphJet::zero(int m, int k) {
  GraphJet j;
  j.grad_s = Eigen::VectorXd::Zero(m + 1);
  j.hess_s = Eigen::MatrixXd::Zero(m + 1, m + 1);
  j.grad_y = Eigen::VectorXd::Zero(k);
  j.hess_y = Eigen::MatrixXd::Zero(k, k);
  j.mixed = Eigen::MatrixXd::Zero(m + 1, k);
  return j;
}

Eigen::MatrixXd tangent_basis(std::span<const double> omega) {
  const int d = static_cast<int>(omega.size());
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(omega.data(), d).normalized();
  // Householder reflection mapping w to e_0; its other columns span w^perp.
  Eigen::MatrixXd B(d, d - 1);
  Eigen::VectorXd u = w;
  u(0) += (w(0) >= 0 ? 1.0 : -1.0);
  const double un = u.squaredNorm();
  for (int c = 1; c < d; ++c) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(d, c);
    B.col(c - 1) = e - 2.0 * u * (u.dot(e)) / un;
  }
  return B;
}

GraphJet GraphSource::jet(std::span<const double> omega, std::span<const double> y) const {
  const int m = shape_.m(), k = shape_.k, d = m + 1;
  const Eigen::MatrixXd T = tangent_basis(omega);
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(omega.data(), d);
  const int nv = m + k;
  const double h = 2e-4;
  // f(s) on R^{m+k}: sphere normal coordinates then spine offsets.
  std::vector<double> om(d), yy(k);
  auto f = [&](const Eigen::VectorXd& s) {
    Eigen::VectorXd p = w + T * s.head(m);
    p.normalize();
    for (int c = 0; c < d; ++c) om[c] = p(c);
    for (int b = 0; b < k; ++b) yy[b] = y[b] + s(m + b);
    return value(om, yy);
  };
  Eigen::VectorXd s = Eigen::VectorXd::Zero(nv);
  const double f0 = f(s);
  Eigen::VectorXd g(nv);
  Eigen::MatrixXd H(nv, nv);
  for (int a = 0; a < nv; ++a) {
    Eigen::VectorXd sp = s, sm = s;
    sp(a) += h;
    sm(a) -= h;
    const double fp = f(sp), fm = f(sm);
    g(a) = (fp - fm) / (2 * h);
    H(a, a) = (fp - 2 * f0 + fm) / (h * h);
  }
  for (int a = 0; a < nv; ++a)
    for (int b = a + 1; b < nv; ++b) {
      Eigen::VectorXd s1 = s, s2 = s, s3 = s, s4 = s;
      s1(a) += h, s1(b) += h;
      s2(a) += h, s2(b) -= h;
      s3(a) -= h, s3(b) += h;
      s4(a) -= h, s4(b) -= h;
      H(a, b) = H(b, a) = (f(s1) - f(s2) - f(s3) + f(s4)) / (4 * h * h);
    }
  GraphJet j;
  j.v = f0;
  j.grad_s = T * g.head(m);
  j.hess_s = T * H.topLeftCorner(m, m) * T.transpose();
  j.grad_y = g.tail(k);
  j.hess_y = H.bottomRightCorner(k, k);
  j.mixed = T * H.topRightCorner(m, k);
  return j;
}

GraphJet sphere_polynomial_jet(const Polynomial& P, double rho, std::span<const double> omega) {
  const int d = P.nvars();
  std::vector<double> x(d);
  for (int c = 0; c < d; ++c) x[c] = rho * omega[c];
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(omega.data(), d);
  Eigen::VectorXd g(d);
  Eigen::MatrixXd H(d, d);
  for (int a = 0; a < d; ++a) {
    const Polynomial pa = P.derivative(a);
    g(a) = pa.evaluate(x);
    for (int b = a; b < d; ++b) H(a, b) = H(b, a) = pa.derivative(b).evaluate(x);
  }
  const Eigen::MatrixXd PT = Eigen::MatrixXd::Identity(d, d) - w * w.transpose();
  GraphJet j;
  j.v = P.evaluate(x);
  j.grad_s = rho * PT * g;
  j.hess_s = PT * (rho * rho * H) * PT - rho * w.dot(g) * PT;
  return j;
}

PolynomialGraphSource::PolynomialGraphSource(const CylinderShape& shape, Polynomial p)
    : GraphSource(shape), p_(std::move(p)) {
  const int nv = shape.dim();
  if (p_.is_zero()) p_ = Polynomial(nv);
  if (p_.nvars() != nv) throw std::invalid_argument("PolynomialGraphSource: arity mismatch");
  d1_.resize(nv);
  d2_.assign(nv, std::vector<Polynomial>(nv));
  for (int a = 0; a < nv; ++a) {
    d1_[a] = p_.derivative(a);
    for (int b = 0; b < nv; ++b) d2_[a][b] = d1_[a].derivative(b);
  }
}

double PolynomialGraphSource::value(std::span<const double> omega, std::span<const double> y) const {
  const int dt = shape_.dim_theta();
  std::vector<double> x(shape_.dim());
  const double rho = shape_.rho();
  for (int c = 0; c < dt; ++c) x[c] = rho * omega[c];
  for (int b = 0; b < shape_.k; ++b) x[dt + b] = y[b];
  return p_.evaluate(x);
}

GraphJet PolynomialGraphSource::jet(std::span<const double> omega, std::span<const double> y) const {
  const int dt = shape_.dim_theta(), k = shape_.k, nv = shape_.dim();
  const double rho = shape_.rho();
  std::vector<double> x(nv);
  for (int c = 0; c < dt; ++c) x[c] = rho * omega[c];
  for (int b = 0; b < k; ++b) x[dt + b] = y[b];
  Eigen::VectorXd g(nv);
  Eigen::MatrixXd H(nv, nv);
  for (int a = 0; a < nv; ++a) {
    g(a) = d1_[a].evaluate(x);
    for (int b = a; b < nv; ++b) H(a, b) = H(b, a) = d2_[a][b].evaluate(x);
  }
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(omega.data(), dt);
  const Eigen::MatrixXd PT = Eigen::MatrixXd::Identity(dt, dt) - w * w.transpose();
  const Eigen::VectorXd gt = g.head(dt);
  GraphJet j;
  j.v = p_.evaluate(x);
  j.grad_s = rho * PT * gt;
  j.hess_s = PT * (rho * rho * H.topLeftCorner(dt, dt)) * PT - rho * w.dot(gt) * PT;
  j.grad_y = g.tail(k);
  j.hess_y = H.bottomRightCorner(k, k);
  j.mixed = rho * PT * H.topRightCorner(dt, k);
  return j;
}

struct AxisymmetricGraphSource::Impl {
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline;
  double lo, hi, vlo, vhi;
};

AxisymmetricGraphSource::AxisymmetricGraphSource(const CylinderShape& shape, std::vector<double> values, double y0,
                                                 double h)
    : GraphSource(shape) {
  if (shape.k != 1) throw std::invalid_argument("AxisymmetricGraphSource: k must be 1");
  if (values.size() < 4) throw std::invalid_argument("AxisymmetricGraphSource: need at least 4 samples");
  const double lo = y0, hi = y0 + h * static_cast<double>(values.size() - 1);
  const double vlo = values.front(), vhi = values.back();
  impl_ = std::make_unique<Impl>(Impl{
      boost::math::interpolators::cardinal_cubic_b_spline<double>(values.begin(), values.end(), y0, h), lo, hi,
      vlo, vhi});
}

AxisymmetricGraphSource::~AxisymmetricGraphSource() = default;

double AxisymmetricGraphSource::value(std::span<const double>, std::span<const double> y) const {
  if (y[0] <= impl_->lo) return impl_->vlo;
  if (y[0] >= impl_->hi) return impl_->vhi;
  return impl_->spline(y[0]);
}

GraphJet AxisymmetricGraphSource::jet(std::span<const double> omega, std::span<const double> y) const {
  GraphJet j = GraphJet::zero(shape_.m(), 1);
  j.v = value(omega, y);
  if (y[0] > impl_->lo && y[0] < impl_->hi) {
    j.grad_y(0) = impl_->spline.prime(y[0]);
    j.hess_y(0, 0) = impl_->spline.double_prime(y[0]);
  }
  return j;
}

double ShiftedGraphSource::value(std::span<const double> omega, std::span<const double> y) const {
  std::vector<double> ys(y.begin(), y.end());
  for (std::size_t b = 0; b < ys.size(); ++b) ys[b] -= Y_(b);
  return base_->value(omega, ys);
}

GraphJet ShiftedGraphSource::jet(std::span<const double> omega, std::span<const double> y) const {
  std::vector<double> ys(y.begin(), y.end());
  for (std::size_t b = 0; b < ys.size(); ++b) ys[b] -= Y_(b);
  return base_->jet(omega, ys);
}

GraphFunction::GraphFunction(std::shared_ptr<const CylinderGrid> grid, std::vector<double> values,
                             std::shared_ptr<const GraphSource> source)
    : grid_(std::move(grid)), values_(std::move(values)), source_(std::move(source)) {
  if (values_.size() != grid_->size()) throw std::invalid_argument("GraphFunction: value count mismatch");
  const double rho = grid_->shape().rho();
  for (std::size_t a = 0; a < values_.size(); ++a)
    if (!(values_[a] > -rho)) throw NotGraphicalError("GraphFunction: graph touches the axis", a);
}

GraphFunction GraphFunction::sample(std::shared_ptr<const CylinderGrid> grid,
                                    std::shared_ptr<const GraphSource> source) {
  std::vector<double> v(grid->size());
  for (std::size_t a = 0; a < v.size(); ++a) v[a] = source->value(grid->omega(a), grid->y(a));
  return GraphFunction(std::move(grid), std::move(v), std::move(source));
}

std::vector<GraphJet> GraphFunction::jets() const {
  if (!source_) throw std::logic_error("GraphFunction::jets: no source attached");
  std::vector<GraphJet> out(values_.size());
  for (std::size_t a = 0; a < values_.size(); ++a) out[a] = source_->jet(grid_->omega(a), grid_->y(a));
  return out;
}

double GraphFunction::sup_abs() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

namespace {
// chi on [1/2, 1] in t = s - 1/2: 1/2 + t + 16 t^3 - 56 t^4 + 48 t^5.
constexpr double kC3 = 16.0, kC4 = -56.0, kC5 = 48.0;
}  // namespace

double chi(double s) {
  const double a = std::abs(s);
  double r;
  if (a <= 0.5) {
    r = a;
  } else if (a >= 1.0) {
    r = 1.0;
  } else {
    const double t = a - 0.5;
    r = 0.5 + t + t * t * t * (kC3 + t * (kC4 + t * kC5));
  }
  return s < 0 ? -r : r;
}

double chi_prime(double s) {
  const double a = std::abs(s);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  const double t = a - 0.5;
  return 1.0 + t * t * (3 * kC3 + t * (4 * kC4 + t * 5 * kC5));
}

double chi_second(double s) {
  const double a = std::abs(s);
  if (a <= 0.5 || a >= 1.0) return 0.0;
  const double t = a - 0.5;
  const double r = t * (6 * kC3 + t * (12 * kC4 + t * 20 * kC5));
  return s < 0 ? -r : r;
}

double chi_c1_norm() {
  double mp = 0.0;
  for (int i = 0; i <= 10000; ++i) mp = std::max(mp, chi_prime(0.5 + 0.5 * i / 10000.0));
  return 1.0 + mp;
}

double dist_bar_u(const CylinderShape& shape, std::span<const double> X, const SphereProfile& phi) {
  const int dt = shape.dim_theta();
  double r2 = 0.0;
  for (int c = 0; c < dt; ++c) r2 += X[c] * X[c];
  const double r = std::sqrt(r2);
  if (r == 0.0) throw std::domain_error("dist_bar_u: x = 0, radial projection undefined");
  double p = 0.0;
  if (phi) {
    std::vector<double> om(dt);
    for (int c = 0; c < dt; ++c) om[c] = X[c] / r;
    p = phi(om);
  }
  return chi(r - shape.rho() - p);
}

std::vector<double> graph_measure(const GraphFunction& v, const std::vector<GraphJet>& jets) {
  const CylinderShape& shape = v.shape();
  const double rho = shape.rho();
  const int m = shape.m();
  std::vector<double> mu(v.values().size());
  for (std::size_t a = 0; a < mu.size(); ++a) {
    const double R = rho + v.values()[a];
    double W2 = 1.0;
    if (!jets.empty()) W2 += jets[a].grad_s.squaredNorm() / (R * R) + jets[a].grad_y.squaredNorm();
    mu[a] = v.grid().weight(a) * std::pow(R / rho, m) * std::sqrt(W2) * std::exp(-(R * R - rho * rho) / 4.0);
  }
  return mu;
}

namespace {

std::vector<GraphJet> jets_if_available(const GraphFunction& v) {
  return v.source() ? v.jets() : std::vector<GraphJet>{};
}

double graph_dist(const GraphFunction& v, std::size_t a, const SphereProfile& phi) {
  const double p = phi ? phi(v.grid().omega(a)) : 0.0;
  return chi(v.values()[a] - p);
}

}  // namespace

double d_u(const GraphFunction& v, const SphereProfile& phi, double R) {
  const auto jets = jets_if_available(v);
  const auto mu = graph_measure(v, jets);
  const double rho = v.shape().rho();
  double s = 0.0;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    if (std::isfinite(R)) {
      double y2 = 0.0;
      for (double c : v.grid().y(a)) y2 += c * c;
      if (rho + v.values()[a] > R || std::sqrt(y2) > R) continue;
    }
    const double d = graph_dist(v, a, phi);
    s += mu[a] * d * d;
  }
  return std::sqrt(s);
}

double d_u(const CylinderShape& shape, const SurfaceCloud& cloud, const SphereProfile& phi) {
  if (cloud.area.empty()) throw std::invalid_argument("d_u: empty surface sample");
  const double c = std::pow(4.0 * std::numbers::pi, -shape.n / 2.0);
  double s = 0.0;
  for (std::size_t p = 0; p < cloud.area.size(); ++p) {
    std::span<const double> X(cloud.points.data() + p * cloud.dim, static_cast<std::size_t>(cloud.dim));
    double x2 = 0.0;
    for (double t : X) x2 += t * t;
    const double d = dist_bar_u(shape, X, phi);
    s += c * std::exp(-x2 / 4.0) * cloud.area[p] * d * d;
  }
  return std::sqrt(s);
}

double weighted_distance_integral(const GraphFunction& v, const SphereProfile& phi, double s) {
  const auto jets = jets_if_available(v);
  const auto mu = graph_measure(v, jets);
  const double rho = v.shape().rho();
  double total = 0.0;
  for (std::size_t a = 0; a < mu.size(); ++a) {
    const double R = rho + v.values()[a];
    double y2 = 0.0;
    for (double c : v.grid().y(a)) y2 += c * c;
    const double d = graph_dist(v, a, phi);
    total += mu[a] * d * d * (1.0 + s * (R * R + y2));
  }
  return total;
}

double gaussian_area(const GraphFunction& v) {
  const auto mu = graph_measure(v, jets_if_available(v));
  double s = 0.0;
  for (double t : mu) s += t;
  return s;
}

double tail_integral(const CylinderShape& shape, double N, double R) {
  const int m = shape.m(), k = shape.k;
  const double rho = shape.rho();
  const double sphere_area = sphere_monomial_integral(Polynomial::Exponent(m + 1, 0), rho);
  const double ball_area = k == 1 ? 2.0 : sphere_monomial_integral(Polynomial::Exponent(k, 0), 1.0);
  const double r0 = R * R > rho * rho ? std::sqrt(R * R - rho * rho) : 0.0;
  auto integrand = [&](double r) {
    const double X2 = rho * rho + r * r;
    return std::pow(r, k - 1) * (1.0 + std::pow(X2, N / 2.0)) * std::exp(-X2 / 4.0);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  const double radial = integrator.integrate([&](double t) { return integrand(r0 + t); }, 0.0,
                                             std::numeric_limits<double>::infinity());
  return sphere_area * ball_area * radial;
}

TailMass tail_mass(const CylinderShape& shape, double N, double R, double lambda, double delta) {
  if (R <= 0) throw std::invalid_argument("tail_mass: R > 0 required");
  const double R0 = 2.0 * shape.n;
  TailMass t;
  t.constant = tail_integral(shape, N, R0) / (lambda * std::exp(-R0 * R0 / (4.0 + delta)));
  t.computed = tail_integral(shape, N, R);
  t.bound = t.constant * lambda * std::exp(-R * R / (4.0 + delta));
  return t;
}

double cutoff_projection_deviation(const SpectralField& v, double R, Relation rel, Rational gamma) {
  const CylinderShape& shape = v.shape();
  int jmax = 0, imax = 0;
  for (const auto& [mode, c] : v.coeffs()) {
    jmax = std::max(jmax, mode.j());
    imax = std::max(imax, mode.i);
  }
  // zeta depends on |y| only on the cylinder (|x| = rho < R): split the
  // radial integral at R so the ramp kink sits on a panel boundary.
  const int nr = 40 + 4 * jmax;
  SpineRule spine = spine_concat(spine_ball(shape.k, 0.0, R, nr, 2 * jmax + 2),
                                 spine_ball(shape.k, R, R + 1.0, nr, 2 * jmax + 2));
  if (shape.k == 1) {
    spine = spine_concat(spine_box_legendre(1, R, 2 * nr), spine_ball(1, R, R + 1.0, nr, 0));
  }
  auto grid = std::make_shared<const CylinderGrid>(shape, sphere_rule(shape.m(), 2 * imax + 2), spine);
  std::vector<ModeIndex> modes;
  for (const auto& [mode, c] : v.coeffs())
    if (relation_holds(eigenvalue_exact(shape, mode), rel, gamma)) modes.push_back(mode);
  const double target = project(v, rel, gamma).norm();
  if (modes.empty()) return 0.0;
  std::vector<ModeIndex> all;
  for (const auto& [mode, c] : v.coeffs()) all.push_back(mode);
  ModalSampler full(grid, all);
  Eigen::VectorXd cv(all.size());
  for (std::size_t q = 0; q < all.size(); ++q) cv(q) = v.coeff(all[q]);
  std::vector<double> f = full.synthesize(cv);
  for (std::size_t a = 0; a < f.size(); ++a) {
    double y2 = 0.0;
    for (double c : grid->y(a)) y2 += c * c;
    const double zeta = std::clamp(R + 1.0 - std::sqrt(y2), 0.0, 1.0);
    f[a] *= zeta;
  }
  ModalSampler proj(grid, modes);
  return std::abs(proj.analyze(f).norm() - target);
}

InequalitySides compare_distances(const GraphFunction& surface, const SphereProfile& phi,
                                  const SphereProfile& phi_prime) {
  InequalitySides s;
  s.lhs = std::abs(d_u(surface, phi_prime) - d_u(surface, phi));
  double sup = 0.0;
  const SphereRule& sr = surface.grid().sphere();
  for (std::size_t a = 0; a < sr.size(); ++a) {
    const double p = phi ? phi(sr.node(a)) : 0.0;
    const double q = phi_prime ? phi_prime(sr.node(a)) : 0.0;
    sup = std::max(sup, std::abs(p - q));
  }
  s.rhs = std::sqrt(gaussian_area(surface)) * chi_c1_norm() * sup;
  return s;
}

TranslatedDistance translated_distance_bound(const GraphFunction& surface, const SphereProfile& phi,
                                             const Eigen::VectorXd& Y, double R) {
  if (Y.norm() > 1.0) throw std::invalid_argument("translated_distance_bound: |Y| <= 1 required");
  if (R < 1.0) throw std::invalid_argument("translated_distance_bound: R >= 1 required");
  if (!surface.source()) throw std::invalid_argument("translated_distance_bound: surface needs a source");
  auto shifted = std::make_shared<ShiftedGraphSource>(surface.source(), Y);
  const GraphFunction moved = GraphFunction::sample(surface.grid_ptr(), shifted);
  TranslatedDistance t;
  t.lhs = d_u(moved, phi);
  t.d_term = d_u(surface, phi) * std::exp(R / 4.0);
  t.tail_term = std::sqrt(gaussian_area(surface)) * std::exp(-R * R / 64.0);
  return t;
}

ModalSampler::ModalSampler(std::shared_ptr<const CylinderGrid> grid, std::vector<ModeIndex> modes, bool with_jets)
    : grid_(std::move(grid)), modes_(std::move(modes)), with_jets_(with_jets) {
  const CylinderShape& shape = grid_->shape();
  const std::size_t ns = grid_->sphere().size(), ny = grid_->spine().size(), nq = modes_.size();
  const int k = shape.k;
  const double rho = shape.rho();
  const double c0 = cylinder_measure_constant(shape);
  sphere_jets_.resize(ns * nq);
  spine_jets_.resize(ny * nq);
  for (std::size_t q = 0; q < nq; ++q) {
    const ModeIndex& mode = modes_[q];
    const Polynomial& harm = sphere_harmonics(shape.m(), mode.i).at(mode.s);
    double hn = std::sqrt(c0);
    for (int b = 0; b < k; ++b) hn *= std::sqrt(hermite_norm_squared(mode.alpha[b]));
    for (std::size_t is = 0; is < ns; ++is) {
      GraphJet j;
      if (with_jets_) {
        j = sphere_polynomial_jet(harm, rho, grid_->sphere().node(is));
      } else {
        std::vector<double> x(shape.dim_theta());
        for (int c = 0; c < shape.dim_theta(); ++c) x[c] = rho * grid_->sphere().node(is)[c];
        j.v = harm.evaluate(x);
      }
      sphere_jets_[is * nq + q] = std::move(j);
    }
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const auto y = grid_->spine().node(iy);
      std::vector<double> h(k), hp(k), hpp(k);
      for (int b = 0; b < k; ++b) {
        const int l = mode.alpha[b];
        h[b] = hermite(l, y[b]);
        // h_l' = l h_{l-1}, h_l'' = l (l-1) h_{l-2}
        hp[b] = l >= 1 ? l * hermite(l - 1, y[b]) : 0.0;
        hpp[b] = l >= 2 ? l * (l - 1) * hermite(l - 2, y[b]) : 0.0;
      }
      GraphJet j;
      double val = 1.0;
      for (int b = 0; b < k; ++b) val *= h[b];
      j.v = val / hn;
      if (with_jets_) {
        j.grad_y = Eigen::VectorXd::Zero(k);
        j.hess_y = Eigen::MatrixXd::Zero(k, k);
        for (int b = 0; b < k; ++b) {
          double g = hp[b];
          for (int c = 0; c < k; ++c)
            if (c != b) g *= h[c];
          j.grad_y(b) = g / hn;
          for (int c = 0; c < k; ++c) {
            double t = 1.0;
            for (int e = 0; e < k; ++e) {
              if (b == c) {
                t *= e == b ? hpp[e] : h[e];
              } else {
                t *= (e == b || e == c) ? hp[e] : h[e];
              }
            }
            j.hess_y(b, c) = t / hn;
          }
        }
      }
      spine_jets_[iy * nq + q] = std::move(j);
    }
  }
  values_.resize(static_cast<Eigen::Index>(grid_->size()), static_cast<Eigen::Index>(nq));
  for (std::size_t is = 0; is < ns; ++is)
    for (std::size_t iy = 0; iy < ny; ++iy)
      for (std::size_t q = 0; q < nq; ++q)
        values_(static_cast<Eigen::Index>(is * ny + iy), static_cast<Eigen::Index>(q)) =
            sphere_jets_[is * nq + q].v * spine_jets_[iy * nq + q].v;
}

std::vector<double> ModalSampler::synthesize(const Eigen::VectorXd& coeffs) const {
  const Eigen::VectorXd f = values_ * coeffs;
  return std::vector<double>(f.data(), f.data() + f.size());
}

std::vector<GraphJet> ModalSampler::synthesize_jets(const Eigen::VectorXd& coeffs) const {
  if (!with_jets_) throw std::logic_error("ModalSampler: constructed without jets");
  const CylinderShape& shape = grid_->shape();
  const int m = shape.m(), k = shape.k;
  const std::size_t ns = grid_->sphere().size(), ny = grid_->spine().size(), nq = modes_.size();
  std::vector<GraphJet> out(grid_->size(), GraphJet::zero(m, k));
  for (std::size_t is = 0; is < ns; ++is)
    for (std::size_t iy = 0; iy < ny; ++iy) {
      GraphJet& o = out[is * ny + iy];
      for (std::size_t q = 0; q < nq; ++q) {
        const double c = coeffs(static_cast<Eigen::Index>(q));
        if (c == 0.0) continue;
        const GraphJet& S = sphere_jets_[is * nq + q];
        const GraphJet& Y = spine_jets_[iy * nq + q];
        o.v += c * S.v * Y.v;
        o.grad_s += (c * Y.v) * S.grad_s;
        o.hess_s += (c * Y.v) * S.hess_s;
        o.grad_y += (c * S.v) * Y.grad_y;
        o.hess_y += (c * S.v) * Y.hess_y;
        o.mixed += c * S.grad_s * Y.grad_y.transpose();
      }
    }
  return out;
}

Eigen::VectorXd ModalSampler::analyze(std::span<const double> f) const {
  if (f.size() != grid_->size()) throw std::invalid_argument("ModalSampler::analyze: sample count");
  Eigen::VectorXd wf(static_cast<Eigen::Index>(f.size()));
  for (std::size_t a = 0; a < f.size(); ++a) wf(static_cast<Eigen::Index>(a)) = grid_->weight(a) * f[a];
  return values_.transpose() * wf;
}

SpectralField project_grid(const GraphFunction& v, Relation rel, Rational gamma, Rational gamma_max) {
  const CylinderShape& shape = v.shape();
  std::vector<ModeIndex> modes;
  int imax = 0, jmax = 0;
  for (const auto& e : enumerate_modes(shape, gamma_max))
    if (relation_holds(e.eigenvalue, rel, gamma)) {
      modes.push_back(e.mode);
      imax = std::max(imax, e.mode.i);
      jmax = std::max(jmax, e.mode.j());
    }
  SpectralField out(shape);
  if (modes.empty()) return out;
  const CylinderGrid& g = v.grid();
  if (g.sphere().exact_degree < 2 * imax || g.spine().exact_degree < 2 * jmax)
    throw std::invalid_argument("project_grid: quadrature degree insufficient for the requested modes");
  ModalSampler sampler(v.grid_ptr(), modes);
  const Eigen::VectorXd c = sampler.analyze(v.values());
  for (std::size_t q = 0; q < modes.size(); ++q) out.set(modes[q], c(static_cast<Eigen::Index>(q)));
  return out;
}

}  // namespace cylflow
