// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cylflow/quadrature.hpp"

namespace cylflow {

CylinderShape CylinderShape::make(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("CylinderShape: need n >= 2 and 1 <= k <= n-1");
  return CylinderShape{n, k};
}

double CylinderShape::rho() const { return std::sqrt(static_cast<double>(rho_squared())); }

Rational CylinderShape::gamma_plus() const {
  const Rational half(1, 2);
  const Rational g(1, m());
  return half + (g < half ? g : half);
}

int ModeIndex::j() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }

std::string ModeIndex::str() const {
  std::ostringstream os;
  os << "(i=" << i << ",s=" << s << ",alpha=";
  for (std::size_t b = 0; b < alpha.size(); ++b) os << (b ? "." : "") << alpha[b];
  os << ")";
  return os.str();
}

Rational eigenvalue_exact(const CylinderShape& shape, int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("eigenvalue: negative degree");
  const int m = shape.m();
  return Rational(i * (i - 1 + m), 2 * m) + Rational(j, 2) - Rational(1);
}

double eigenvalue(const CylinderShape& shape, int i, int j) { return eigenvalue_exact(shape, i, j).to_double(); }

Rational eigenvalue_exact(const CylinderShape& shape, const ModeIndex& mode) {
  return eigenvalue_exact(shape, mode.i, mode.j());
}

std::vector<long long> hermite_coefficients(int l) {
  if (l < 0) throw std::invalid_argument("hermite: negative degree");
  std::vector<long long> prev{1}, cur{0, 1};
  if (l == 0) return prev;
  for (int d = 1; d < l; ++d) {
    // h_{d+1} = y h_d - 2 d h_{d-1}
    std::vector<long long> next(d + 2, 0);
    for (int p = 0; p <= d; ++p) next[p + 1] += cur[p];
    for (int p = 0; p < d; ++p) next[p] -= 2LL * d * prev[p];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double hermite(int l, double y) {
  if (l < 0) throw std::invalid_argument("hermite: negative degree");
  double hm = 1.0, h = y;
  if (l == 0) return hm;
  for (int d = 1; d < l; ++d) {
    const double hn = y * h - 2.0 * d * hm;
    hm = h;
    h = hn;
  }
  return h;
}

Polynomial hermite_polynomial(int l, int nvars, int var) {
  const auto c = hermite_coefficients(l);
  Polynomial p(nvars);
  for (std::size_t e = 0; e < c.size(); ++e) {
    Polynomial::Exponent ex(nvars, 0);
    ex[var] = static_cast<int>(e);
    p.add_term(ex, static_cast<double>(c[e]));
  }
  return p;
}

double hermite_norm_squared(int l) {
  return std::pow(2.0, l) * std::tgamma(l + 1.0) * std::sqrt(4.0 * std::numbers::pi);
}

long long harmonic_dimension(int m, int i) {
  auto binom = [](long long a, long long b) -> long long {
    if (b < 0 || a < b) return 0;
    long long r = 1;
    for (long long t = 1; t <= b; ++t) r = r * (a - b + t) / t;
    return r;
  };
  return binom(m + i, m) - binom(m + i - 2, m);
}

double sphere_monomial_integral(const Polynomial::Exponent& alpha, double radius) {
  const int d = static_cast<int>(alpha.size());
  const int m = d - 1;
  int total = 0;
  double lg = 0.0;
  for (int a : alpha) {
    if (a % 2 != 0) return 0.0;
    total += a;
    lg += std::lgamma((a + 1) / 2.0);
  }
  lg -= std::lgamma((total + d) / 2.0);
  return 2.0 * std::exp(lg) * std::pow(radius, total + m);
}

double spine_moment(int p) {
  if (p % 2 != 0) return 0.0;
  return std::pow(2.0, p + 1) * std::tgamma((p + 1) / 2.0);
}

double cylinder_measure_constant(const CylinderShape& shape) {
  return std::pow(4.0 * std::numbers::pi, -shape.n / 2.0) * std::exp(-shape.m() / 2.0);
}

double gaussian_mass(const CylinderShape& shape) {
  const Polynomial one = Polynomial::constant(shape.dim(), 1.0);
  return gaussian_integral(shape, one);
}

namespace {

double sphere_inner(const Polynomial& p, const Polynomial& q, double radius) {
  double s = 0.0;
  Polynomial::Exponent e(p.nvars());
  for (const auto& [ep, cp] : p.terms())
    for (const auto& [eq, cq] : q.terms()) {
      for (int v = 0; v < p.nvars(); ++v) e[v] = ep[v] + eq[v];
      s += cp * cq * sphere_monomial_integral(e, radius);
    }
  return s;
}

// Harmonic projection of a homogeneous degree-i polynomial in d variables:
// H p = sum_j (-1)^j |x|^{2j} Delta^j p / (2^j j! prod_{l=1}^j (d + 2i - 2 - 2l)).
Polynomial harmonic_projection(const Polynomial& p, int d, int i) {
  Polynomial r2(d);
  for (int v = 0; v < d; ++v) {
    Polynomial::Exponent e(d, 0);
    e[v] = 2;
    r2.add_term(e, 1.0);
  }
  Polynomial out = p, lap = p, rpow = Polynomial::constant(d, 1.0);
  double denom = 1.0;
  for (int j = 1; 2 * j <= i; ++j) {
    lap = lap.laplacian(0, d);
    rpow = rpow * r2;
    denom *= 2.0 * j * (d + 2 * i - 2 - 2 * j);
    out += (j % 2 ? -1.0 : 1.0) / denom * (rpow * lap);
  }
  return out;
}

struct HarmonicCache {
  std::mutex mu;
  std::map<std::pair<int, int>, std::vector<Polynomial>> table;
};

HarmonicCache& harmonic_cache() {
  static HarmonicCache c;
  return c;
}

struct ModeCache {
  std::mutex mu;
  std::map<std::tuple<int, int, ModeIndex>, Polynomial> table;
};

ModeCache& mode_cache() {
  static ModeCache c;
  return c;
}

}  // namespace

const std::vector<Polynomial>& sphere_harmonics(int m, int i) {
  auto& cache = harmonic_cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  auto it = cache.table.find({m, i});
  if (it != cache.table.end()) return it->second;
  const int d = m + 1;
  const double radius = std::sqrt(2.0 * m);
  const long long dim = harmonic_dimension(m, i);
  std::vector<Polynomial> basis;
  for (const auto& e : exponents_of_degree(d, i)) {
    if (static_cast<long long>(basis.size()) == dim) break;
    Polynomial h = harmonic_projection(Polynomial::monomial(e), d, i);
    const double n0 = std::sqrt(std::max(0.0, sphere_inner(h, h, radius)));
    if (n0 == 0.0) continue;
    // Modified Gram-Schmidt, two passes.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) h -= sphere_inner(h, b, radius) * b;
    const double nh = std::sqrt(std::max(0.0, sphere_inner(h, h, radius)));
    if (nh < 1e-8 * n0) continue;
    h *= 1.0 / nh;
    basis.push_back(h.pruned(1e-15));
  }
  if (static_cast<long long>(basis.size()) != dim) throw std::logic_error("sphere_harmonics: basis incomplete");
  return cache.table.emplace(std::make_pair(m, i), std::move(basis)).first->second;
}

bool relation_holds(const Rational& lhs, Relation rel, const Rational& rhs) {
  switch (rel) {
    case Relation::GE: return lhs >= rhs;
    case Relation::GT: return lhs > rhs;
    case Relation::EQ: return lhs == rhs;
    case Relation::NE: return lhs != rhs;
    case Relation::LT: return lhs < rhs;
    case Relation::LE: return lhs <= rhs;
  }
  return false;
}

std::vector<ModeEntry> enumerate_modes(const CylinderShape& shape, Rational gamma_max) {
  std::vector<ModeEntry> out;
  // mu_i >= i/2 for m >= 1 ... use the exact eigenvalue for the stopping rule.
  for (int i = 0; eigenvalue_exact(shape, i, 0) <= gamma_max; ++i) {
    const long long dim = harmonic_dimension(shape.m(), i);
    for (int j = 0; eigenvalue_exact(shape, i, j) <= gamma_max; ++j) {
      const Rational ev = eigenvalue_exact(shape, i, j);
      for (const auto& a : exponents_of_degree(shape.k, j))
        for (int s = 0; s < dim; ++s) out.push_back({ModeIndex{i, s, a}, ev});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ModeEntry& a, const ModeEntry& b) {
    if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
    return a.mode < b.mode;
  });
  return out;
}

std::vector<ModeEntry> enumerate_modes(const CylinderShape& shape, double gamma_max) {
  // Rational cutoff: the largest half-integer multiple of 1/(2m) not exceeding gamma_max.
  const long long den = 2LL * shape.m();
  const long long num = static_cast<long long>(std::floor(gamma_max * den + 1e-9));
  return enumerate_modes(shape, Rational(num, den));
}

const Polynomial& mode_polynomial(const CylinderShape& shape, const ModeIndex& mode) {
  if (static_cast<int>(mode.alpha.size()) != shape.k) throw std::invalid_argument("mode_polynomial: alpha size");
  const auto& harm = sphere_harmonics(shape.m(), mode.i);
  if (mode.s < 0 || mode.s >= static_cast<int>(harm.size())) throw std::invalid_argument("mode_polynomial: bad s");
  auto& cache = mode_cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.table.find({shape.n, shape.k, mode});
    if (it != cache.table.end()) return it->second;
  }
  const int nv = shape.dim();
  Polynomial p = harm[mode.s].embedded(nv, 0);
  double norm2 = cylinder_measure_constant(shape);
  for (int b = 0; b < shape.k; ++b) {
    p = p * hermite_polynomial(mode.alpha[b], nv, shape.dim_theta() + b);
    norm2 *= hermite_norm_squared(mode.alpha[b]);
  }
  p *= 1.0 / std::sqrt(norm2);
  std::lock_guard<std::mutex> lock(cache.mu);
  return cache.table.emplace(std::make_tuple(shape.n, shape.k, mode), std::move(p)).first->second;
}

double evaluate_mode(const CylinderShape& shape, const ModeIndex& mode, std::span<const double> theta,
                     std::span<const double> y) {
  if (static_cast<int>(theta.size()) != shape.dim_theta() || static_cast<int>(y.size()) != shape.k)
    throw std::invalid_argument("evaluate_mode: coordinate size");
  double r2 = 0.0;
  for (double t : theta) r2 += t * t;
  if (std::abs(std::sqrt(r2) - shape.rho()) > 1e-12) throw std::domain_error("evaluate_mode: point is off the cylinder");
  std::vector<double> x(theta.begin(), theta.end());
  x.insert(x.end(), y.begin(), y.end());
  return mode_polynomial(shape, mode).evaluate(x);
}

double gaussian_integral(const CylinderShape& shape, const Polynomial& p) {
  const int dt = shape.dim_theta();
  const double rho = shape.rho();
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) {
    Polynomial::Exponent et(e.begin(), e.begin() + dt);
    double t = c * sphere_monomial_integral(et, rho);
    for (int b = 0; b < shape.k && t != 0.0; ++b) t *= spine_moment(e[dt + b]);
    s += t;
  }
  return s * cylinder_measure_constant(shape);
}

double gaussian_inner(const CylinderShape& shape, const Polynomial& p, const Polynomial& q) {
  return gaussian_integral(shape, p * q);
}

double SpectralField::coeff(const ModeIndex& mode) const {
  auto it = coeffs_.find(mode);
  return it == coeffs_.end() ? 0.0 : it->second;
}

void SpectralField::set(const ModeIndex& mode, double c) {
  if (c == 0.0)
    coeffs_.erase(mode);
  else
    coeffs_[mode] = c;
}

void SpectralField::add(const ModeIndex& mode, double c) { set(mode, coeff(mode) + c); }

double SpectralField::norm() const { return std::sqrt(dot(*this)); }

double SpectralField::dot(const SpectralField& o) const {
  double s = 0.0;
  for (const auto& [mode, c] : coeffs_) s += c * o.coeff(mode);
  return s;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  if (coeffs_.empty()) shape_ = o.shape_;
  for (const auto& [mode, c] : o.coeffs_) add(mode, c);
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  if (coeffs_.empty()) shape_ = o.shape_;
  for (const auto& [mode, c] : o.coeffs_) add(mode, -c);
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  if (s == 0.0) coeffs_.clear();
  for (auto& [mode, c] : coeffs_) c *= s;
  return *this;
}

Polynomial SpectralField::to_polynomial() const {
  Polynomial p(shape_.dim());
  for (const auto& [mode, c] : coeffs_) p += c * mode_polynomial(shape_, mode);
  return p;
}

double SpectralField::evaluate(std::span<const double> theta, std::span<const double> y) const {
  double s = 0.0;
  for (const auto& [mode, c] : coeffs_) s += c * evaluate_mode(shape_, mode, theta, y);
  return s;
}

SpectralField apply_L(const SpectralField& field) {
  SpectralField out(field.shape());
  for (const auto& [mode, c] : field.coeffs())
    out.set(mode, -eigenvalue_exact(field.shape(), mode).to_double() * c);
  return out;
}

SpectralField project(const SpectralField& field, Relation rel, Rational gamma) {
  SpectralField out(field.shape());
  for (const auto& [mode, c] : field.coeffs())
    if (relation_holds(eigenvalue_exact(field.shape(), mode), rel, gamma)) out.set(mode, c);
  return out;
}

SpectralField field_from_polynomial(const CylinderShape& shape, const Polynomial& p) {
  const int dt = shape.dim_theta();
  int deg_theta = 0, deg_y = 0;
  for (const auto& [e, c] : p.terms()) {
    deg_theta = std::max(deg_theta, std::accumulate(e.begin(), e.begin() + dt, 0));
    deg_y = std::max(deg_y, std::accumulate(e.begin() + dt, e.end(), 0));
  }
  SpectralField out(shape);
  for (int i = 0; i <= deg_theta; ++i) {
    const int dim = static_cast<int>(harmonic_dimension(shape.m(), i));
    for (int j = 0; j <= deg_y; ++j)
      for (const auto& a : exponents_of_degree(shape.k, j))
        for (int s = 0; s < dim; ++s) {
          const ModeIndex mode{i, s, a};
          const double c = gaussian_inner(shape, p, mode_polynomial(shape, mode));
          if (std::abs(c) > 1e-15) out.set(mode, c);
        }
  }
  return out;
}

SpectralField psi_translation(const CylinderShape& shape, const Eigen::VectorXd& x) {
  if (x.size() != shape.dim_theta()) throw std::invalid_argument("psi_translation: x must lie in R^{n-k+1}");
  Polynomial p(shape.dim());
  for (int a = 0; a < shape.dim_theta(); ++a) p += Polynomial::variable(shape.dim(), a, x(a) / shape.rho());
  return field_from_polynomial(shape, p);
}

SpectralField psi_rotation(const CylinderShape& shape, const Eigen::MatrixXd& ell) {
  if (ell.rows() != shape.dim_theta() || ell.cols() != shape.k)
    throw std::invalid_argument("psi_rotation: ell must be (n-k+1) x k");
  Polynomial p(shape.dim());
  const int dt = shape.dim_theta();
  for (int a = 0; a < dt; ++a)
    for (int b = 0; b < shape.k; ++b) {
      Polynomial::Exponent e(shape.dim(), 0);
      e[a] = 1;
      e[dt + b] = 1;
      p.add_term(e, ell(a, b) / shape.rho());
    }
  return field_from_polynomial(shape, p);
}

Eigen::MatrixXd rotation_generator(const CylinderShape& shape, const Eigen::MatrixXd& ell) {
  const int dt = shape.dim_theta();
  if (ell.rows() != dt || ell.cols() != shape.k) throw std::invalid_argument("rotation_generator: ell shape");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(shape.dim(), shape.dim());
  A.topRightCorner(dt, shape.k) = ell;
  A.bottomLeftCorner(shape.k, dt) = -ell.transpose();
  return A;
}

Eigen::MatrixXd generator_block(const CylinderShape& shape, const Eigen::MatrixXd& A, double tol) {
  const int dt = shape.dim_theta();
  if (A.rows() != shape.dim() || A.cols() != shape.dim()) throw std::invalid_argument("generator_block: size");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if (A.topLeftCorner(dt, dt).cwiseAbs().maxCoeff() > tol * scale ||
      A.bottomRightCorner(shape.k, shape.k).cwiseAbs().maxCoeff() > tol * scale ||
      (A.topRightCorner(dt, shape.k) + A.bottomLeftCorner(shape.k, dt).transpose()).cwiseAbs().maxCoeff() >
          tol * scale)
    throw std::invalid_argument("generator_block: A is not in the complement of the stabilizer algebra");
  return A.topRightCorner(dt, shape.k);
}

Polynomial half_mode_polynomial(const CylinderShape& shape, const HalfModeDecomposition& d) {
  const int dt = shape.dim_theta(), nv = shape.dim();
  Polynomial p(nv);
  for (int a = 0; a < dt && a < static_cast<int>(d.q.size()); ++a) {
    Polynomial qa(nv);
    const Eigen::MatrixXd& A = d.q[a];
    for (int b = 0; b < shape.k; ++b)
      for (int c = 0; c < shape.k; ++c) {
        Polynomial::Exponent e(nv, 0);
        e[dt + b] += 1;
        e[dt + c] += 1;
        qa.add_term(e, A(b, c));
      }
    qa.add_term(Polynomial::Exponent(nv, 0), -2.0 * A.trace());
    p += Polynomial::variable(nv, a, 1.0 / shape.rho()) * qa;
  }
  for (const auto& [alpha, c] : d.c) {
    Polynomial h = Polynomial::constant(nv, c);
    for (int b = 0; b < shape.k; ++b) h = h * hermite_polynomial(alpha[b], nv, dt + b);
    p += h;
  }
  return p;
}

SpectralField synthesize_W_half(const CylinderShape& shape, const HalfModeDecomposition& d) {
  return field_from_polynomial(shape, half_mode_polynomial(shape, d));
}

HalfModeDecomposition decompose_W_half(const SpectralField& psi, double tol) {
  const CylinderShape& shape = psi.shape();
  const Rational half(1, 2);
  const double scale = std::max(psi.norm(), 1e-300);
  for (const auto& [mode, c] : psi.coeffs()) {
    const Rational ev = eigenvalue_exact(shape, mode);
    if (ev != half && std::abs(c) > tol * scale)
      throw std::invalid_argument("decompose_W_half: input has components outside W_{1/2}");
    if (ev == half && mode.i == 2 && std::abs(c) > tol * scale)
      throw std::invalid_argument("decompose_W_half: remove the W_S component first");
  }
  const Polynomial p = project(psi, Relation::EQ, half).to_polynomial();
  const int dt = shape.dim_theta(), nv = shape.dim();
  HalfModeDecomposition d;
  d.q.assign(dt, Eigen::MatrixXd::Zero(shape.k, shape.k));
  for (int a = 0; a < dt; ++a)
    for (int b = 0; b < shape.k; ++b)
      for (int c = b; c < shape.k; ++c) {
        Polynomial::Exponent e(nv, 0);
        e[a] = 1;
        e[dt + b] += 1;
        e[dt + c] += 1;
        const double v = p.coefficient(e) * shape.rho();
        if (b == c) {
          d.q[a](b, b) = v;
        } else {
          d.q[a](b, c) = d.q[a](c, b) = 0.5 * v;
        }
      }
  for (const auto& alpha : exponents_of_degree(shape.k, 3)) {
    Polynomial::Exponent e(nv, 0);
    for (int b = 0; b < shape.k; ++b) e[dt + b] = alpha[b];
    const double v = p.coefficient(e);
    if (v != 0.0) d.c[alpha] = v;
  }
  const Polynomial diff = half_mode_polynomial(shape, d) - p;
  d.residual = diff.max_abs_coefficient() / std::max(p.max_abs_coefficient(), 1e-300);
  if (d.residual > std::max(tol, 1e-10)) throw std::runtime_error("decompose_W_half: reassembly residual too large");
  return d;
}

double hermite_translation_gap(int k, const Polynomial& h, double a, const Eigen::VectorXd& Y, int nodes) {
  const int l = h.degree();
  if (l < 2) throw std::invalid_argument("hermite_translation_gap: degree >= 2 required");
  if (Y.norm() < 1.0) throw std::invalid_argument("hermite_translation_gap: |Y| >= 1 required");
  if (nodes == 0) nodes = l + 2;
  if (2 * nodes - 1 < 2 * l) throw std::invalid_argument("hermite_translation_gap: quadrature degree < 2l");
  const SpineRule rule = spine_gauss_hermite(k, nodes);
  const double norm = std::pow(4.0 * std::numbers::pi, -k / 2.0);
  std::vector<double> x(k), xs(k);
  double s = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    for (int b = 0; b < k; ++b) {
      x[b] = rule.node(q)[b];
      xs[b] = x[b] + Y(b);
    }
    const double g = a + h.evaluate(xs) - h.evaluate(x);
    s += rule.w[q] * g * g;
  }
  return std::sqrt(norm * s);
}

}  // namespace cylflow
