// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/axisym.hpp"

#include <cmath>
#include <numbers>

namespace cylflow {

double AxisymmetricState::rho() const { return std::sqrt(2.0 * (n - 1)); }

std::vector<double> AxisymmetricState::v() const {
  std::vector<double> out(u.size());
  const double r = rho();
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - r;
  return out;
}

GraphFunction AxisymmetricState::graph(int n_spine) const {
  const CylinderShape sh = shape();
  const int ns = n_spine > 0 ? n_spine : static_cast<int>(std::ceil(half_width)) * 8;
  auto grid = std::make_shared<const CylinderGrid>(sh, sphere_rule(sh.m(), 0), spine_box_legendre(1, half_width, ns));
  auto src = std::make_shared<const AxisymmetricGraphSource>(sh, v(), -half_width, h);
  return GraphFunction::sample(grid, src);
}

AxisymmetricState make_axisym_state(int n, double R, double h, double tau, const std::function<double(double)>& v0,
                                    AxisymBoundary boundary) {
  AxisymmetricState s;
  s.n = n;
  s.boundary = boundary;
  s.tau = tau;
  s.h = h;
  const std::size_t N = static_cast<std::size_t>(std::llround(2.0 * R / h)) + 1;
  s.half_width = 0.5 * h * static_cast<double>(N - 1);
  s.u.resize(N);
  const double r = s.rho();
  for (std::size_t i = 0; i < N; ++i) s.u[i] = r + v0(s.y(i));
  s.u.front() = r + s.far_field(s.y(0));
  s.u.back() = r + s.far_field(s.y(N - 1));
  return s;
}

double axisym_quadratic_mode(const AxisymmetricState& s) {
  double num = 0.0, den = 0.0;
  const double r = s.rho();
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    const double y = s.y(i), q = y * y - 2.0;
    const double w = (i == 0 || i + 1 == s.u.size() ? 0.5 : 1.0) * std::exp(-y * y / 4);
    num += w * q * (s.u[i] - r);
    den += w * q * q;
  }
  return num / den;
}

namespace {

// Outer profile sqrt(rho^2 + 2 rho a (y^2 - 2)) - rho: to first order a (y^2 - 2), and a
// stationary solution of the first-order outer equation -(n-1)/u - (y/2) u_y + u/2 = 0.
double outer_profile(double r, double a, double y) {
  const double arg = r * r + 2.0 * r * a * (y * y - 2.0);
  return std::sqrt(std::max(arg, 1e-2 * r * r)) - r;
}

}  // namespace

double AxisymmetricState::far_field(double yy) const {
  if (boundary == AxisymBoundary::Cylinder) return 0.0;
  return outer_profile(rho(), axisym_quadratic_mode(*this), yy);
}

std::vector<double> axisym_nonlinearity(const AxisymmetricState& s) {
  const std::size_t N = s.u.size();
  const double r = s.rho(), h = s.h;
  std::vector<double> out(N, 0.0);
  for (std::size_t i = 1; i + 1 < N; ++i) {
    const double v = s.u[i] - r;
    const double vy = (s.u[i + 1] - s.u[i - 1]) / (2 * h);
    const double vyy = (s.u[i + 1] - 2 * s.u[i] + s.u[i - 1]) / (h * h);
    out[i] = -vyy * vy * vy / (1 + vy * vy) - v * v / (2 * (r + v));
  }
  return out;
}

namespace {

// Rescaled speed F(u) = u_yy/(1 + u_y^2) - (n-1)/u - (y/2) u_y + u/2 at interior nodes.
void axisym_speed(const AxisymmetricState& s, const std::vector<double>& u, std::vector<double>& F,
                  std::vector<double>* lo, std::vector<double>* di, std::vector<double>* hi) {
  const std::size_t N = u.size();
  const double h = s.h, nm1 = static_cast<double>(s.n - 1);
  for (std::size_t i = 1; i + 1 < N; ++i) {
    const double y = s.y(i);
    const double p = (u[i + 1] - u[i - 1]) / (2 * h);
    const double q = (u[i + 1] - 2 * u[i] + u[i - 1]) / (h * h);
    const double g = 1.0 / (1.0 + p * p);
    F[i] = q * g - nm1 / u[i] - 0.5 * y * p + 0.5 * u[i];
    if (lo) {
      const double dg = -2.0 * p * g * g * q;  // derivative of q g in p
      (*lo)[i] = g / (h * h) - dg / (2 * h) + y / (4 * h);
      (*hi)[i] = g / (h * h) + dg / (2 * h) - y / (4 * h);
      (*di)[i] = -2.0 * g / (h * h) + nm1 / (u[i] * u[i]) + 0.5;
    }
  }
}

}  // namespace

AxisymmetricState axisym_step(const AxisymmetricState& s, double dt, std::vector<double>& prev) {
  const std::size_t N = s.u.size();
  const double r = s.rho();
  std::vector<double> F0(N, 0.0), F(N, 0.0), lo(N, 0.0), di(N, 0.0), hi(N, 0.0);
  axisym_speed(s, s.u, F0, nullptr, nullptr, nullptr);
  // Predictor: linear extrapolation from the previous state when available.
  std::vector<double> u(N);
  for (std::size_t i = 0; i < N; ++i) u[i] = prev.size() == N ? 2.0 * s.u[i] - prev[i] : s.u[i] + dt * F0[i];
  u.front() = r + s.far_field(s.y(0));
  u.back() = r + s.far_field(s.y(N - 1));
  std::vector<double> a(N, 0.0), b(N, 1.0), c(N, 0.0), d(N, 0.0), x(N, 0.0);
  bool converged = false;
  for (int it = 0; it < 30 && !converged; ++it) {
    axisym_speed(s, u, F, &lo, &di, &hi);
    for (std::size_t i = 1; i + 1 < N; ++i) {
      if (!(u[i] > 0.0)) throw PinchError(s.tau + dt, s.y(i));
      a[i] = -0.5 * dt * lo[i];
      b[i] = 1.0 - 0.5 * dt * di[i];
      c[i] = -0.5 * dt * hi[i];
      d[i] = -(u[i] - 0.5 * dt * F[i] - s.u[i] - 0.5 * dt * F0[i]);
    }
    b[0] = b[N - 1] = 1.0;
    d[0] = d[N - 1] = 0.0;
    for (std::size_t i = 1; i < N; ++i) {
      const double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      d[i] -= w * d[i - 1];
    }
    x[N - 1] = d[N - 1] / b[N - 1];
    for (std::size_t i = N - 1; i-- > 0;) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
    double step = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      u[i] += x[i];
      step = std::max(step, std::abs(x[i]));
    }
    converged = step <= 1e-13 * (1.0 + r);
  }
  if (!converged) throw PinchError(s.tau + dt, 0.0);
  prev = s.u;
  AxisymmetricState out = s;
  out.tau = s.tau + dt;
  out.u = std::move(u);
  const double umin = r / 10.0;
  for (std::size_t i = 0; i < N; ++i)
    if (!(out.u[i] > umin)) throw PinchError(out.tau, s.y(i));
  return out;
}

void grow_domain(AxisymmetricState& s, double R, std::vector<double>* prev) {
  const std::size_t add = R > s.half_width ? static_cast<std::size_t>(std::ceil((R - s.half_width) / s.h - 1e-9)) : 0;
  if (add == 0) return;
  const double r = s.rho();
  const double a = s.boundary == AxisymBoundary::FittedProfile ? axisym_quadratic_mode(s) : 0.0;
  std::vector<double> u(s.u.size() + 2 * add, r);
  std::copy(s.u.begin(), s.u.end(), u.begin() + static_cast<std::ptrdiff_t>(add));
  s.u = std::move(u);
  s.half_width += static_cast<double>(add) * s.h;
  for (std::size_t i = 0; i < add; ++i) {
    const double y = s.y(i);
    s.u[i] = s.u[s.u.size() - 1 - i] = r + (s.boundary == AxisymBoundary::FittedProfile ? outer_profile(r, a, y) : 0.0);
  }
  if (prev && !prev->empty()) {
    // History on new nodes from the far-field model.
    std::vector<double> p(s.u.size());
    std::copy(prev->begin(), prev->end(), p.begin() + static_cast<std::ptrdiff_t>(add));
    for (std::size_t i = 0; i < add; ++i) {
      p[i] = s.u[i];
      p[p.size() - 1 - i] = s.u[s.u.size() - 1 - i];
    }
    *prev = std::move(p);
  }
}

AxisymmetricState axisym_run(AxisymmetricState s, double tau_end, const AxisymSchedule& sched,
                             const std::function<void(const AxisymmetricState&)>& observe) {
  const double tau0 = s.tau;
  std::vector<double> prev;
  const long steps = std::lround((tau_end - tau0) / sched.dt);
  for (long i = 0; i < steps; ++i) {
    grow_domain(s, sched.R0 + sched.growth * (s.tau - tau0), &prev);
    s = axisym_step(s, sched.dt, prev);
    s.tau = tau0 + static_cast<double>(i + 1) * sched.dt;
    if (observe) observe(s);
  }
  return s;
}

double axisym_constant_mode(const AxisymmetricState& s) {
  // Gaussian-normalized projection on [-R, R] by the trapezoid rule.
  double num = 0.0, den = 0.0;
  const double r = s.rho();
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    const double y = s.y(i);
    const double w = (i == 0 || i + 1 == s.u.size() ? 0.5 : 1.0) * std::exp(-y * y / 4);
    num += w * (s.u[i] - r);
    den += w;
  }
  return num / den;
}

namespace {

enum class Fate { Expand, Pinch, Survive };

struct Probe {
  Fate fate;
  double escape_tau;
};

Probe probe(AxisymmetricState s, double tau_end, const AxisymSchedule& sched, double tau_origin, double threshold) {
  std::vector<double> prev;
  const long steps = std::lround((tau_end - s.tau) / sched.dt);
  const double t0 = s.tau;
  try {
    for (long i = 0; i < steps; ++i) {
      grow_domain(s, sched.R0 + sched.growth * (s.tau - tau_origin), &prev);
      s = axisym_step(s, sched.dt, prev);
      s.tau = t0 + static_cast<double>(i + 1) * sched.dt;
      const double c = axisym_constant_mode(s);
      if (c > threshold) return {Fate::Expand, s.tau};
      if (c < -threshold) return {Fate::Pinch, s.tau};
    }
  } catch (const PinchError& e) {
    return {Fate::Pinch, e.tau()};
  }
  return {Fate::Survive, tau_end};
}

AxisymmetricState offset(AxisymmetricState s, double c) {
  for (std::size_t i = 1; i + 1 < s.u.size(); ++i) s.u[i] += c;
  return s;
}

}  // namespace

ShootingResult shoot_neckpinch(const AxisymmetricState& initial, double tau_end, const AxisymSchedule& sched,
                               const ShootingConfig& cfg, double output_stride) {
  ShootingResult res;
  const double tau_origin = initial.tau;
  AxisymmetricState start = initial;
  while (start.tau < tau_end - 1e-9) {
    // Probes look a full stage ahead; only the first half is kept.
    const double stage_end = start.tau + cfg.stage_length;
    double lo = -cfg.bracket, hi = cfg.bracket;
    Probe plo = probe(offset(start, lo), stage_end, sched, tau_origin, cfg.threshold);
    Probe phi = probe(offset(start, hi), stage_end, sched, tau_origin, cfg.threshold);
    if (plo.fate != Fate::Pinch || phi.fate != Fate::Expand)
      throw std::runtime_error("shoot_neckpinch: constant offset bracket does not separate pinch from expansion");
    double best = 0.5 * (lo + hi), best_escape = start.tau;
    for (int it = 0; it < cfg.max_bisections && hi - lo > 0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const Probe p = probe(offset(start, mid), stage_end, sched, tau_origin, cfg.threshold);
      if (p.escape_tau >= best_escape) {
        best = mid;
        best_escape = p.escape_tau;
      }
      if (p.fate == Fate::Survive) {
        best = mid;
        best_escape = stage_end;
        break;
      }
      (p.fate == Fate::Pinch ? lo : hi) = mid;
    }
    res.offsets.push_back(best);
    res.stage_starts.push_back(start.tau);
    // Replay the best trajectory, keep outputs up to a safe restart time.
    const double keep_until = std::min(tau_end, start.tau + 0.5 * (best_escape - start.tau));
    if (keep_until <= start.tau + 10 * sched.dt)
      throw std::runtime_error("shoot_neckpinch: stage made no progress");
    AxisymmetricState s = offset(start, best);
    std::vector<double> prev;
    const double t0 = s.tau;
    const long steps = std::lround((keep_until - t0) / sched.dt);
    const long stride = std::max(1L, std::lround(output_stride / sched.dt));
    if (res.states.empty()) res.states.push_back(s);
    for (long i = 0; i < steps; ++i) {
      grow_domain(s, sched.R0 + sched.growth * (s.tau - tau_origin), &prev);
      s = axisym_step(s, sched.dt, prev);
      s.tau = t0 + static_cast<double>(i + 1) * sched.dt;
      const long global = std::lround((s.tau - tau_origin) / sched.dt);
      if (global % stride == 0) res.states.push_back(s);
    }
    start = s;
    res.reached = s.tau;
  }
  return res;
}

}  // namespace cylflow
