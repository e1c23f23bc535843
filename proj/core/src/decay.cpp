// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/decay.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cylflow {

double DecaySeries::log_distance(double t, bool local) const {
  const std::vector<double>& v = local ? d_local : d;
  if (tau.size() < 2 || v.size() != tau.size()) throw std::invalid_argument("DecaySeries: malformed series");
  const double tol = 1e-9 * std::max(1.0, std::abs(tau.back()));
  if (t < tau.front() - tol || t > tau.back() + tol) throw std::out_of_range("DecaySeries: tau outside series");
  auto it = std::upper_bound(tau.begin(), tau.end(), t);
  std::size_t i = it == tau.begin() ? 0 : static_cast<std::size_t>(it - tau.begin()) - 1;
  if (i + 1 >= tau.size()) i = tau.size() - 2;
  const double a = v[i], b = v[i + 1];
  const double s = std::clamp((t - tau[i]) / (tau[i + 1] - tau[i]), 0.0, 1.0);
  if (s == 0.0) return std::log(a);
  if (s == 1.0) return std::log(b);
  if (a <= 0 || b <= 0) return -INFINITY;
  return (1 - s) * std::log(a) + s * std::log(b);
}

double DecaySeries::distance(double t, bool local) const { return std::exp(log_distance(t, local)); }

namespace {

double order(const DecaySeries& s, double tau, bool local) {
  const double a = s.log_distance(tau, local), b = s.log_distance(tau + 1.0, local);
  if (b == -INFINITY) {
    if (a == -INFINITY) throw InfiniteDecayOrder("decay_order: distance vanishes on [tau, tau+1]");
    throw InfiniteDecayOrder("decay_order: d(tau + 1) = 0");
  }
  return a - b;
}

std::vector<Rational> spectrum_values(const CylinderShape& shape, Rational gmax) {
  std::vector<Rational> out;
  for (const auto& e : enumerate_modes(shape, gmax))
    if (out.empty() || out.back() != e.eigenvalue) out.push_back(e.eigenvalue);
  return out;
}

}  // namespace

double decay_order(const DecaySeries& s, double tau) { return order(s, tau, false); }

double localized_decay_order(const DecaySeries& s, double tau) {
  if (s.d_local.empty()) throw std::invalid_argument("localized_decay_order: no localized distances");
  return order(s, tau, true);
}

double localization_error(double tau, double T0, double R, double C) {
  if (!(tau > T0) || !(R > 0)) throw std::invalid_argument("localization_error: tau > T0 and R > 0 required");
  return C / ((tau - T0) * R * R);
}

std::string MonotonicityVerdict::str() const {
  std::ostringstream os;
  switch (kind) {
    case VerdictKind::Drop: os << "Drop(" << drop << ")"; break;
    case VerdictKind::NearEigenvalue: os << "NearEigenvalue(" << gamma.str() << "," << deviation << ")"; break;
    case VerdictKind::Inconclusive: os << "Inconclusive(drop=" << drop << ",dev=" << deviation << ")"; break;
  }
  return os.str();
}

MonotonicityVerdict classify_interval(const CylinderShape& shape, const DecaySeries& s, double T, double eps,
                                      double delta) {
  MonotonicityVerdict v;
  v.T = T;
  const double n0 = decay_order(s, T), n1 = decay_order(s, T + 1.0);
  v.drop = n0 - n1;
  // Sample N on [T + eps, T + 1] at the series resolution.
  double step = 1.0;
  for (std::size_t i = 1; i < s.tau.size(); ++i) step = std::min(step, s.tau[i] - s.tau[i - 1]);
  v.sample_step = step;
  std::vector<double> ns;
  for (double t = T + eps; t <= T + 1.0 + 1e-12; t += std::max(step, 1e-3)) ns.push_back(decay_order(s, t));
  ns.push_back(n1);
  const double mean = [&] {
    double a = 0;
    for (double x : ns) a += x;
    return a / static_cast<double>(ns.size());
  }();
  const double top = std::max(1.0, std::ceil(mean) + 1.0);
  double best = INFINITY;
  for (const Rational& g : spectrum_values(shape, Rational(static_cast<std::int64_t>(top)))) {
    double dev = 0.0;
    for (double x : ns) dev = std::max(dev, std::abs(x - g.to_double()));
    if (dev < best) {
      best = dev;
      v.gamma = g;
    }
  }
  v.deviation = best;
  if (v.drop >= delta && n1 >= -1.0 - eps) v.kind = VerdictKind::Drop;
  else if (best <= eps) v.kind = VerdictKind::NearEigenvalue;
  else v.kind = VerdictKind::Inconclusive;
  return v;
}

DecayAtInfinity decay_order_at_infinity(const CylinderShape& shape, const DecaySeries& s, double eps,
                                        double underflow) {
  DecayAtInfinity out;
  // Truncate at underflow: the decay order is infinite if it happens.
  double t_end = s.tau.back() - 1.0;
  for (std::size_t i = 0; i < s.tau.size(); ++i)
    if (s.d[i] < underflow) {
      out.finite = false;
      out.raw = INFINITY;
      return out;
    }
  const double t0 = s.tau.front();
  std::vector<double> starts;
  for (double T = t_end - 1.0; T >= t0 - 1e-12 && starts.size() < 5; T -= 1.0) starts.push_back(T);
  if (starts.size() < 5) {
    out.inconclusive = true;
    return out;
  }
  std::reverse(starts.begin(), starts.end());
  double sum = 0.0;
  bool same = true;
  for (double T : starts) {
    MonotonicityVerdict v = classify_interval(shape, s, T, eps);
    // A stabilized interval is one whose N stays near the spectrum.
    if (v.deviation <= eps) v.kind = VerdictKind::NearEigenvalue;
    if (v.kind != VerdictKind::NearEigenvalue || (!out.verdicts.empty() && v.gamma != out.verdicts.front().gamma))
      same = false;
    sum += decay_order(s, T);
    out.verdicts.push_back(v);
  }
  out.raw = sum / 5.0;
  if (!same) {
    out.inconclusive = true;
    return out;
  }
  out.finite = true;
  out.gamma = out.verdicts.front().gamma;
  return out;
}

MonitorSides nonconcentration_monitor(const GraphFunction& at_T_minus, const SphereProfile& phi_T_minus,
                                      const GraphFunction& at_tau, const SphereProfile& phi_tau, double elapsed,
                                      double C, double K) {
  if (elapsed < 0) throw std::invalid_argument("nonconcentration_monitor: tau >= T_- required");
  MonitorSides m;
  m.lhs = weighted_distance_integral(at_tau, phi_tau, elapsed);
  const double d0 = d_u(at_T_minus, phi_T_minus);
  m.rhs = C * std::exp(K * elapsed) * d0 * d0;
  return m;
}

double growth_bound_monitor(const DecaySeries& s, double T, double eps) {
  const double dT = s.distance(T);
  if (!(dT > 0)) throw std::domain_error("growth_bound_monitor: d(T) = 0");
  double worst = 0.0;
  for (std::size_t i = 0; i < s.tau.size(); ++i) {
    if (s.tau[i] < T - 1e-12) continue;
    worst = std::max(worst, s.d[i] / (std::exp((1.0 + eps) * (s.tau[i] - T)) * dT));
  }
  worst = std::max(worst, 1.0);
  return worst;
}

}  // namespace cylflow
