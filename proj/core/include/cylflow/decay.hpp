// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cylflow/geometry.hpp"

namespace cylflow {

/// Sampled distance series d_u(tau_i), optionally localized to Q_R.
struct DecaySeries {
  std::vector<double> tau;
  std::vector<double> d;
  std::vector<double> d_local;  ///< empty if absent
  double R = 0.0;               ///< localization radius of d_local

  /// Linear interpolation of ln d (or d_local) at tau.
  double log_distance(double t, bool local = false) const;
  double distance(double t, bool local = false) const;
};

/// Raised when d_u(tau + 1) = 0: the decay order is +infinity.
class InfiniteDecayOrder : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// N_u(tau) = ln(d_u(tau) / d_u(tau + 1)).
double decay_order(const DecaySeries& s, double tau);
/// Same on the localized distances.
double localized_decay_order(const DecaySeries& s, double tau);
/// Certified bound C / ((tau - T0) R^2) on |N_u(Q_R) - N_u|.
double localization_error(double tau, double T0, double R, double C);

enum class VerdictKind { Drop, NearEigenvalue, Inconclusive };

struct MonotonicityVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  double T = 0.0;
  double drop = 0.0;       ///< N(T) - N(T+1)
  Rational gamma;          ///< nearest eigenvalue
  double deviation = 0.0;  ///< sup |N - gamma| on [T + eps, T + 1]
  double sample_step = 0.0;
  std::string str() const;
};

/// Drop if N(T) - N(T+1) >= delta and N(T+1) >= -1 - eps; NearEigenvalue if
/// sup |N - gamma| <= eps on [T + eps, T + 1] for some gamma in the spectrum.
MonotonicityVerdict classify_interval(const CylinderShape& shape, const DecaySeries& s, double T, double eps = 0.05,
                                      double delta = 0.05);

struct DecayAtInfinity {
  bool finite = false;
  bool inconclusive = false;
  Rational gamma;
  double raw = 0.0;  ///< mean N over the last stable intervals
  std::vector<MonotonicityVerdict> verdicts;
};

/// Last five unit intervals must agree on NearEigenvalue(gamma); +infinity if d
/// drops below `underflow` first.
DecayAtInfinity decay_order_at_infinity(const CylinderShape& shape, const DecaySeries& s, double eps = 0.05,
                                        double underflow = 1e-13);

struct MonitorSides {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds() const { return lhs <= rhs; }
};

/// Nonconcentration monitor: lhs = int dist^2 (1 + (tau - T_-)|X|^2) dmu at tau,
/// rhs = C e^{K (tau - T_-)} d_u(T_-)^2.
MonitorSides nonconcentration_monitor(const GraphFunction& at_T_minus, const SphereProfile& phi_T_minus,
                                      const GraphFunction& at_tau, const SphereProfile& phi_tau, double elapsed,
                                      double C, double K);

/// max over samples with tau >= T of d(tau) / (e^{(1+eps)(tau - T)} d(T)).
double growth_bound_monitor(const DecaySeries& s, double T, double eps);

}  // namespace cylflow
