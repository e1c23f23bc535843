// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "cylflow/geometry.hpp"

namespace cylflow {

/// Far-field value imposed at y = +-R.
enum class AxisymBoundary {
  Cylinder,       ///< u(+-R) = rho
  FittedProfile,  ///< u(+-R) = sqrt(rho^2 + 2 rho a (R^2 - 2)), a the Gaussian projection of v onto y^2 - 2
};

/// Rotationally symmetric neck over C_{n,1}: radius u(y) on a uniform grid
/// y_i = -R + i h, i = 0..N-1, with u(+-R) pinned by `boundary`.
struct AxisymmetricState {
  int n = 2;
  double tau = 0.0;
  double half_width = 0.0;  ///< R
  double h = 0.05;
  AxisymBoundary boundary = AxisymBoundary::Cylinder;
  std::vector<double> u;

  double rho() const;
  double y(std::size_t i) const { return -half_width + static_cast<double>(i) * h; }
  std::vector<double> v() const;  ///< u - rho
  /// Far-field model of v at y under the boundary rule.
  double far_field(double y) const;
  CylinderShape shape() const { return CylinderShape::make(n, 1); }
  /// Graph function over a cylinder grid that resolves [-R, R].
  GraphFunction graph(int n_spine = 0) const;
};

/// Uniform initial state from a profile v0(y) on [-R, R] (end values set by the boundary rule).
AxisymmetricState make_axisym_state(int n, double R, double h, double tau, const std::function<double(double)>& v0,
                                    AxisymBoundary boundary = AxisymBoundary::Cylinder);

/// Gaussian projection of v onto y^2 - 2 over [-R, R].
double axisym_quadratic_mode(const AxisymmetricState& s);

class PinchError : public std::runtime_error {
 public:
  PinchError(double tau, double y) : std::runtime_error("axisym: pinch reached"), tau_(tau), y_(y) {}
  double tau() const { return tau_; }
  double y() const { return y_; }

 private:
  double tau_, y_;
};

/// Nonlinearity -v_yy v_y^2/(1 + v_y^2) - v^2/(2(rho + v)) at interior nodes (0 at the ends).
std::vector<double> axisym_nonlinearity(const AxisymmetricState& s);

/// One IMEX step: Crank-Nicolson on D v_yy - (y/2) v_y + v with the curvature
/// coefficient D = 1/(1 + v_y^2) extrapolated to the half step, Adams-Bashforth 2
/// on -v^2/(2(rho + v)). `prev` carries the previous remainder and D (empty on
/// the first step). Throws PinchError if u drops below rho/10.
AxisymmetricState axisym_step(const AxisymmetricState& s, double dt, std::vector<double>& prev);

/// Appends nodes so the half-width reaches at least R (new nodes on the far-field model).
void grow_domain(AxisymmetricState& s, double R, std::vector<double>* prev = nullptr);

struct AxisymSchedule {
  double dt = 0.01;
  double R0 = 10.0;
  double growth = 0.25;  ///< R(tau) = R0 + growth (tau - tau_0)
};

/// Integrates to tau_end, calling `observe` after every step. Returns the final state.
AxisymmetricState axisym_run(AxisymmetricState s, double tau_end, const AxisymSchedule& sched,
                             const std::function<void(const AxisymmetricState&)>& observe = {});

/// Gaussian projection of v onto the constant mode over [-R, R].
double axisym_constant_mode(const AxisymmetricState& s);

struct ShootingConfig {
  double stage_length = 30.0;
  double threshold = 0.05;    ///< |constant mode| escape threshold
  double bracket = 1e-2;      ///< initial constant-offset bracket
  int max_bisections = 80;
};

struct ShootingResult {
  std::vector<AxisymmetricState> states;  ///< at every output stride
  std::vector<double> offsets;            ///< constant offset applied per stage
  std::vector<double> stage_starts;
  double reached = 0.0;
};

/// Multi-stage shooting on the constant mode: at each stage start a constant
/// offset is bisected so the trajectory neither pinches nor expands over the
/// next stage_length; the first half of the best probe is kept and the next
/// stage restarts from there.
ShootingResult shoot_neckpinch(const AxisymmetricState& initial, double tau_end, const AxisymSchedule& sched,
                               const ShootingConfig& cfg, double output_stride);

}  // namespace cylflow
