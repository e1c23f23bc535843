// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "cylflow/geometry.hpp"

namespace cylflow {

/// Radial speed of a rescaled mean curvature flow graph and its splitting.
struct GraphSpeed {
  double F = 0.0;   ///< d v / d tau
  double Lv = 0.0;  ///< linear part Delta_S v / rho^2 + Delta_y v - y . grad_y v / 2 + v
  double N = 0.0;   ///< F - Lv, evaluated without cancellation
};

/// Speed of the radial graph R = rho + v over S^m(rho) x R^k with rho^2 = 2m.
/// Sphere derivatives in `jet` are taken on the unit sphere; k = 0 gives the
/// sphere flow. Throws NotGraphicalError if rho + v <= 0.
GraphSpeed rmcf_speed(int m, int k, double rho, const GraphJet& jet, std::span<const double> y);

/// Mean curvature of the same graph (outward normal, sphere of radius r has H = m/r).
double graph_mean_curvature(int m, double rho, const GraphJet& jet);

}  // namespace cylflow
