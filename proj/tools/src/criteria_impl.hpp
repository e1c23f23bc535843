// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "cylflow/app/criteria.hpp"
#include "cylflow/galerkin.hpp"
#include "cylflow/trajectory.hpp"

namespace cylflow::app {

/// Galerkin run of the degenerate experiment, shared by criteria 4 and 5.
struct DegenerateRun {
  std::unique_ptr<GalerkinSolver> solver;
  GalerkinTrajectory trajectory;
  FlowTrajectory flow;
  SpectralField seed;
  double seconds = 0.0;
};

DegenerateRun make_degenerate_run(const ExperimentConfig& cfg);

/// Builder for a CriterionResult.
class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}
  void measure(const std::string& name, double v) { r_.measured.emplace_back(name, v); }
  void check(const std::string& name, bool ok, const std::string& tolerance) {
    r_.checks.emplace_back(name, ok);
    r_.tolerances.emplace_back(name, tolerance);
  }
  void note(const std::string& s) { r_.note += (r_.note.empty() ? "" : "; ") + s; }

 private:
  CriterionResult& r_;
};

/// Short decimal rendering of a pinned tolerance.
std::string tol_text(double v);

/// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

void criterion_spectrum(Workspace& ws, Recorder& rec);
void criterion_hermite_gap(Workspace& ws, Recorder& rec);
void criterion_neckpinch(Workspace& ws, Recorder& rec);
void criterion_degenerate(Workspace& ws, Recorder& rec);
void criterion_radius(Workspace& ws, Recorder& rec);
void criterion_low_spherical(Workspace& ws, Recorder& rec);
void criterion_transform(Workspace& ws, Recorder& rec);
void criterion_jacobi(Workspace& ws, Recorder& rec);
void criterion_whitney(Workspace& ws, Recorder& rec);
void criterion_monitors(Workspace& ws, Recorder& rec);

}  // namespace cylflow::app
