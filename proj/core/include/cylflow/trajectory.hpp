// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cylflow/axisym.hpp"
#include "cylflow/decay.hpp"
#include "cylflow/galerkin.hpp"
#include "cylflow/geometry.hpp"
#include "cylflow/io.hpp"
#include "cylflow/low_spherical.hpp"
#include "cylflow/snapshot.hpp"

namespace cylflow {

/// Sequence of snapshots with derived series d_u, N_u, r_delta and Gaussian area.
struct FlowTrajectory {
  CylinderShape shape;
  std::string scheme;
  double dt = 0.0;
  std::string r_schedule;
  std::string termination;  ///< empty when the run reached its end time
  std::vector<Snapshot> snapshots;
  std::vector<double> tau, d_u, n_u, r_delta, gaussian_area;

  DecaySeries series() const;
  /// Columns tau, d_u, N_u, r_delta, gaussian_area (N_u is nan where tau + 1 is out of range).
  io::CsvTable series_table() const;
};

/// |v| + |grad v| + |Hess v| on the cylinder of radius rho at one point.
double c2_density(const CylinderShape& shape, const GraphJet& jet);

/// Largest R <= R_max with ||v||_{C^2(Q_R)} <= delta, scanning spine shells
/// outward with relative step `rel_step` (absolute floor 0.05). Returns 0 if
/// no Q_{2n} graph exists.
double graphical_radius(const GraphSource& v, double delta, double R_max, int sphere_degree = 8,
                        double rel_step = 0.01);

/// Graph source of a spectral field (polynomial in theta and y).
std::shared_ptr<const GraphSource> field_source(const SpectralField& f);

/// Per-snapshot sources for the derived series.
struct SeriesInput {
  double tau = 0.0;
  GraphFunction graph;
  std::shared_ptr<const GraphSource> source;
  double R_max = 0.0;
};

/// Fills d_u, N_u, r_delta and Gaussian area from per-snapshot inputs.
void populate_series(FlowTrajectory& tr, const std::vector<SeriesInput>& in, double delta,
                     const std::function<SphereProfile(double)>& phi = {});

/// Trajectory from axisymmetric states (e.g. the output of shoot_neckpinch).
FlowTrajectory trajectory_from_axisym(const std::vector<AxisymmetricState>& states, double delta,
                                      const std::string& scheme, double dt);

/// Plain integration of an axisymmetric state to tau_end; a pinch ends the
/// run early and is recorded in `termination`.
FlowTrajectory run_axisym_trajectory(AxisymmetricState initial, double tau_end, const AxisymSchedule& sched,
                                     double output_stride, double delta);

/// Trajectory from a Galerkin coefficient history sampled every `stride`;
/// the graphical radius scan extends to R_max(tau).
FlowTrajectory trajectory_from_galerkin(const GalerkinSolver& solver, const GalerkinTrajectory& g, double stride,
                                        double delta, const std::function<double(double)>& R_max,
                                        const LowSphericalFlow* flow = nullptr);

/// Writes snapshots to the indexed trajectory file and the series CSV next to it.
void save_trajectory(const FlowTrajectory& tr, const std::filesystem::path& trajectory_file,
                     const std::filesystem::path& series_csv);

}  // namespace cylflow
