// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cylflow/geometry.hpp"
#include "cylflow/quadrature.hpp"
#include "cylflow/spectrum.hpp"

namespace cylflow {

/// Truncation and grid parameters of the spectral-Galerkin solver.
struct GalerkinConfig {
  int n = 2;
  int k = 1;
  double gamma_max = 3.5;    ///< keep modes with eigenvalue <= gamma_max
  int sphere_degree = 16;    ///< exactness degree of the sphere rule
  int spine_nodes = 64;      ///< Gauss-Legendre nodes per spine axis
  double half_width = 8.0;   ///< spine box [-L, L]^k
  double dt = 0.05;
  double horizon = 35.0;     ///< stable-manifold horizon T_inf
  double split = 0.5;        ///< modes with eigenvalue < split are integrated back from the horizon
  double aliasing_tol = 0.25;
};

class AliasingError : public std::runtime_error {
 public:
  AliasingError(double indicator)
      : std::runtime_error("galerkin: aliasing monitor exceeds tolerance"), indicator_(indicator) {}
  double indicator() const { return indicator_; }

 private:
  double indicator_;
};

/// Coefficient trajectory on a uniform time grid.
struct GalerkinTrajectory {
  std::vector<double> times;
  Eigen::MatrixXd coeffs;          ///< modes x times
  std::vector<double> increments;  ///< sup-norm change per Picard sweep
  bool converged = false;
  double max_aliasing = 0.0;
  /// Four-point Lagrange interpolation in tau.
  Eigen::VectorXd at(double tau) const;
};

class GalerkinSolver {
 public:
  explicit GalerkinSolver(const GalerkinConfig& cfg);

  const GalerkinConfig& config() const { return cfg_; }
  const CylinderShape& shape() const { return shape_; }
  const std::vector<ModeIndex>& modes() const { return modes_; }
  /// -L eigenvalue of each mode.
  const Eigen::VectorXd& eigenvalues() const { return gamma_; }
  std::shared_ptr<const CylinderGrid> grid() const { return grid_; }
  std::size_t size() const { return modes_.size(); }
  /// Index of a mode in the truncation, or -1.
  int index_of(const ModeIndex& mode) const;

  Eigen::VectorXd coefficients(const SpectralField& f) const;
  SpectralField field(const Eigen::VectorXd& c) const;

  /// Projected Q = F_full - L v, evaluated pseudo-spectrally.
  Eigen::VectorXd nonlinearity(const Eigen::VectorXd& c) const;
  /// ||Q in the top unit band of eigenvalues|| / ||Q||.
  double aliasing_indicator(const Eigen::VectorXd& q) const;
  /// Exponential Runge-Kutta 2 step: exact linear propagation, explicit Q.
  Eigen::VectorXd step(const Eigen::VectorXd& c, double dt) const;

  /// Solution decaying at least like the slowest forward mode: modes with
  /// eigenvalue >= split start from `seed` and integrate forward, the others
  /// integrate back from zero at the horizon. Picard iteration to `tol`.
  GalerkinTrajectory stable_manifold(const Eigen::VectorXd& seed, double tol = 1e-12, int max_iter = 60) const;

 private:
  GalerkinConfig cfg_;
  CylinderShape shape_;
  std::vector<ModeIndex> modes_;
  Eigen::VectorXd gamma_;
  std::shared_ptr<const CylinderGrid> grid_;
  std::unique_ptr<ModalSampler> sampler_;
};

SpectralField galerkin_step(const GalerkinSolver& solver, const SpectralField& field, double dt);

/// int_0^1 e^{-z t} t dt and int_0^1 e^{-z t} (1 - t) dt, stable for small z.
double exp_weight_late(double z);
double exp_weight_early(double z);

}  // namespace cylflow
