// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "cylflow/geometry.hpp"

namespace cylflow {

/// Parameters of the sphere flow discretization.
struct SphereFlowConfig {
  int m = 2;
  int degree = 8;        ///< harmonic truncation D
  int sobolev = 6;       ///< l, with H^l embedded in C^4
  double sigma = 0.75;   ///< target exponent 3/(2m)
  double eta = 0.625;    ///< integral weight exponent in (1/m, sigma)
  double horizon = 0.0;  ///< T_inf; 0 selects e^{-2 T/m} = 1e-12
  double panel = 0.1;    ///< time panel length
  int quad_degree = 0;   ///< sphere quadrature degree; 0 selects 3 D
  double kappa = 1e-2;   ///< seed ball radius
};

/// Sphere state: coefficients over the Gaussian-orthonormal harmonics of
/// S^m(sqrt(2m)) of degree <= D.
struct SphereSpectralState {
  int m = 2;
  double tau = 0.0;
  Eigen::VectorXd c;
};

class SphereFlowSolver;

/// Constructed low spherical flow w = xi(psi) + e^{-tau/m} psi.
struct LowSphericalFlow {
  std::shared_ptr<const SphereFlowSolver> solver;
  Eigen::VectorXd psi;
  double sigma = 0.0;
  double kappa = 0.0;
  Eigen::MatrixXd xi;         ///< xi at the solver's time nodes (modes x nodes)
  Eigen::MatrixXd forcing;    ///< N(w) coefficients at the time nodes
  std::vector<double> increments;  ///< ||u_{p+1} - u_p|| per Picard step
  bool converged = false;

  /// w(tau) by product integration of the stored forcing.
  SphereSpectralState at(double tau) const;
  /// w(omega, tau) for unit omega.
  double value(std::span<const double> omega, double tau) const;
};

class SphereFlowSolver : public std::enable_shared_from_this<SphereFlowSolver> {
 public:
  static std::shared_ptr<SphereFlowSolver> make(const SphereFlowConfig& cfg);

  const SphereFlowConfig& config() const { return cfg_; }
  double rho() const { return rho_; }
  std::size_t modes() const { return degree_.size(); }
  int mode_degree(std::size_t q) const { return degree_[q]; }
  /// Eigenvalue of -L_S on mode q: i(i + m - 1)/(2m) - 1.
  double mode_eigenvalue(std::size_t q) const { return lambda_[q]; }
  const std::vector<double>& times() const { return times_; }
  double horizon() const { return horizon_; }
  const SphereRule& quadrature() const { return rule_; }

  /// Coefficients of a polynomial in the ambient theta variables restricted to S^m(rho).
  Eigen::VectorXd coefficients_of(const Polynomial& p) const;
  double evaluate(const Eigen::VectorXd& c, std::span<const double> omega) const;
  /// Node values on the quadrature grid.
  Eigen::VectorXd synthesize(const Eigen::VectorXd& c) const;
  Eigen::VectorXd analyze(const Eigen::VectorXd& f) const;
  /// Jets of the state at every quadrature node.
  std::vector<GraphJet> jets(const Eigen::VectorXd& c) const;

  /// Full speed F and nonlinearity N = F - L u at the nodes.
  Eigen::VectorXd speed_nodes(const Eigen::VectorXd& c) const;
  Eigen::VectorXd nonlinearity_nodes(const Eigen::VectorXd& c) const;
  /// Projected nonlinearity coefficients.
  Eigen::VectorXd nonlinearity(const Eigen::VectorXd& c) const;
  Eigen::VectorXd apply_L(const Eigen::VectorXd& c) const;

  /// ||u||_{l,sigma,eta} for u sampled at times().
  double trajectory_norm(const Eigen::MatrixXd& u) const;
  double sobolev_norm(const Eigen::VectorXd& c, int l) const;

  /// U(u, phi) at times(): forward Duhamel on degree >= 3, tail integral on degree <= 2.
  Eigen::MatrixXd duhamel_map(const Eigen::MatrixXd& u, const Eigen::VectorXd& phi) const;
  /// Duhamel integral of prescribed forcing coefficients g (modes x nodes) at time tau.
  Eigen::VectorXd duhamel_at(const Eigen::MatrixXd& g, double tau) const;

  /// Picard iteration of u -> U(u, psi) to the fixed point.
  LowSphericalFlow xi_map(const Eigen::VectorXd& psi, double tol = 1e-10, int max_iter = 60) const;

 private:
  explicit SphereFlowSolver(const SphereFlowConfig& cfg);
  Eigen::MatrixXd forcing_of(const Eigen::MatrixXd& u, const Eigen::VectorXd& phi) const;

  struct Weights {
    double lambda;
    std::vector<double> full_fwd, full_bwd;            // per Gauss node
    std::vector<std::vector<double>> part_fwd, part_bwd;  // [target node][source node]
  };
  Weights make_weights(double lambda) const;
  void partial_weights(double lambda, double delta, std::vector<double>& fwd, std::vector<double>& bwd) const;

  SphereFlowConfig cfg_;
  double rho_ = 0.0;
  double horizon_ = 0.0;
  int panels_ = 0;
  std::vector<double> gauss_x_;  // nodes on [0, panel]
  std::vector<double> times_;
  std::vector<int> degree_;
  std::vector<double> lambda_;
  std::vector<Polynomial> basis_;  // Gaussian-orthonormal, ambient theta variables
  SphereRule rule_;
  Eigen::VectorXd node_weight_;
  Eigen::MatrixXd val_;                 // nodes x modes
  std::vector<Eigen::MatrixXd> grad_;   // (m+1): nodes x modes
  std::vector<Eigen::MatrixXd> hess_;   // (m+1)^2: nodes x modes
  std::vector<Weights> weights_;        // per distinct degree
};

/// Traceless quadratic seed direction (theta_1^2 - theta_2^2), Gaussian-normalized, times amplitude.
Eigen::VectorXd quadratic_seed(const SphereFlowSolver& s, double amplitude);

/// y-invariant extension of the low spherical flow to C_{n,k}; zero when n - k = 1.
SphereProfile family_U(const CylinderShape& shape, const LowSphericalFlow* flow, double tau);

}  // namespace cylflow
