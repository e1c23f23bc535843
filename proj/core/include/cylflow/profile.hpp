// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cylflow/decay.hpp"
#include "cylflow/geometry.hpp"
#include "cylflow/whitney.hpp"

namespace cylflow {

/// Time-stamped graph over the cylinder.
struct GraphSample {
  double tau = 0.0;
  GraphFunction graph;
};

/// Time-stamped spectral field, typically v - phi_u.
struct FieldSample {
  double tau = 0.0;
  SpectralField w;
};

/// Per-tau least-squares fit of v against the quadratics y_i^2 - 2 on Q_{sqrt(tau)}.
struct PolynomialProfileFit {
  std::vector<double> tau;
  Eigen::MatrixXd coeff;               ///< times x k
  Eigen::MatrixXd ratio;               ///< coeff 4 tau / sqrt(2(n-k))
  std::vector<int> axes;               ///< 0-based axes with ratio > threshold at the window end
  std::vector<double> residual;        ///< weighted L^2(Q_sqrt(tau)) norm of v minus the fit
  std::vector<double> relative_error;  ///< against sqrt(2(n-k))/(4 tau) sum_{i in axes}(y_i^2 - 2)
  double residual_slope = 0.0;         ///< d ln residual / d ln tau
  bool consistent() const { return !axes.empty(); }
  bool residual_small() const { return residual_slope < -1.0; }
};

PolynomialProfileFit fit_polynomial_profile(const std::vector<GraphSample>& window, double threshold = 0.5);

/// Gaussian-weighted relative L^2(Q_sqrt(tau)) error of v against
/// sqrt(2(n-k))/(4 tau) sum_{i in axes} (y_i^2 - 2).
double polynomial_profile_error(const GraphFunction& v, double tau, const std::vector<int>& axes);

struct ExponentialProfileFit {
  double gamma = 0.0;
  SpectralField psi;
  std::vector<double> tau;
  std::vector<double> residual;  ///< ||w(tau) - e^{-gamma tau} psi||
  double exponent = 0.0;         ///< -d ln residual / d tau
  bool inconclusive = false;     ///< exponent below gamma
};

/// psi = mean over the last third of the window of e^{gamma tau} Pi_{= gamma} w,
/// with spine-independent modes removed; the residual exponent is fitted over
/// samples whose residual exceeds `floor`.
ExponentialProfileFit fit_exponential_profile(const std::vector<FieldSample>& window, Rational gamma,
                                              double floor = 0.0);

enum class ProfileCase { Polynomial, Exponential, SuperExponential, Inconclusive };
std::string to_string(ProfileCase c);

struct AsymptoticProfile {
  ProfileCase kind = ProfileCase::Inconclusive;
  Rational gamma;       ///< snapped decay order (Exponential)
  double raw = 0.0;     ///< unsnapped mean decay order
  DecayAtInfinity decay;
};

/// Dispatch on the decay order at infinity: 0 gives Polynomial, a finite
/// value >= 1/2 gives Exponential, +infinity gives SuperExponential.
AsymptoticProfile classify_trichotomy(const CylinderShape& shape, const DecaySeries& s, double eps = 0.05,
                                      double underflow = 1e-13);

class NotHalfModeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Whitney jet at (X, t) with frame e^A from psi in W_{1/2}; throws
/// NotHalfModeError if psi has components outside W_{1/2}.
WhitneyJet extract_whitney_jet(const CylinderShape& shape, const SpectralField& psi, const Eigen::VectorXd& X,
                               double t, const Eigen::MatrixXd& A, double tol = 1e-8);

struct SpineFit {
  Eigen::MatrixXd ell;  ///< (m+1) x k
  Eigen::MatrixXd A;    ///< rotation_generator(ell)
  double objective = 0.0;
  int iterations = 0;
};

/// Gauss-Newton over ell minimizing the Gaussian L^2 norm on `grid` of the
/// graph rotated by e^{-A(ell)}, started from `ell0`.
SpineFit fit_spine(const GraphFunction& v, std::shared_ptr<const CylinderGrid> grid, const Eigen::MatrixXd& ell0,
                   int max_iter = 20, double tol = 1e-12);

/// Whitney jet at (X, t) from a window of graphs of the flow based there: the
/// spine is fitted on the last third of the window, each sample is rotated back, and psi is the
/// last-third average of e^{tau/2} Pi_{=1/2}.
WhitneyJet harvest_whitney_jet(const CylinderShape& shape, const std::vector<GraphSample>& window,
                               std::shared_ptr<const CylinderGrid> grid, const Eigen::VectorXd& X, double t);

struct Basepoint {
  Eigen::VectorXd x;  ///< m+1 normal coordinates
  Eigen::VectorXd y;  ///< k spine coordinates
  double t = 0.0;
  double r() const;
};

class OutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct Reexpansion {
  std::vector<double> tau;
  std::vector<double> sigma;  ///< source time -ln(e^{-tau} - t)
  std::vector<double> lambda; ///< sqrt(1 - t e^{tau})
  std::vector<Eigen::VectorXd> x_r, y_r;  ///< e^{tau/2} x, e^{tau/2} y
  std::vector<GraphFunction> graphs;
};

/// Rescaled flow based at p from the rescaled flow based at the origin:
/// M^p(tau) = lambda M(sigma) - e^{tau/2} (x, y), optionally rotated by e^{-A}.
/// `flow(sigma)` supplies the graph source at time sigma in [sigma_min, sigma_max].
Reexpansion basepoint_reexpansion(const std::function<std::shared_ptr<const GraphSource>(double)>& flow,
                                  double sigma_min, double sigma_max, const Basepoint& p,
                                  const std::vector<double>& taus, std::shared_ptr<const CylinderGrid> grid,
                                  const Eigen::MatrixXd& A = {});

}  // namespace cylflow
