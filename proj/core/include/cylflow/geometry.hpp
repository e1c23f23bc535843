// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "cylflow/quadrature.hpp"
#include "cylflow/spectrum.hpp"

namespace cylflow {

/// Second-order jet of a radial graph function v(omega, y), omega on the
/// unit sphere. Sphere derivatives are covariant and expressed as ambient
/// tangent vectors/matrices in R^{m+1}.
struct GraphJet {
  double v = 0.0;
  Eigen::VectorXd grad_s;  ///< (m+1), tangent to the unit sphere at omega
  Eigen::MatrixXd hess_s;  ///< (m+1) x (m+1), tangent block
  Eigen::VectorXd grad_y;  ///< k
  Eigen::MatrixXd hess_y;  ///< k x k
  Eigen::MatrixXd mixed;   ///< (m+1) x k, d/dy_b of grad_s

  static GraphJet zero(int m, int k);
};

class NotGraphicalError : public std::runtime_error {
 public:
  NotGraphicalError(const std::string& what, std::size_t node = std::numeric_limits<std::size_t>::max())
      : std::runtime_error(what), node_(node) {}
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

/// Evaluator of a graph function at arbitrary points of the cylinder.
class GraphSource {
 public:
  explicit GraphSource(const CylinderShape& shape) : shape_(shape) {}
  virtual ~GraphSource() = default;

  const CylinderShape& shape() const { return shape_; }
  virtual double value(std::span<const double> omega, std::span<const double> y) const = 0;
  /// Default: central differences in normal coordinates on the sphere.
  virtual GraphJet jet(std::span<const double> omega, std::span<const double> y) const;

 protected:
  CylinderShape shape_;
};

/// v(omega, y) = P(rho omega, y) for a polynomial P in (theta, y).
class PolynomialGraphSource : public GraphSource {
 public:
  PolynomialGraphSource(const CylinderShape& shape, Polynomial p);
  double value(std::span<const double> omega, std::span<const double> y) const override;
  GraphJet jet(std::span<const double> omega, std::span<const double> y) const override;
  const Polynomial& polynomial() const { return p_; }

 private:
  Polynomial p_;
  std::vector<Polynomial> d1_;               // first derivatives, all variables
  std::vector<std::vector<Polynomial>> d2_;  // second derivatives
};

/// k = 1, v depends on y only; cubic B-spline through uniform samples.
/// Outside the sampled interval the end values are held with zero slope.
class AxisymmetricGraphSource : public GraphSource {
 public:
  AxisymmetricGraphSource(const CylinderShape& shape, std::vector<double> values, double y0, double h);
  ~AxisymmetricGraphSource() override;
  double value(std::span<const double> omega, std::span<const double> y) const override;
  GraphJet jet(std::span<const double> omega, std::span<const double> y) const override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Wraps a callable; jets by finite differences.
class FunctionGraphSource : public GraphSource {
 public:
  using Fn = std::function<double(std::span<const double>, std::span<const double>)>;
  FunctionGraphSource(const CylinderShape& shape, Fn fn) : GraphSource(shape), fn_(std::move(fn)) {}
  double value(std::span<const double> omega, std::span<const double> y) const override { return fn_(omega, y); }

 private:
  Fn fn_;
};

/// Graph of e^A(lambda graph(v) - (x, y0)), re-solved radially per point.
class TransformedGraphSource : public GraphSource {
 public:
  TransformedGraphSource(std::shared_ptr<const GraphSource> base, double lambda, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& y0, const Eigen::MatrixXd& A);
  double value(std::span<const double> omega, std::span<const double> y) const override;

 private:
  std::shared_ptr<const GraphSource> base_;
  double lambda_;
  Eigen::VectorXd shift_;  // (x, y0)
  Eigen::MatrixXd inv_rot_;
  Eigen::MatrixXd ell_;
};

/// Graph of graph(v) + (0, Y): v(omega, y - Y).
class ShiftedGraphSource : public GraphSource {
 public:
  ShiftedGraphSource(std::shared_ptr<const GraphSource> base, const Eigen::VectorXd& Y)
      : GraphSource(base->shape()), base_(std::move(base)), Y_(Y) {}
  double value(std::span<const double> omega, std::span<const double> y) const override;
  GraphJet jet(std::span<const double> omega, std::span<const double> y) const override;

 private:
  std::shared_ptr<const GraphSource> base_;
  Eigen::VectorXd Y_;
};

/// Node-sampled radial graph over a CylinderGrid, optionally backed by a source.
class GraphFunction {
 public:
  GraphFunction(std::shared_ptr<const CylinderGrid> grid, std::vector<double> values,
                std::shared_ptr<const GraphSource> source = nullptr);
  static GraphFunction sample(std::shared_ptr<const CylinderGrid> grid, std::shared_ptr<const GraphSource> source);

  const CylinderGrid& grid() const { return *grid_; }
  std::shared_ptr<const CylinderGrid> grid_ptr() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::shared_ptr<const GraphSource>& source() const { return source_; }
  const CylinderShape& shape() const { return grid_->shape(); }

  /// Jets at every node (requires a source).
  std::vector<GraphJet> jets() const;
  double sup_abs() const;

 private:
  std::shared_ptr<const CylinderGrid> grid_;
  std::vector<double> values_;
  std::shared_ptr<const GraphSource> source_;
};

/// Odd C^2 cutoff: identity on [-1/2, 1/2], sign(s) for |s| >= 1, quintic between.
double chi(double s);
double chi_prime(double s);
double chi_second(double s);
/// sup |chi| + sup |chi'|.
double chi_c1_norm();

/// Sphere profile phi(omega) for omega on the unit sphere; empty means zero.
using SphereProfile = std::function<double(std::span<const double>)>;

/// chi(|x| - rho - phi(x/|x|)) at an ambient point X = (x, y).
double dist_bar_u(const CylinderShape& shape, std::span<const double> X, const SphereProfile& phi = {});

/// Gaussian-weighted graph measure at each node: grid weight times the area
/// element (R/rho)^m W and the Gaussian correction e^{-(R^2 - rho^2)/4}.
std::vector<double> graph_measure(const GraphFunction& v, const std::vector<GraphJet>& jets);

/// Distance d_u of the graph, optionally localized to Q_R.
double d_u(const GraphFunction& v, const SphereProfile& phi = {},
           double R = std::numeric_limits<double>::infinity());

/// Weighted point sample of a surface: ambient points with area elements.
struct SurfaceCloud {
  int dim = 3;
  std::vector<double> points;  ///< row-major, dim per point
  std::vector<double> area;
};
double d_u(const CylinderShape& shape, const SurfaceCloud& cloud, const SphereProfile& phi = {});

/// int dist^2 (1 + s |X|^2) dmu over the graph.
double weighted_distance_integral(const GraphFunction& v, const SphereProfile& phi, double s);

/// Gaussian area F of the graph restricted to the grid's domain.
double gaussian_area(const GraphFunction& v);

struct TailMass {
  double computed = 0.0;
  double bound = 0.0;
  double constant = 0.0;
};
/// Psi_{C,N}(R) = int_{C \ B_R} (1 + |X|^N) e^{-|X|^2/4}, with the bound
/// C lambda e^{-R^2/(4+delta)} and C fitted at R = 2n.
TailMass tail_mass(const CylinderShape& shape, double N, double R, double lambda, double delta = 1.0);
double tail_integral(const CylinderShape& shape, double N, double R);

/// |‖Pi(v zeta)‖ - ‖Pi v‖| with zeta = 1 on Q_R ramping linearly to 0 on Q_{R+1}.
double cutoff_projection_deviation(const SpectralField& v, double R, Relation rel, Rational gamma);

/// Graph function of e^A(lambda graph(v) - (x, y0)) sampled on `target` (v's grid if null).
GraphFunction transform_graph(const GraphFunction& v, double lambda, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y0, const Eigen::MatrixXd& A,
                              std::shared_ptr<const CylinderGrid> target = nullptr);

/// First-order transformation model v(., lambda^{-1} y0 + .) + rho(lambda - 1) - psi_x + psi_A.
double transform_first_order(const GraphSource& v, double lambda, const Eigen::VectorXd& x, const Eigen::VectorXd& y0,
                             const Eigen::MatrixXd& ell, std::span<const double> omega, std::span<const double> y);

struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds() const { return lhs <= rhs; }
};
/// |d_u' - d_u| against F^{1/2} ‖chi‖_{C^1} ‖phi' - phi‖_{C^0}; the Gaussian
/// area of the surface stands in for its entropy.
InequalitySides compare_distances(const GraphFunction& surface, const SphereProfile& phi,
                                  const SphereProfile& phi_prime);

struct TranslatedDistance {
  double lhs = 0.0;        ///< d_u(Sigma + (0, Y))
  double d_term = 0.0;     ///< d_u(Sigma) e^{R/4}
  double tail_term = 0.0;  ///< F^{1/2} e^{-R^2/64}
};
TranslatedDistance translated_distance_bound(const GraphFunction& surface, const SphereProfile& phi,
                                             const Eigen::VectorXd& Y, double R);

/// Per-node mode values and jets for a fixed mode list on a grid.
class ModalSampler {
 public:
  ModalSampler(std::shared_ptr<const CylinderGrid> grid, std::vector<ModeIndex> modes, bool with_jets = false);

  const CylinderGrid& grid() const { return *grid_; }
  const std::vector<ModeIndex>& modes() const { return modes_; }
  /// values(a, q) = Phi_q at node a.
  const Eigen::MatrixXd& values() const { return values_; }

  std::vector<double> synthesize(const Eigen::VectorXd& coeffs) const;
  std::vector<GraphJet> synthesize_jets(const Eigen::VectorXd& coeffs) const;
  /// Gaussian projection of node samples onto the modes.
  Eigen::VectorXd analyze(std::span<const double> f) const;

 private:
  std::shared_ptr<const CylinderGrid> grid_;
  std::vector<ModeIndex> modes_;
  Eigen::MatrixXd values_;
  bool with_jets_ = false;
  // Factorized jets: sphere part per (sphere node, mode), spine part per (spine node, mode).
  std::vector<GraphJet> sphere_jets_;  // value, grad_s, hess_s only
  std::vector<GraphJet> spine_jets_;   // value, grad_y, hess_y only
};

/// Gaussian projection of grid data onto modes with eigenvalue `rel` gamma
/// (among modes up to gamma_max); throws if the grid degree is insufficient.
SpectralField project_grid(const GraphFunction& v, Relation rel, Rational gamma, Rational gamma_max = Rational(2));

/// Sphere-part jet of the harmonic polynomial P at unit omega (value, grad_s, hess_s).
GraphJet sphere_polynomial_jet(const Polynomial& P, double rho, std::span<const double> omega);

/// Orthonormal basis of the tangent space of the unit sphere at omega, as columns.
Eigen::MatrixXd tangent_basis(std::span<const double> omega);

}  // namespace cylflow
