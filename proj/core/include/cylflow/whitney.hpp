// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "cylflow/polynomial.hpp"
#include "cylflow/spectrum.hpp"

namespace cylflow {

/// Homogeneous quadratic map R^d -> R^p, component i given by X^T M_i X.
struct QuadraticMap {
  std::vector<Eigen::MatrixXd> M;  ///< symmetric d x d, one per output coordinate

  static QuadraticMap zero(int d, int p);
  int in_dim() const { return M.empty() ? 0 : static_cast<int>(M.front().rows()); }
  int out_dim() const { return static_cast<int>(M.size()); }
  Eigen::VectorXd operator()(const Eigen::VectorXd& X) const;
  /// Differential at X: row i is 2 (M_i X)^T.
  Eigen::MatrixXd gradient(const Eigen::VectorXd& X) const;
  QuadraticMap operator-(const QuadraticMap& o) const;
};

/// Largest singular value.
double operator_norm(const Eigen::MatrixXd& L);
/// sup_{|X| = 1} |Q(X)| by multi-start projected gradient ascent on the sphere.
double operator_norm(const QuadraticMap& Q);

/// Second-order Whitney data at a spacetime point: the spine plane |L| with
/// orthonormal frames and the normal-valued quadratic q on |L|.
struct WhitneyJet {
  Eigen::VectorXd X;                ///< (n+1) position
  double t = 0.0;
  Eigen::MatrixXd normal;           ///< (n+1) x (m+1), orthonormal columns spanning |L|^perp
  Eigen::MatrixXd spine;            ///< (n+1) x k, orthonormal columns spanning |L|
  std::vector<Eigen::MatrixXd> q;   ///< q[a] symmetric k x k: q(s)_a = s^T q[a] s
  Eigen::MatrixXd A;                ///< generator with e^A(|L_o|) = |L|; empty once frames are rotated
  std::map<std::vector<int>, double> cubic;  ///< cubic part of the profile, not part of the jet

  /// Jet whose frame is e^A applied to the standard frame (normal first, spine last).
  static WhitneyJet from_generator(const CylinderShape& shape, const Eigen::VectorXd& X, double t,
                                   const Eigen::MatrixXd& A, const std::vector<Eigen::MatrixXd>& q);

  int dim() const { return static_cast<int>(X.size()); }
  int k() const { return static_cast<int>(spine.cols()); }
  Eigen::MatrixXd L() const;
  Eigen::MatrixXd L_perp() const;
  /// q(s) in normal coordinates.
  Eigen::VectorXd q_of(const Eigen::VectorXd& s) const;
  /// Q = q o L as an ambient quadratic map.
  QuadraticMap Q() const;
  /// max(|L^2 - L|, |L - L^T|) plus |rank L - k|.
  double projection_defect() const;
};

/// Rigid motion X -> R X + b applied to position and frames.
WhitneyJet move_jet(const WhitneyJet& jet, const Eigen::MatrixXd& R, const Eigen::VectorXd& b);

/// Exact jet of the curve y -> (G(y), y) (k = 1) at y, time t: tangent
/// (G', 1)/|.|, q = <N, (G'', 0)> / (2 |gamma'|^2).
WhitneyJet curve_jet(const CylinderShape& shape, const std::function<Eigen::VectorXd(double)>& G,
                     const std::function<Eigen::VectorXd(double)>& dG, const std::function<Eigen::VectorXd(double)>& d2G,
                     double y, double t = 0.0);

/// ell with e^{[[0, ell], [-ell^T, 0]]}(|L_o|) = |L| in the frame of `base`.
Eigen::MatrixXd relative_generator(const WhitneyJet& base, const WhitneyJet& other);

struct LocationTerms {
  double r = 0.0;
  double lhs_t = 0.0;  ///< |t| / r^2
  double lhs_x = 0.0;  ///< |x - q_o(y)| / r
  double lhs_l = 0.0;  ///< ||ell - grad q_o(y)||
  double lhs_Q = 0.0;  ///< r ||Q - Q_o||
  double rhs = 0.0;    ///< C r^{2 gamma^+ - 10 eps}
  double epsilon = 0.0;
  bool y_comparable = true;  ///< |y| = r, as the a priori bound requires
  double lhs() const { return lhs_t + lhs_x + lhs_l + lhs_Q; }
  bool pass() const { return y_comparable && lhs() <= rhs; }
};

/// Location estimate of `bar` relative to `origin`, in the frame of `origin`.
LocationTerms location_estimate_check(const CylinderShape& shape, const WhitneyJet& origin, const WhitneyJet& bar,
                                      double C, double epsilon);
/// min(1/(10 n), 1/entropy).
double default_location_epsilon(int n, double entropy);

/// f_p(X) = t - |L^perp(X - X_p) - Q(X - X_p)|^2 as a polynomial in n+1 variables.
Polynomial whitney_polynomial(const WhitneyJet& jet);

/// Max-abs of all order-j partial derivatives of p at X.
double derivative_norm(const Polynomial& p, int order, const Eigen::VectorXd& X);

struct CompatibilityReport {
  double r = 0.0;  ///< parabolic distance max(|X2 - X1|, |t2 - t1|^{1/2})
  std::array<double, 4> residual{};
  std::array<double, 4> bound{};
  double l_perp_gap = 0.0;   ///< ||L1^perp - L2^perp|| / r
  double q_norm = 0.0;       ///< max ||Q_i||
  double location_lhs = 0.0; ///< hypothesis display divided by r^{1+alpha}
  std::array<double, 4> location_terms{};
  bool hypotheses_ok = true;
  bool pass = true;
};

/// Residuals |D^j f_1(X_2) - D^j f_2(X_2)| against C |X_2 - X_1|^{3+alpha-j};
/// hypothesis bounds with constant Lambda are reported, not enforced.
CompatibilityReport compatibility_check(const WhitneyJet& jet1, const WhitneyJet& jet2, double alpha, double C,
                                        double Lambda);

}  // namespace cylflow
