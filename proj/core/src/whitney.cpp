// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace cylflow {

QuadraticMap QuadraticMap::zero(int d, int p) {
  QuadraticMap Q;
  Q.M.assign(static_cast<std::size_t>(p), Eigen::MatrixXd::Zero(d, d));
  return Q;
}

Eigen::VectorXd QuadraticMap::operator()(const Eigen::VectorXd& X) const {
  Eigen::VectorXd out(out_dim());
  for (int i = 0; i < out_dim(); ++i) out(i) = X.dot(M[i] * X);
  return out;
}

Eigen::MatrixXd QuadraticMap::gradient(const Eigen::VectorXd& X) const {
  Eigen::MatrixXd G(out_dim(), in_dim());
  for (int i = 0; i < out_dim(); ++i) G.row(i) = 2.0 * (M[i] * X).transpose();
  return G;
}

QuadraticMap QuadraticMap::operator-(const QuadraticMap& o) const {
  if (o.M.size() != M.size()) throw std::invalid_argument("QuadraticMap: dimension mismatch");
  QuadraticMap out = *this;
  for (std::size_t i = 0; i < M.size(); ++i) out.M[i] -= o.M[i];
  return out;
}

double operator_norm(const Eigen::MatrixXd& L) {
  if (L.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(L).singularValues()(0);
}

namespace {

double sq_norm(const QuadraticMap& Q, const Eigen::VectorXd& X) { return Q(X).squaredNorm(); }

// Projected gradient ascent of |Q(X)|^2 on the unit sphere with step halving.
double ascend(const QuadraticMap& Q, Eigen::VectorXd X) {
  X.normalize();
  double f = sq_norm(Q, X), step = 1.0;
  for (int it = 0; it < 400 && step > 1e-14; ++it) {
    const Eigen::VectorXd val = Q(X);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(X.size());
    for (int i = 0; i < Q.out_dim(); ++i) g += 4.0 * val(i) * (Q.M[i] * X);
    g -= g.dot(X) * X;
    if (g.norm() < 1e-15 * (1.0 + f)) break;
    const Eigen::VectorXd trial = (X + step * g / (g.norm() + 1e-300)).normalized();
    const double ft = sq_norm(Q, trial);
    if (ft > f) {
      X = trial;
      f = ft;
      step = std::min(1.0, 2.0 * step);
    } else {
      step *= 0.5;
    }
  }
  return f;
}

}  // namespace

double operator_norm(const QuadraticMap& Q) {
  const int d = Q.in_dim();
  if (d == 0) return 0.0;
  std::vector<Eigen::VectorXd> starts;
  for (int a = 0; a < d; ++a) {
    starts.push_back(Eigen::VectorXd::Unit(d, a));
    for (int b = a + 1; b < d; ++b) {
      starts.push_back(Eigen::VectorXd::Unit(d, a) + Eigen::VectorXd::Unit(d, b));
      starts.push_back(Eigen::VectorXd::Unit(d, a) - Eigen::VectorXd::Unit(d, b));
    }
  }
  for (const Eigen::MatrixXd& M : Q.M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    for (int a = 0; a < d; ++a) starts.push_back(es.eigenvectors().col(a));
  }
  double best = 0.0;
  for (const Eigen::VectorXd& s : starts) best = std::max(best, ascend(Q, s));
  return std::sqrt(best);
}

WhitneyJet WhitneyJet::from_generator(const CylinderShape& shape, const Eigen::VectorXd& X, double t,
                                      const Eigen::MatrixXd& A, const std::vector<Eigen::MatrixXd>& q) {
  const int d = shape.dim(), mp = shape.dim_theta();
  if (X.size() != d || A.rows() != d || A.cols() != d) throw std::invalid_argument("WhitneyJet: dimension mismatch");
  if (static_cast<int>(q.size()) != mp) throw std::invalid_argument("WhitneyJet: q needs one matrix per normal direction");
  WhitneyJet j;
  j.X = X;
  j.t = t;
  j.A = A;
  const Eigen::MatrixXd R = A.exp();
  j.normal = R.leftCols(mp);
  j.spine = R.rightCols(shape.k);
  j.q = q;
  for (Eigen::MatrixXd& m : j.q) m = 0.5 * (m + m.transpose());
  return j;
}

Eigen::MatrixXd WhitneyJet::L() const { return spine * spine.transpose(); }

Eigen::MatrixXd WhitneyJet::L_perp() const { return Eigen::MatrixXd::Identity(dim(), dim()) - L(); }

Eigen::VectorXd WhitneyJet::q_of(const Eigen::VectorXd& s) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(q.size()));
  for (std::size_t a = 0; a < q.size(); ++a) out(static_cast<Eigen::Index>(a)) = s.dot(q[a] * s);
  return out;
}

QuadraticMap WhitneyJet::Q() const {
  QuadraticMap out = QuadraticMap::zero(dim(), dim());
  for (std::size_t a = 0; a < q.size(); ++a) {
    const Eigen::MatrixXd S = spine * q[a] * spine.transpose();
    for (int i = 0; i < dim(); ++i) out.M[i] += normal(i, static_cast<Eigen::Index>(a)) * S;
  }
  return out;
}

double WhitneyJet::projection_defect() const {
  const Eigen::MatrixXd P = L();
  const double idem = (P * P - P).cwiseAbs().maxCoeff();
  const double sym = (P - P.transpose()).cwiseAbs().maxCoeff();
  return std::max(idem, sym) + std::abs(P.trace() - static_cast<double>(k()));
}

WhitneyJet move_jet(const WhitneyJet& jet, const Eigen::MatrixXd& R, const Eigen::VectorXd& b) {
  WhitneyJet out = jet;
  out.X = R * jet.X + b;
  out.normal = R * jet.normal;
  out.spine = R * jet.spine;
  out.A.resize(0, 0);
  return out;
}

WhitneyJet curve_jet(const CylinderShape& shape, const std::function<Eigen::VectorXd(double)>& G,
                     const std::function<Eigen::VectorXd(double)>& dG, const std::function<Eigen::VectorXd(double)>& d2G,
                     double y, double t) {
  if (shape.k != 1) throw std::invalid_argument("curve_jet: needs k = 1");
  const int mp = shape.dim_theta(), d = shape.dim();
  const Eigen::VectorXd g1 = dG(y), g2 = d2G(y);
  Eigen::MatrixXd ell = Eigen::MatrixXd::Zero(mp, 1);
  const double s = g1.norm();
  if (s > 0.0) ell.col(0) = g1 / s * std::atan(s);
  Eigen::VectorXd X(d);
  X.head(mp) = G(y);
  X(mp) = y;
  const Eigen::MatrixXd A = rotation_generator(shape, ell);
  const Eigen::MatrixXd R = A.exp();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
  acc.head(mp) = g2;
  const double speed2 = 1.0 + s * s;
  std::vector<Eigen::MatrixXd> q(static_cast<std::size_t>(mp), Eigen::MatrixXd::Zero(1, 1));
  for (int a = 0; a < mp; ++a) q[a](0, 0) = R.col(a).dot(acc) / (2.0 * speed2);
  return WhitneyJet::from_generator(shape, X, t, A, q);
}

Eigen::MatrixXd relative_generator(const WhitneyJet& base, const WhitneyJet& other) {
  const Eigen::MatrixXd Nt = base.normal.transpose() * other.spine;
  const Eigen::MatrixXd St = base.spine.transpose() * other.spine;
  const Eigen::MatrixXd slope = Nt * St.inverse();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(slope, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = std::atan(s(i));
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

double default_location_epsilon(int n, double entropy) {
  return std::min(1.0 / (10.0 * n), 1.0 / entropy);
}

LocationTerms location_estimate_check(const CylinderShape& shape, const WhitneyJet& origin, const WhitneyJet& bar,
                                      double C, double epsilon) {
  LocationTerms out;
  out.epsilon = epsilon;
  const Eigen::VectorXd d = bar.X - origin.X;
  const Eigen::VectorXd x = origin.normal.transpose() * d;
  const Eigen::VectorXd y = origin.spine.transpose() * d;
  const double t = bar.t - origin.t;
  out.r = std::max({x.norm(), y.norm(), std::sqrt(std::abs(t))});
  const double r = out.r;
  if (r <= 0.0) throw std::invalid_argument("location_estimate_check: coincident points");
  out.y_comparable = std::abs(y.norm() - r) <= 1e-9 * r;
  out.lhs_t = std::abs(t) / (r * r);
  out.lhs_x = (x - origin.q_of(y)).norm() / r;
  Eigen::MatrixXd grad(static_cast<Eigen::Index>(origin.q.size()), origin.k());
  for (std::size_t a = 0; a < origin.q.size(); ++a)
    grad.row(static_cast<Eigen::Index>(a)) = 2.0 * (origin.q[a] * y).transpose();
  out.lhs_l = operator_norm(relative_generator(origin, bar) - grad);
  out.lhs_Q = r * operator_norm(bar.Q() - origin.Q());
  out.rhs = C * std::pow(r, 2.0 * shape.gamma_plus().to_double() - 10.0 * epsilon);
  return out;
}

Polynomial whitney_polynomial(const WhitneyJet& jet) {
  const int d = jet.dim();
  std::vector<Polynomial> Z;
  for (int i = 0; i < d; ++i) Z.push_back(Polynomial::variable(d, i) - Polynomial::constant(d, jet.X(i)));
  const Eigen::MatrixXd P = jet.L_perp();
  const QuadraticMap Q = jet.Q();
  Polynomial f = Polynomial::constant(d, jet.t);
  for (int i = 0; i < d; ++i) {
    Polynomial comp(d);
    for (int j = 0; j < d; ++j)
      if (P(i, j) != 0.0) comp += P(i, j) * Z[j];
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        if (Q.M[i](a, b) != 0.0) comp -= Q.M[i](a, b) * (Z[a] * Z[b]);
    f -= comp * comp;
  }
  return f;
}

double derivative_norm(const Polynomial& p, int order, const Eigen::VectorXd& X) {
  const int d = p.nvars();
  std::vector<double> x(X.data(), X.data() + X.size());
  double best = 0.0;
  for (const Polynomial::Exponent& e : exponents_of_degree(d, order)) {
    Polynomial q = p;
    for (int v = 0; v < d; ++v)
      for (int c = 0; c < e[v]; ++c) q = q.derivative(v);
    best = std::max(best, std::abs(q.evaluate(x)));
  }
  return best;
}

CompatibilityReport compatibility_check(const WhitneyJet& jet1, const WhitneyJet& jet2, double alpha, double C,
                                        double Lambda) {
  CompatibilityReport rep;
  const Eigen::VectorXd D = jet2.X - jet1.X;
  const double dist = D.norm();
  rep.r = std::max(dist, std::sqrt(std::abs(jet2.t - jet1.t)));
  const Polynomial diff = whitney_polynomial(jet1) - whitney_polynomial(jet2);
  for (int j = 0; j < 4; ++j) {
    rep.residual[j] = derivative_norm(diff, j, jet2.X);
    rep.bound[j] = C * std::pow(dist, 3.0 + alpha - j);
    rep.pass = rep.pass && rep.residual[j] <= rep.bound[j];
  }
  if (rep.r <= 0.0) return rep;
  const double r = rep.r;
  const Eigen::MatrixXd P1 = jet1.L_perp(), P2 = jet2.L_perp();
  const QuadraticMap Q1 = jet1.Q(), Q2 = jet2.Q();
  rep.l_perp_gap = operator_norm(P1 - P2) / r;
  rep.q_norm = std::max(operator_norm(Q1), operator_norm(Q2));
  rep.location_terms[0] = std::abs(jet2.t - jet1.t) / (r * r);
  rep.location_terms[1] = (P1 * D - Q1(D)).norm() / r;
  rep.location_terms[2] = operator_norm(P1 * ((P1 - P2) - Q1.gradient(D)));
  rep.location_terms[3] = r * operator_norm(Q2 - Q1);
  double lhs = 0.0;
  for (double v : rep.location_terms) lhs += v;
  rep.location_lhs = lhs / std::pow(r, 1.0 + alpha);
  rep.hypotheses_ok = rep.l_perp_gap <= Lambda && rep.q_norm <= Lambda && rep.location_lhs <= Lambda;
  return rep;
}

}  // namespace cylflow
