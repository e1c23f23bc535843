// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cylflow {

DecaySeries FlowTrajectory::series() const {
  DecaySeries s;
  s.tau = tau;
  s.d = d_u;
  return s;
}

io::CsvTable FlowTrajectory::series_table() const {
  io::CsvTable t;
  t.header = {"tau", "d_u", "N_u", "r_delta", "gaussian_area"};
  for (std::size_t i = 0; i < tau.size(); ++i) t.add_numeric_row({tau[i], d_u[i], n_u[i], r_delta[i], gaussian_area[i]});
  return t;
}

double c2_density(const CylinderShape& shape, const GraphJet& jet) {
  const double r = shape.rho();
  double g2 = jet.grad_s.squaredNorm() / (r * r) + jet.grad_y.squaredNorm();
  double h2 = jet.hess_s.squaredNorm() / (r * r * r * r) + jet.hess_y.squaredNorm() +
              2.0 * jet.mixed.squaredNorm() / (r * r);
  return std::abs(jet.v) + std::sqrt(g2) + std::sqrt(h2);
}

namespace {

// Spine directions on S^{k-1}; k = 1 gives +-1.
std::vector<std::vector<double>> spine_directions(int k) {
  std::vector<std::vector<double>> dirs;
  if (k == 1) return {{1.0}, {-1.0}};
  const SphereRule rule = sphere_rule(k - 1, 8);
  for (std::size_t a = 0; a < rule.size(); ++a) {
    const auto d = rule.node(a);
    dirs.emplace_back(d.begin(), d.end());
  }
  return dirs;
}

double shell_sup(const GraphSource& v, const SphereRule& sph, const std::vector<std::vector<double>>& dirs, double r) {
  const int k = v.shape().k;
  std::vector<double> y(static_cast<std::size_t>(k));
  double sup = 0.0;
  for (const auto& d : dirs) {
    for (int b = 0; b < k; ++b) y[b] = r * d[b];
    for (std::size_t a = 0; a < sph.size(); ++a) sup = std::max(sup, c2_density(v.shape(), v.jet(sph.node(a), y)));
    if (r == 0.0) break;
  }
  return sup;
}

}  // namespace

double graphical_radius(const GraphSource& v, double delta, double R_max, int sphere_degree, double rel_step) {
  const CylinderShape& shape = v.shape();
  const SphereRule sph = sphere_rule(shape.m(), sphere_degree);
  const auto dirs = spine_directions(shape.k);
  double r = 0.0, good = -1.0;
  while (true) {
    if (shell_sup(v, sph, dirs, r) > delta) break;
    good = r;
    if (r >= R_max) break;
    r = std::min(R_max, r + std::max(0.05, rel_step * r));
  }
  if (good < 2.0 * shape.n) return 0.0;
  return good;
}

std::shared_ptr<const GraphSource> field_source(const SpectralField& f) {
  return std::make_shared<const PolynomialGraphSource>(f.shape(), f.to_polynomial());
}

void populate_series(FlowTrajectory& tr, const std::vector<SeriesInput>& in, double delta,
                     const std::function<SphereProfile(double)>& phi) {
  const std::size_t N = in.size();
  tr.tau.assign(N, 0.0);
  tr.d_u.assign(N, 0.0);
  tr.n_u.assign(N, std::numeric_limits<double>::quiet_NaN());
  tr.r_delta.assign(N, 0.0);
  tr.gaussian_area.assign(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    tr.tau[i] = in[i].tau;
    tr.d_u[i] = d_u(in[i].graph, phi ? phi(in[i].tau) : SphereProfile{});
    tr.gaussian_area[i] = gaussian_area(in[i].graph);
    tr.r_delta[i] = in[i].source ? graphical_radius(*in[i].source, delta, in[i].R_max) : 0.0;
  }
  const DecaySeries s = tr.series();
  for (std::size_t i = 0; i < N; ++i) {
    if (N == 0 || tr.tau[i] + 1.0 > tr.tau.back() + 1e-12) continue;
    try {
      tr.n_u[i] = decay_order(s, tr.tau[i]);
    } catch (const InfiniteDecayOrder&) {
      tr.n_u[i] = std::numeric_limits<double>::infinity();
    }
  }
}

namespace {

Snapshot axisym_snapshot(const AxisymmetricState& st, const GraphFunction& g) {
  Snapshot snap;
  snap.tau = st.tau;
  snap.grid = g.grid_ptr();
  snap.values = g.values();
  snap.extra_tag = "axisym-profile";
  snap.extra = {st.half_width, st.h};
  snap.extra.insert(snap.extra.end(), st.u.begin(), st.u.end());
  return snap;
}

}  // namespace

FlowTrajectory trajectory_from_axisym(const std::vector<AxisymmetricState>& states, double delta,
                                      const std::string& scheme, double dt) {
  FlowTrajectory tr;
  if (states.empty()) return tr;
  tr.shape = states.front().shape();
  tr.scheme = scheme;
  tr.dt = dt;
  std::vector<SeriesInput> in;
  for (const AxisymmetricState& st : states) {
    GraphFunction g = st.graph();
    tr.snapshots.push_back(axisym_snapshot(st, g));
    in.push_back({st.tau, g, g.source(), st.half_width});
  }
  populate_series(tr, in, delta);
  return tr;
}

FlowTrajectory run_axisym_trajectory(AxisymmetricState initial, double tau_end, const AxisymSchedule& sched,
                                     double output_stride, double delta) {
  std::vector<AxisymmetricState> states{initial};
  const double t0 = initial.tau;
  const long stride = std::max(1L, std::lround(output_stride / sched.dt));
  long count = 0;
  std::string termination;
  try {
    axisym_run(initial, tau_end, sched, [&](const AxisymmetricState& s) {
      if (++count % stride == 0) states.push_back(s);
    });
  } catch (const PinchError& e) {
    termination = "pinch at tau=" + io::format_double(e.tau()) + " y=" + io::format_double(e.y());
  }
  FlowTrajectory tr = trajectory_from_axisym(states, delta, "axisym-crank-nicolson-newton", sched.dt);
  tr.termination = termination;
  tr.r_schedule = "R(tau) = " + io::format_double(sched.R0) + " + " + io::format_double(sched.growth) + " (tau - " +
                  io::format_double(t0) + ")";
  return tr;
}

FlowTrajectory trajectory_from_galerkin(const GalerkinSolver& solver, const GalerkinTrajectory& g, double stride,
                                        double delta, const std::function<double(double)>& R_max,
                                        const LowSphericalFlow* flow) {
  FlowTrajectory tr;
  tr.shape = solver.shape();
  tr.scheme = "galerkin-stable-manifold";
  tr.dt = solver.config().dt;
  tr.r_schedule = "graphical radius scan to R_max(tau)";
  std::vector<SeriesInput> in;
  const double h = g.times.size() > 1 ? g.times[1] - g.times[0] : 1.0;
  const long every = std::max(1L, std::lround(stride / h));
  for (std::size_t t = 0; t < g.times.size(); t += static_cast<std::size_t>(every)) {
    const Eigen::VectorXd c = g.coeffs.col(static_cast<Eigen::Index>(t));
    auto src = field_source(solver.field(c));
    GraphFunction gf = GraphFunction::sample(solver.grid(), src);
    Snapshot snap;
    snap.tau = g.times[t];
    snap.grid = solver.grid();
    snap.values = gf.values();
    snap.extra_tag = "galerkin-coefficients";
    snap.extra.assign(c.data(), c.data() + c.size());
    tr.snapshots.push_back(std::move(snap));
    in.push_back({g.times[t], gf, src, R_max ? R_max(g.times[t]) : solver.config().half_width});
  }
  const CylinderShape shape = solver.shape();
  populate_series(tr, in, delta, [&](double tau) { return family_U(shape, flow, tau); });
  return tr;
}

void save_trajectory(const FlowTrajectory& tr, const std::filesystem::path& trajectory_file,
                     const std::filesystem::path& series_csv) {
  write_trajectory_file(trajectory_file, tr.snapshots);
  io::write_atomic(series_csv, tr.series_table().str());
}

}  // namespace cylflow
