// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include "criteria_impl.hpp"
#include "cylflow/axisym.hpp"
#include "cylflow/calibration.hpp"
#include "cylflow/decay.hpp"
#include "cylflow/io.hpp"

namespace cylflow::app {
namespace {

constexpr double kLocalizationSlopeLo = -2.3, kLocalizationSlopeHi = -1.7;

/// Derived quantities of one short axisymmetric trajectory.
struct MonitorTrajectory {
  std::vector<NonconcentrationObservation> nonconcentration;
  double growth_ratio = 0.0;
  std::vector<double> radii, deviation;  ///< |N(Q_R) - N| at the localization time
  double elapsed = 0.0;                  ///< localization time minus T_0
};

/// Seeds: Gaussian-tapered random Hermite mixtures of degree <= max_degree.
std::vector<AxisymmetricState> seed_states(const ExperimentConfig& cfg, int count_offset, int count) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.number("seeds", "rng")));
  std::normal_distribution<double> N(0.0, 1.0);
  const int deg = cfg.integer("seeds", "max_degree");
  const double amp = cfg.number("seeds", "amplitude");
  std::vector<AxisymmetricState> out;
  for (int s = 0; s < count_offset + count; ++s) {
    std::vector<double> c(static_cast<std::size_t>(deg + 1));
    for (double& x : c) x = N(rng);
    if (s < count_offset) continue;
    auto v0 = [=](double y) {
      double f = 0.0, fact = 1.0;
      for (int j = 0; j <= deg; ++j) {
        if (j > 0) fact *= j;
        f += c[static_cast<std::size_t>(j)] * hermite(j, y) / std::sqrt(std::pow(2.0, j) * fact);
      }
      return amp * std::exp(-y * y / 8.0) * f;
    };
    out.push_back(make_axisym_state(cfg.integer("shape", "n"), cfg.number("solver", "half_width"),
                                    cfg.number("solver", "h"), 0.0, v0, AxisymBoundary::Cylinder));
  }
  return out;
}

MonitorTrajectory analyse(const ExperimentConfig& cfg, const AxisymmetricState& initial) {
  AxisymSchedule sched;
  sched.dt = cfg.number("solver", "dt");
  sched.R0 = cfg.number("solver", "half_width");
  sched.growth = 0.0;
  const double stride = cfg.number("solver", "stride");
  const long every = std::max(1L, std::lround(stride / sched.dt));
  std::vector<AxisymmetricState> states{initial};
  long count = 0;
  axisym_run(initial, initial.tau + cfg.number("solver", "duration"), sched, [&](const AxisymmetricState& s) {
    if (++count % every == 0) states.push_back(s);
  });
  std::vector<GraphFunction> graphs;
  DecaySeries series;
  for (const auto& s : states) {
    graphs.push_back(s.graph());
    series.tau.push_back(s.tau);
    series.d.push_back(d_u(graphs.back()));
  }
  MonitorTrajectory m;
  const double d0 = series.d.front();
  for (std::size_t i = 1; i < states.size(); ++i) {
    const double e = states[i].tau - states[0].tau;
    m.nonconcentration.push_back({e, weighted_distance_integral(graphs[i], {}, e), d0 * d0});
  }
  m.growth_ratio = growth_bound_monitor(series, states[0].tau, cfg.number("monitor", "growth_eps"));
  m.elapsed = cfg.number("localization", "elapsed");
  const std::size_t i0 = static_cast<std::size_t>(std::lround(m.elapsed / stride));
  const std::size_t i1 = static_cast<std::size_t>(std::lround((m.elapsed + 1.0) / stride));
  if (i1 >= states.size()) throw ConfigError("monotonicity-suite: duration must exceed localization.elapsed + 1");
  const double N = std::log(series.d[i0] / series.d[i1]);
  for (double R : cfg.numbers("localization", "radii")) {
    const double NR = std::log(d_u(graphs[i0], {}, R) / d_u(graphs[i1], {}, R));
    m.radii.push_back(R);
    m.deviation.push_back(std::abs(NR - N));
  }
  return m;
}

}  // namespace

FrozenCalibration calibrate(const ExperimentConfig& raw) {
  const ExperimentConfig cfg = raw.validated();
  const int ncal = cfg.integer("seeds", "calibration");
  std::vector<NonconcentrationObservation> obs;
  std::vector<double> growth, loc;
  for (const AxisymmetricState& s : seed_states(cfg, 0, ncal)) {
    const MonitorTrajectory m = analyse(cfg, s);
    obs.insert(obs.end(), m.nonconcentration.begin(), m.nonconcentration.end());
    growth.push_back(m.growth_ratio);
    for (std::size_t i = 0; i < m.radii.size(); ++i) loc.push_back(m.deviation[i] * m.elapsed * m.radii[i] * m.radii[i]);
  }
  const double margin = cfg.number("monitor", "margin");
  const NonconcentrationFit fit =
      fit_nonconcentration(obs, cfg.number("monitor", "K_min"), cfg.number("monitor", "K_max"), 80, margin);
  FrozenCalibration c;
  c.set("nonconcentration.C", fit.C);
  c.set("nonconcentration.K", fit.K);
  c.set("growth.C", fit_max_constant(growth, margin));
  c.set("localization.C", fit_max_constant(loc, margin));
  c.set_provenance("monotonicity-suite config " + cfg.hash() + ", calibration seeds 0.." + std::to_string(ncal - 1) +
                   " of rng " + cfg.text("seeds", "rng") + ", margin " + cfg.text("monitor", "margin"));
  return c;
}

void criterion_monitors(Workspace& ws, Recorder& rec) {
  const ExperimentConfig& cfg = ws.config(ExperimentKind::MonotonicitySuite);
  const FrozenCalibration cal = FrozenCalibration::read(ws.calibration_path());
  const double C34 = cal.get("nonconcentration.C"), K34 = cal.get("nonconcentration.K");
  const double Cg = cal.get("growth.C"), Cl = cal.get("localization.C");
  rec.note("calibration: " + cal.provenance());

  const int ncal = cfg.integer("seeds", "calibration"), nheld = cfg.integer("seeds", "held_out");
  bool nonconc = true, growth = true, bound = true, slopes = true;
  double worst34 = 0.0, worst_growth = 0.0, worst_loc = 0.0;
  double slope_min = INFINITY, slope_max = -INFINITY;
  io::CsvTable csv;
  csv.header = {"trajectory", "R", "deviation", "certified_bound"};
  io::CsvTable mon;
  mon.header = {"trajectory", "elapsed", "lhs", "rhs"};
  int t = 0;
  for (const AxisymmetricState& s : seed_states(cfg, ncal, nheld)) {
    const MonitorTrajectory m = analyse(cfg, s);
    for (const auto& o : m.nonconcentration) {
      const double rhs = C34 * std::exp(K34 * o.elapsed) * o.d0_squared;
      worst34 = std::max(worst34, o.lhs / rhs);
      nonconc = nonconc && o.lhs <= rhs;
      mon.add_numeric_row({static_cast<double>(t), o.elapsed, o.lhs, rhs});
    }
    worst_growth = std::max(worst_growth, m.growth_ratio / Cg);
    growth = growth && m.growth_ratio <= Cg;
    std::vector<double> lr, ld;
    for (std::size_t i = 0; i < m.radii.size(); ++i) {
      const double b = localization_error(m.elapsed, 0.0, m.radii[i], Cl);
      worst_loc = std::max(worst_loc, m.deviation[i] / b);
      bound = bound && m.deviation[i] <= b;
      csv.add_numeric_row({static_cast<double>(t), m.radii[i], m.deviation[i], b});
      lr.push_back(std::log(m.radii[i]));
      ld.push_back(std::log(m.deviation[i]));
    }
    const double sl = fit_slope(lr, ld);
    slope_min = std::min(slope_min, sl);
    slope_max = std::max(slope_max, sl);
    slopes = slopes && sl >= kLocalizationSlopeLo && sl <= kLocalizationSlopeHi;
    ++t;
  }
  rec.measure("nonconcentration_worst_ratio", worst34);
  rec.measure("growth_worst_ratio", worst_growth);
  rec.measure("localization_worst_ratio", worst_loc);
  rec.measure("localization_slope_min", slope_min);
  rec.measure("localization_slope_max", slope_max);
  rec.check("nonconcentration inequality (held-out)", nonconc, "lhs <= C e^{K e} d(T_-)^2 with frozen C, K");
  rec.check("growth bound (held-out)", growth, "d ratio <= frozen C");
  rec.check("localization error within certified bound", bound, "|N(Q_R) - N| <= C / ((tau - T_0) R^2), frozen C");
  rec.check("localization error decays like 1/R^2", slopes,
            "fitted slope in [" + tol_text(kLocalizationSlopeLo) + ", " +
                tol_text(kLocalizationSlopeHi) + "]");
  auto& art = ws.artifacts(ExperimentKind::MonotonicitySuite);
  art["localization_sweep.csv"] = csv.str();
  art["nonconcentration.csv"] = mon.str();
}

}  // namespace cylflow::app
