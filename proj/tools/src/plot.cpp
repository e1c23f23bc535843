// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/app/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "cylflow/app/config.hpp"
#include "cylflow/io.hpp"
#include "cylflow/spectrum.hpp"

namespace cylflow::app {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v, bool log) {
  char buf[32];
  if (log) {
    std::snprintf(buf, sizeof buf, "1e%d", static_cast<int>(std::lround(v)));
  } else {
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  }
  return buf;
}

std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  std::vector<double> t;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) t.push_back(v);
  return t;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> t;
  const int a = static_cast<int>(std::ceil(lo - 1e-9)), b = static_cast<int>(std::floor(hi + 1e-9));
  const int stride = std::max(1, (b - a + 1) / 8);
  for (int e = a; e <= b; e += stride) t.push_back(e);
  return t;
}

}  // namespace

std::string LineChart::svg(int width, int height) const {
  const double ml = 80, mr = 190, mt = 40, mb = 56;
  const double pw = width - ml - mr, ph = height - mt - mb;
  auto tx = [&](double v) { return logx ? std::log10(v) : v; };
  auto ty = [&](double v) { return logy ? std::log10(v) : v; };
  auto ok = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!logx || x > 0) && (!logy || y > 0);
  };
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const Series& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
      if (ok(s.x[i], s.y[i])) {
        x0 = std::min(x0, tx(s.x[i]));
        x1 = std::max(x1, tx(s.x[i]));
        y0 = std::min(y0, ty(s.y[i]));
        y1 = std::max(y1, ty(s.y[i]));
      }
  if (has_y_hint && (!logy || (ymin_hint > 0 && ymax_hint > 0))) {
    y0 = std::min(y0, ty(ymin_hint));
    y1 = std::max(y1, ty(ymax_hint));
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1;
  if (!std::isfinite(y0)) y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double v) { return ml + (v - x0) / (x1 - x0) * pw; };
  auto py = [&](double v) { return mt + (y1 - v) / (y1 - y0) * ph; };

  std::string o;
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
       std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += "<text x=\"" + num(ml + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + esc(title) + "</text>\n";
  o += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : logx ? log_ticks(x0, x1) : linear_ticks(x0, x1)) {
    o += "<line x1=\"" + num(px(t)) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(px(t)) + "\" y2=\"" +
         num(mt + ph + 5) + "\" stroke=\"black\"/>\n";
    o += "<text x=\"" + num(px(t)) + "\" y=\"" + num(mt + ph + 18) + "\" text-anchor=\"middle\">" +
         tick_label(t, logx) + "</text>\n";
  }
  for (double t : logy ? log_ticks(y0, y1) : linear_ticks(y0, y1)) {
    o += "<line x1=\"" + num(ml - 5) + "\" y1=\"" + num(py(t)) + "\" x2=\"" + num(ml) + "\" y2=\"" + num(py(t)) +
         "\" stroke=\"black\"/>\n";
    o += "<text x=\"" + num(ml - 8) + "\" y=\"" + num(py(t) + 4) + "\" text-anchor=\"end\">" + tick_label(t, logy) +
         "</text>\n";
  }
  o += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(height - 12.0) + "\" text-anchor=\"middle\">" + esc(xlabel) +
       "</text>\n";
  o += "<text x=\"18\" y=\"" + num(mt + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
       num(mt + ph / 2) + ")\">" + esc(ylabel) + "</text>\n";
  for (const Gridline& g : hlines) {
    if (logy && g.value <= 0) continue;
    const double v = ty(g.value);
    if (v < y0 || v > y1) continue;
    o += "<line x1=\"" + num(ml) + "\" y1=\"" + num(py(v)) + "\" x2=\"" + num(ml + pw) + "\" y2=\"" + num(py(v)) +
         "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
    o += "<text x=\"" + num(ml + pw - 4) + "\" y=\"" + num(py(v) - 3) + "\" text-anchor=\"end\" fill=\"#666666\">" +
         esc(g.label) + "</text>\n";
  }
  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
      if (ok(s.x[i], s.y[i])) pts += num(px(tx(s.x[i]))) + "," + num(py(ty(s.y[i]))) + " ";
    if (pts.empty()) continue;
    o += "<polyline fill=\"none\" stroke=\"" + std::string(kPalette[si % 8]) + "\" stroke-width=\"1.6\" points=\"" +
         pts + "\"/>\n";
  }
  // Legend.
  const double lx = ml + pw + 14;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const double ly = mt + 10 + 18.0 * static_cast<double>(si);
    o += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 22) + "\" y2=\"" + num(ly) +
         "\" stroke=\"" + std::string(kPalette[si % 8]) + "\" stroke-width=\"2\"/>\n";
    const bool empty = series[si].x.empty();
    o += "<text x=\"" + num(lx + 28) + "\" y=\"" + num(ly + 4) + "\">" + esc(series[si].name) +
         (empty ? " (no data)" : "") + "</text>\n";
  }
  if (!annotation.empty())
    o += "<text x=\"" + num(ml + 8) + "\" y=\"" + num(mt + 16) + "\" fill=\"#333333\">" + esc(annotation) +
         "</text>\n";
  o += "</svg>\n";
  return o;
}

namespace {

io::CsvTable read_csv(const std::filesystem::path& p) { return io::CsvTable::parse(io::read_file(p)); }

std::string slope_note(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (x[i] > 0 && y[i] > 0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  if (lx.size() < 2) return "fitted slope: n/a";
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
  char buf[64];
  std::snprintf(buf, sizeof buf, "fitted slope: %.3f", sxy / sxx);
  return buf;
}

std::vector<Gridline> spectrum_lines(const CylinderShape& shape) {
  std::set<Rational> values;
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; j <= 8; ++j) {
      const Rational g = eigenvalue_exact(shape, i, j);
      if (g <= Rational(3)) values.insert(g);
    }
  std::vector<Gridline> out;
  for (const Rational& g : values) out.push_back({g.to_double(), g.str()});
  return out;
}

CylinderShape shape_of(const std::filesystem::path& dir) {
  const auto p = dir / "config.effective";
  if (std::filesystem::exists(p)) {
    const ExperimentConfig c = ExperimentConfig::read(p);
    if (c.has("shape", "n") && c.has("shape", "k")) return CylinderShape::make(c.integer("shape", "n"), c.integer("shape", "k"));
  }
  return CylinderShape::make(2, 1);
}

}  // namespace

std::vector<std::filesystem::path> plot_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error("plot: not a directory: " + dir.string());
  std::vector<std::filesystem::path> written;
  auto emit = [&](const std::string& name, const LineChart& c) {
    const auto p = dir / name;
    io::write_atomic(p, c.svg());
    written.push_back(p);
  };
  if (std::filesystem::exists(dir / "series.csv")) {
    const io::CsvTable t = read_csv(dir / "series.csv");
    const auto tau = t.numeric_column("tau");
    LineChart d{"Gaussian distance d_u", "tau", "d_u", false, true, {{"d_u", tau, t.numeric_column("d_u")}}, {}, ""};
    emit("d_u.svg", d);
    LineChart n{"Decay order N_u", "tau", "N_u", false, false, {{"N_u", tau, t.numeric_column("N_u")}},
                spectrum_lines(shape_of(dir)), ""};
    n.has_y_hint = true;
    n.ymin_hint = -0.25;
    n.ymax_hint = 0.75;
    emit("n_u.svg", n);
    LineChart r{"Graphical radius r_delta", "tau", "r_delta", false, true,
                {{"r_delta", tau, t.numeric_column("r_delta")}}, {}, ""};
    emit("r_delta.svg", r);
  }
  struct Sweep {
    const char* file;
    const char* svg;
    const char* title;
    const char* x;
    std::vector<const char*> ys;
  };
  const std::vector<Sweep> sweeps = {
      {"location_sweep.csv", "location_loglog.svg", "Location estimate LHS", "r", {"lhs", "rhs"}},
      {"whitney_sweep.csv", "whitney_loglog.svg", "Whitney residuals", "r",
       {"residual0", "residual1", "residual2", "residual3"}},
      {"transform_sweep.csv", "transform_loglog.svg", "First-order transform residual", "scale", {"residual", "product_bound"}},
      {"localization_sweep.csv", "localization_loglog.svg", "Localization error |N(Q_R) - N|", "R",
       {"deviation", "certified_bound"}},
  };
  for (const Sweep& s : sweeps) {
    if (!std::filesystem::exists(dir / s.file)) continue;
    const io::CsvTable t = read_csv(dir / s.file);
    LineChart c;
    c.title = s.title;
    c.xlabel = s.x;
    c.ylabel = "value";
    c.logx = c.logy = true;
    const auto x = t.numeric_column(s.x);
    const bool grouped = std::find(t.header.begin(), t.header.end(), "trajectory") != t.header.end();
    for (const char* y : s.ys) {
      const auto ys = t.numeric_column(y);
      if (!grouped) {
        c.series.push_back({y, x, ys});
        continue;
      }
      const auto traj = t.numeric_column("trajectory");
      std::map<double, Series> by;
      for (std::size_t i = 0; i < traj.size(); ++i) {
        Series& g = by[traj[i]];
        if (g.name.empty()) g.name = std::string(y) + " #" + tick_label(traj[i], false);
        g.x.push_back(x[i]);
        g.y.push_back(ys[i]);
      }
      for (auto& [id, g] : by) c.series.push_back(std::move(g));
    }
    c.annotation = std::string(s.ys.front()) + " " + slope_note(x, t.numeric_column(s.ys.front()));
    emit(s.svg, c);
  }
  if (std::filesystem::exists(dir / "profile.csv")) {
    const io::CsvTable t = read_csv(dir / "profile.csv");
    LineChart c{"Relative profile error", "tau", "relative error", false, true,
                {{"relative_error", t.numeric_column("tau"), t.numeric_column("relative_error")}}, {{0.1, "0.1"}}, ""};
    emit("profile_error.svg", c);
  }
  if (std::filesystem::exists(dir / "decay.csv")) {
    const io::CsvTable t = read_csv(dir / "decay.csv");
    const auto tau = t.numeric_column("tau");
    LineChart c{"Low spherical flow", "tau", "norm", false, true,
                {{"||w||", tau, t.numeric_column("norm")}, {"correction", tau, t.numeric_column("correction")}}, {}, ""};
    emit("low_spherical.svg", c);
  }
  return written;
}

}  // namespace cylflow::app
