// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/app/criteria.hpp"

#include <cstdio>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "criteria_impl.hpp"
#include "cylflow/io.hpp"

namespace cylflow::app {
namespace {

struct CriterionInfo {
  ExperimentKind kind;
  const char* title;
  double limit_s;
  void (*fn)(Workspace&, Recorder&);
};

const CriterionInfo& info(int id) {
  static const CriterionInfo table[kCriterionCount] = {
      {ExperimentKind::SpectrumTable, "spectrum table and grid L-application", 10.0, criterion_spectrum},
      {ExperimentKind::SpectrumTable, "Hermite translation gap", 30.0, criterion_hermite_gap},
      {ExperimentKind::Neckpinch, "nondegenerate neckpinch profile", 300.0, criterion_neckpinch},
      {ExperimentKind::Degenerate, "degenerate exponential profile at gamma = 1/2", 300.0, criterion_degenerate},
      {ExperimentKind::Degenerate, "graphical radius growth", 600.0, criterion_radius},
      {ExperimentKind::LowSpherical, "low spherical flow", 120.0, criterion_low_spherical},
      {ExperimentKind::LocationSuite, "graph transformation first-order model", 60.0, criterion_transform},
      {ExperimentKind::JacobiSuite, "Jacobi field suite", 30.0, criterion_jacobi},
      {ExperimentKind::LocationSuite, "Whitney compatibility and location estimate", 120.0, criterion_whitney},
      {ExperimentKind::MonotonicitySuite, "decay-order monitors", 300.0, criterion_monitors},
  };
  if (id < 1 || id > kCriterionCount) throw std::out_of_range("criterion id " + std::to_string(id));
  return table[id - 1];
}

}  // namespace

std::string tol_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) return std::nan("");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += xs[i], my += ys[i];
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

double CriterionResult::value(const std::string& name) const {
  for (const auto& [k, v] : measured)
    if (k == name) return v;
  throw std::out_of_range("criterion " + std::to_string(id) + ": no measurement " + name);
}

std::string CriterionResult::line() const {
  std::string s = std::string(evaluated ? (pass ? "PASS" : "FAIL") : "SKIP") + " criterion " + std::to_string(id) +
                  ": " + title;
  if (!evaluated) return s;
  s += " |";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    s += " " + checks[i].first + (checks[i].second ? " ok" : " FAILED") + " [" + tolerances[i].second + "]";
    if (i + 1 < checks.size()) s += ";";
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, " | %.1f s (limit %.0f s)", runtime_s, runtime_limit_s);
  s += buf;
  if (!note.empty()) s += " | " + note;
  return s;
}

Workspace::Workspace() = default;
Workspace::~Workspace() = default;

void Workspace::set_config(const ExperimentConfig& cfg) {
  const ExperimentConfig v = cfg.validated();
  configs_[v.kind()] = v;
  if (v.kind() == ExperimentKind::Degenerate) degenerate_.reset();
}

const ExperimentConfig& Workspace::config(ExperimentKind kind) const {
  const auto it = configs_.find(kind);
  if (it != configs_.end()) return it->second;
  auto& slot = const_cast<std::map<ExperimentKind, ExperimentConfig>&>(configs_)[kind];
  slot = ExperimentConfig::defaults(kind);
  return slot;
}

std::filesystem::path Workspace::calibration_path() const {
  if (!calibration_path_.empty()) return calibration_path_;
  return config(ExperimentKind::MonotonicitySuite).text("calibration", "file");
}

DegenerateRun& Workspace::degenerate() {
  if (!degenerate_) degenerate_ = std::make_unique<DegenerateRun>(make_degenerate_run(config(ExperimentKind::Degenerate)));
  return *degenerate_;
}

ExperimentKind kind_of_criterion(int id) { return info(id).kind; }
std::string criterion_title(int id) { return info(id).title; }
double criterion_runtime_limit(int id) { return info(id).limit_s; }

std::vector<int> criteria_of(ExperimentKind kind) {
  std::vector<int> out;
  for (int id = 1; id <= kCriterionCount; ++id)
    if (info(id).kind == kind) out.push_back(id);
  return out;
}

CriterionResult run_criterion(int id, Workspace& ws) {
  const CriterionInfo& ci = info(id);
  CriterionResult r;
  r.id = id;
  r.title = ci.title;
  r.runtime_limit_s = ci.limit_s;
  r.evaluated = true;
  Recorder rec(r);
  const auto t0 = std::chrono::steady_clock::now();
  bool threw = false;
  try {
    ci.fn(ws, rec);
  } catch (const std::exception& e) {
    threw = true;
    rec.note(std::string("error: ") + e.what());
  }
  r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = !threw && !r.checks.empty();
  for (const auto& [name, ok] : r.checks) r.pass = r.pass && ok;
  r.pass = r.pass && r.runtime_s < r.runtime_limit_s;
  return r;
}

}  // namespace cylflow::app
