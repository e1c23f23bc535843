// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cylflow/app/config.hpp"
#include "cylflow/calibration.hpp"

namespace cylflow::app {

inline constexpr int kCriterionCount = 10;

/// Outcome of one acceptance criterion.
struct CriterionResult {
  int id = 0;
  std::string title;
  bool evaluated = false;
  bool pass = false;
  std::vector<std::pair<std::string, double>> measured;
  /// Human-readable pinned tolerance per check, e.g. "slope in [1.8, 2.2]".
  std::vector<std::pair<std::string, std::string>> tolerances;
  /// Individual checks in evaluation order.
  std::vector<std::pair<std::string, bool>> checks;
  double runtime_s = 0.0;
  double runtime_limit_s = 0.0;
  std::string note;

  double value(const std::string& name) const;
  /// "PASS|FAIL criterion <id>: <title> (<key measurements>)".
  std::string line() const;
};

/// Files produced while evaluating criteria, keyed by file name.
using Artifacts = std::map<std::string, std::string>;

struct DegenerateRun;

/// Per-run state shared by criteria: effective configs per kind, artifacts,
/// the frozen calibration and the Galerkin trajectory reused by criteria 4 and 5.
class Workspace {
 public:
  Workspace();
  ~Workspace();

  /// Replaces the configuration of its kind (validated).
  void set_config(const ExperimentConfig& cfg);
  const ExperimentConfig& config(ExperimentKind kind) const;
  Artifacts& artifacts(ExperimentKind kind) { return artifacts_[kind]; }

  /// Overrides the frozen calibration file named in the monotonicity config.
  void set_calibration_path(std::filesystem::path p) { calibration_path_ = std::move(p); }
  std::filesystem::path calibration_path() const;

  DegenerateRun& degenerate();

 private:
  std::map<ExperimentKind, ExperimentConfig> configs_;
  std::map<ExperimentKind, Artifacts> artifacts_;
  std::filesystem::path calibration_path_;
  std::unique_ptr<DegenerateRun> degenerate_;
};

ExperimentKind kind_of_criterion(int id);
std::vector<int> criteria_of(ExperimentKind kind);
std::string criterion_title(int id);
double criterion_runtime_limit(int id);

/// Evaluates one criterion; exceptions are reported as a failed result.
CriterionResult run_criterion(int id, Workspace& ws);

/// Refits the criterion-10 constants on the calibration seeds of `cfg`.
FrozenCalibration calibrate(const ExperimentConfig& cfg);

}  // namespace cylflow::app
