// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>

#include "cylflow/app/config.hpp"
#include "cylflow/app/report.hpp"

namespace cylflow::app {

struct RunOptions {
  /// Overrides the configured output directory.
  std::optional<std::filesystem::path> output_dir;
  /// Overrides the frozen calibration file.
  std::optional<std::filesystem::path> calibration;
  /// Skip writing files.
  bool dry_run = false;
};

/// Runs every criterion of the config kind and writes config.effective,
/// report.json, timing.json and the artifacts into the output directory.
RunReport run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

}  // namespace cylflow::app
