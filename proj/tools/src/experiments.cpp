// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/app/experiments.hpp"

#include "cylflow/app/criteria.hpp"
#include "cylflow/io.hpp"

namespace cylflow::app {

RunReport run_experiment(const ExperimentConfig& raw, const RunOptions& opts) {
  const ExperimentConfig cfg = raw.validated();
  Workspace ws;
  ws.set_config(cfg);
  if (opts.calibration) ws.set_calibration_path(*opts.calibration);
  RunReport report = empty_report(to_string(cfg.kind()), cfg.hash());
  for (int id : criteria_of(cfg.kind())) report.criteria[static_cast<std::size_t>(id - 1)] = run_criterion(id, ws);
  if (opts.dry_run) return report;
  const std::filesystem::path dir = opts.output_dir ? *opts.output_dir : cfg.output_dir();
  std::filesystem::create_directories(dir);
  io::write_atomic(dir / "config.effective", cfg.str());
  for (const auto& [name, content] : ws.artifacts(cfg.kind())) io::write_atomic(dir / name, content);
  io::write_atomic(dir / "report.json", report.json());
  io::write_atomic(dir / "timing.json", report.timing_json());
  return report;
}

}  // namespace cylflow::app
