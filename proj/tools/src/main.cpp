// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "cylflow/app/config.hpp"
#include "cylflow/app/criteria.hpp"
#include "cylflow/app/experiments.hpp"
#include "cylflow/app/plot.hpp"
#include "cylflow/app/report.hpp"

namespace app = cylflow::app;

int main(int argc, char** argv) {
  CLI::App cli{"cylflow: mean curvature flow near cylinders"};
  cli.set_version_flag("--version", app::code_version());
  cli.require_subcommand(1);

  std::string run_config, run_out, run_cal;
  auto* run = cli.add_subcommand("run", "Run an experiment config and write its report");
  run->add_option("config", run_config, "Experiment config file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", run_out, "Output directory (overrides [output] dir)");
  run->add_option("--calibration", run_cal, "Frozen calibration file")->check(CLI::ExistingFile);

  std::string plot_dir;
  auto* plot = cli.add_subcommand("plot", "Render SVG charts for a run directory");
  plot->add_option("dir", plot_dir, "Run directory")->required()->check(CLI::ExistingDirectory);

  std::string report_dir;
  auto* report = cli.add_subcommand("report", "Print the criteria of a run directory");
  report->add_option("dir", report_dir, "Run directory")->required()->check(CLI::ExistingDirectory);

  std::string cal_config, cal_out;
  bool cal_write = false;
  auto* cal = cli.add_subcommand("calibrate", "Refit the monotonicity constants on the calibration seeds");
  cal->add_option("config", cal_config, "Monotonicity-suite config")->required()->check(CLI::ExistingFile);
  cal->add_flag("--write", cal_write, "Write the calibration file named in the config");
  cal->add_option("--to", cal_out, "Write to this path instead");

  std::string init_kind;
  auto* init = cli.add_subcommand("init", "Print the default config of an experiment kind");
  init->add_option("kind", init_kind, "Experiment kind")->required();

  CLI11_PARSE(cli, argc, argv);

  try {
    if (*run) {
      app::RunOptions opts;
      if (!run_out.empty()) opts.output_dir = run_out;
      if (!run_cal.empty()) opts.calibration = run_cal;
      const app::RunReport r = app::run_experiment(app::ExperimentConfig::read(run_config), opts);
      std::cout << r.text();
      return r.all_pass() ? 0 : 1;
    }
    if (*init) {
      std::cout << app::ExperimentConfig::defaults(app::parse_kind(init_kind)).str();
      return 0;
    }
    if (*plot) {
      for (const auto& p : app::plot_directory(plot_dir)) std::cout << p.string() << "\n";
      return 0;
    }
    if (*report) {
      const app::RunReport r = app::RunReport::read(report_dir);
      std::cout << "kind " << r.kind << " config " << r.config_hash << " version " << r.code_version << "\n"
                << r.text();
      return r.all_pass() ? 0 : 1;
    }
    if (*cal) {
      const app::ExperimentConfig cfg = app::ExperimentConfig::read(cal_config).validated();
      if (cfg.kind() != app::ExperimentKind::MonotonicitySuite)
        throw app::ConfigError("calibrate: config kind must be monotonicity-suite");
      const cylflow::FrozenCalibration c = app::calibrate(cfg);
      std::cout << c.str();
      if (cal_write || !cal_out.empty()) {
        const std::filesystem::path dest = !cal_out.empty() ? std::filesystem::path(cal_out)
                                                            : std::filesystem::path(cfg.text("calibration", "file"));
        c.write(dest);
        std::cerr << "wrote " << dest.string() << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "cylflow: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
