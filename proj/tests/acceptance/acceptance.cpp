// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <iostream>

#include "cylflow/app/criteria.hpp"

namespace app = cylflow::app;

/// Evaluates criteria 1..10 with default configurations and prints one line each.
int main(int argc, char** argv) {
  CLI::App cli{"cylflow acceptance criteria"};
  std::string calibration;
  std::vector<int> only;
  cli.add_option("--calibration", calibration, "Frozen calibration file")->check(CLI::ExistingFile);
  cli.add_option("--only", only, "Evaluate only these criteria");
  CLI11_PARSE(cli, argc, argv);

  app::Workspace ws;
  if (!calibration.empty()) ws.set_calibration_path(calibration);
  int failed = 0;
  for (int id = 1; id <= app::kCriterionCount; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const app::CriterionResult r = app::run_criterion(id, ws);
    std::cout << r.line() << std::endl;
    if (!r.pass) ++failed;
  }
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " criteria FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
