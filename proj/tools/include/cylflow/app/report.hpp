// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cylflow/app/criteria.hpp"

namespace cylflow::app {

/// Summary of one run covering all criteria; unevaluated ones are SKIP.
struct RunReport {
  std::string kind;
  std::string config_hash;
  std::string code_version;
  std::vector<CriterionResult> criteria;

  /// True when at least one criterion was evaluated and every evaluated one passed.
  bool all_pass() const;
  /// Deterministic JSON: runtimes are reduced to a within-limit flag.
  std::string json() const;
  /// Measured runtimes per criterion.
  std::string timing_json() const;
  /// One line per criterion.
  std::string text() const;

  static RunReport parse(const std::string& json_text);
  static RunReport read(const std::filesystem::path& dir);
};

/// Report skeleton with all criteria present and unevaluated.
RunReport empty_report(const std::string& kind, const std::string& config_hash);

/// Library version string.
std::string code_version();

}  // namespace cylflow::app
