// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace cylflow {

/// One sample of the nonconcentration monitor: weighted distance integral at
/// elapsed time tau - T_- against d_u(T_-)^2.
struct NonconcentrationObservation {
  double elapsed = 0.0;
  double lhs = 0.0;
  double d0_squared = 0.0;
};

struct NonconcentrationFit {
  double C = 0.0;
  double K = 0.0;
};

/// Grid search of K in [K_min, K_max]; for each K the smallest admissible C is
/// max lhs / (e^{K elapsed} d0^2). The K minimizing C e^{K E} at the largest
/// elapsed time E is kept, and C is multiplied by `margin`.
NonconcentrationFit fit_nonconcentration(const std::vector<NonconcentrationObservation>& obs, double K_min = 2.05,
                                         double K_max = 6.0, int steps = 80, double margin = 2.0);

/// margin * max(values).
double fit_max_constant(const std::vector<double>& values, double margin = 2.0);

/// Frozen key = value constants with a provenance line.
class FrozenCalibration {
 public:
  static FrozenCalibration parse(const std::string& text);
  static FrozenCalibration read(const std::filesystem::path& path);
  std::string str() const;
  void write(const std::filesystem::path& path) const;

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  /// Throws std::out_of_range for missing keys.
  double get(const std::string& key) const;
  void set(const std::string& key, double value) { values_[key] = value; }
  const std::map<std::string, double>& values() const { return values_; }
  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

 private:
  std::map<std::string, double> values_;
  std::string provenance_;
};

}  // namespace cylflow
