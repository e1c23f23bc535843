// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cylflow/io.hpp"

namespace cylflow {

NonconcentrationFit fit_nonconcentration(const std::vector<NonconcentrationObservation>& obs, double K_min,
                                         double K_max, int steps, double margin) {
  if (obs.empty()) throw std::invalid_argument("fit_nonconcentration: no observations");
  double E = 0.0;
  for (const auto& o : obs) E = std::max(E, o.elapsed);
  NonconcentrationFit best;
  double best_score = std::numeric_limits<double>::infinity();
  for (int s = 0; s <= steps; ++s) {
    const double K = K_min + (K_max - K_min) * s / steps;
    double C = 0.0;
    for (const auto& o : obs) {
      if (!(o.d0_squared > 0.0)) throw std::invalid_argument("fit_nonconcentration: d(T_-) must be positive");
      C = std::max(C, o.lhs / (std::exp(K * o.elapsed) * o.d0_squared));
    }
    const double score = C * std::exp(K * E);
    if (score < best_score) {
      best_score = score;
      best = {C, K};
    }
  }
  best.C *= margin;
  return best;
}

double fit_max_constant(const std::vector<double>& values, double margin) {
  if (values.empty()) throw std::invalid_argument("fit_max_constant: no values");
  return margin * *std::max_element(values.begin(), values.end());
}

FrozenCalibration FrozenCalibration::parse(const std::string& text) {
  FrozenCalibration c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind("# provenance:", 0) == 0) {
      c.provenance_ = line.substr(13);
      c.provenance_.erase(0, c.provenance_.find_first_not_of(' '));
      continue;
    }
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos)
      throw std::runtime_error("calibration: line " + std::to_string(lineno) + " is not key = value");
    c.values_[trim(line.substr(0, eq))] = std::stod(trim(line.substr(eq + 1)));
  }
  return c;
}

FrozenCalibration FrozenCalibration::read(const std::filesystem::path& path) { return parse(io::read_file(path)); }

std::string FrozenCalibration::str() const {
  std::string out = "# Frozen calibration constants; refit only with `cylflow calibrate <config> --write`.\n";
  if (!provenance_.empty()) out += "# provenance: " + provenance_ + "\n";
  for (const auto& [k, v] : values_) out += k + " = " + io::format_double(v) + "\n";
  return out;
}

void FrozenCalibration::write(const std::filesystem::path& path) const { io::write_atomic(path, str()); }

double FrozenCalibration::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw std::out_of_range("calibration: missing key " + key);
  return it->second;
}

}  // namespace cylflow
