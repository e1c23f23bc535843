// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cylflow::app {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Experiment kinds understood by the runner.
enum class ExperimentKind { SpectrumTable, Neckpinch, Degenerate, LowSpherical, MonotonicitySuite, LocationSuite, JacobiSuite };
std::string to_string(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& s);
std::vector<ExperimentKind> all_kinds();

/// Sectioned key = value configuration with '#' comments.
///
/// Values are kept as text; str() emits a canonical form (sections and keys
/// sorted) so parse(str()) reproduces the same text bit for bit.
class ExperimentConfig {
 public:
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig read(const std::filesystem::path& path);
  /// Built-in configuration of a kind with every key at its default.
  static ExperimentConfig defaults(ExperimentKind kind);

  std::string str() const;
  /// FNV-1a 64 of str(), as 16 lowercase hex digits.
  std::string hash() const;

  ExperimentKind kind() const;
  bool has(const std::string& section, const std::string& key) const;
  const std::string& text(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key) const;
  int integer(const std::string& section, const std::string& key) const;
  std::vector<double> numbers(const std::string& section, const std::string& key) const;
  void set(const std::string& section, const std::string& key, const std::string& value);

  /// Fills missing keys from defaults(kind()) and rejects unknown keys.
  ExperimentConfig validated() const;

  /// Output directory, with CYLFLOW_OUTPUT_ROOT prepended to relative paths when set.
  std::filesystem::path output_dir() const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const { return sections_; }
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t h);

}  // namespace cylflow::app
