// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/app/config.hpp"

#include <cstdlib>
#include <sstream>

#include "cylflow/io.hpp"

namespace cylflow::app {
namespace {

using Sections = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

const std::map<ExperimentKind, std::string>& kind_names() {
  static const std::map<ExperimentKind, std::string> names = {
      {ExperimentKind::SpectrumTable, "spectrum-table"},
      {ExperimentKind::Neckpinch, "neckpinch"},
      {ExperimentKind::Degenerate, "degenerate"},
      {ExperimentKind::LowSpherical, "low-spherical"},
      {ExperimentKind::MonotonicitySuite, "monotonicity-suite"},
      {ExperimentKind::LocationSuite, "location-suite"},
      {ExperimentKind::JacobiSuite, "jacobi-suite"},
  };
  return names;
}

Sections default_sections(ExperimentKind kind) {
  const std::string name = to_string(kind);
  Sections s;
  s["experiment"] = {{"kind", name}, {"name", name}};
  s["output"] = {{"dir", "runs/" + name}};
  s["shape"] = {{"n", "2"}, {"k", "1"}};
  switch (kind) {
    case ExperimentKind::SpectrumTable:
      s["spectrum"] = {{"gamma_max", "2"}, {"shapes", "2 1, 3 1, 3 2, 4 2"}};
      s["fd"] = {{"step", "0.01"}, {"modes", "50"}, {"points", "12"}, {"rng", "7"}};
      s["hermite"] = {{"radii", "1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5"},
                      {"heldout_radii", "1.25, 1.75, 2.25, 2.75, 3.25, 3.75, 4.25, 4.75"},
                      {"amplitudes", "-10, -1, 1, 10"},
                      {"directions", "8"}};
      break;
    case ExperimentKind::Neckpinch:
      s["seed"] = {{"tau0", "15"}, {"half_width", "10"}, {"h", "0.05"}};
      s["solver"] = {{"dt", "0.01"}, {"growth", "0.25"}, {"tau_end", "50"}, {"stride", "1"}};
      s["shooting"] = {{"stage_length", "30"}, {"threshold", "0.05"}, {"bracket", "0.05"}, {"max_bisections", "80"}};
      s["profile"] = {{"window_start", "20"}, {"window_end", "50"}, {"delta", "1"}};
      break;
    case ExperimentKind::Degenerate:
      s["solver"] = {{"gamma_max", "3.5"}, {"sphere_degree", "16"}, {"spine_nodes", "64"}, {"half_width", "8"},
                     {"dt", "0.05"},        {"horizon", "35"},      {"tol", "1e-14"}};
      s["seed"] = {{"cubic", "0.008"}, {"quadratic", "0.006"}, {"resonant", "-0.001"}};
      s["profile"] = {{"window_start", "2"}, {"window_end", "20"}, {"stride", "0.5"}};
      s["radius"] = {{"delta", "1"},      {"R0", "8"},         {"growth_rate", "0.25"}, {"fit_start", "5"},
                     {"fit_end", "25"},   {"stride", "1"}};
      break;
    case ExperimentKind::LowSpherical:
      s["shape"] = {{"n", "3"}, {"k", "1"}};
      s["sphere"] = {{"degree", "8"}, {"sobolev", "6"}, {"panel", "0.1"}, {"amplitude", "0.01"}, {"tol", "1e-10"},
                     {"fit_start", "2"}, {"fit_end", "10"}, {"residual_end", "20"}};
      break;
    case ExperimentKind::MonotonicitySuite:
      s["seeds"] = {{"calibration", "5"}, {"held_out", "5"}, {"rng", "20260916"}, {"amplitude", "0.001"},
                    {"max_degree", "4"}};
      s["solver"] = {{"dt", "0.01"}, {"half_width", "10"}, {"h", "0.05"}, {"duration", "4"}, {"stride", "0.25"}};
      s["monitor"] = {{"growth_eps", "0.1"}, {"K_min", "2.05"}, {"K_max", "6"}, {"margin", "2"}};
      s["localization"] = {{"radii", "3, 4, 5, 6, 7"}, {"elapsed", "2"}};
      s["calibration"] = {{"file", "config/calibration.frozen"}};
      break;
    case ExperimentKind::LocationSuite:
      s["transform"] = {{"n", "3"}, {"k", "1"}, {"radius", "3"}, {"scale_max", "0.1"}, {"halvings", "5"}};
      s["whitney"] = {{"alpha", "0.9"}, {"C", "1000"}, {"Lambda", "10"}, {"base", "0.3"}, {"r_max", "0.06"},
                      {"r_min", "0.001"}};
      s["location"] = {{"sphere_degree", "12"}, {"spine_nodes", "12"}, {"offset", "6"}, {"window", "4"},
                       {"origin_start", "12"}, {"r_max", "0.1"}, {"r_min", "0.001"}, {"steps_per_decade", "4"},
                       {"C", "1"}, {"epsilon", "0.05"}};
      break;
    case ExperimentKind::JacobiSuite:
      s["jacobi"] = {{"mixtures", "200"}, {"rng", "11"}, {"lambda", "1/4"}, {"tau_max", "6"}};
      break;
  }
  return s;
}

}  // namespace

std::string to_string(ExperimentKind kind) { return kind_names().at(kind); }

ExperimentKind parse_kind(const std::string& s) {
  for (const auto& [k, name] : kind_names())
    if (name == s) return k;
  throw ConfigError("config: unknown experiment kind '" + s + "'");
}

std::vector<ExperimentKind> all_kinds() {
  std::vector<ExperimentKind> out;
  for (const auto& [k, name] : kind_names()) out.push_back(k);
  return out;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "config: line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ConfigError(where + ": empty section name");
      c.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    if (section.empty()) throw ConfigError(where + ": key outside of a section");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where + ": empty key");
    auto& sec = c.sections_[section];
    if (sec.count(key)) throw ConfigError(where + ": duplicate key " + section + "." + key);
    sec[key] = trim(line.substr(eq + 1));
  }
  return c;
}

ExperimentConfig ExperimentConfig::read(const std::filesystem::path& path) {
  try {
    return parse(io::read_file(path));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
  ExperimentConfig c;
  c.sections_ = default_sections(kind);
  return c;
}

std::string ExperimentConfig::str() const {
  std::string out;
  bool first = true;
  for (const auto& [name, keys] : sections_) {
    if (!first) out += '\n';
    first = false;
    out += "[" + name + "]\n";
    for (const auto& [k, v] : keys) out += k + " = " + v + "\n";
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 0xF];
  return s;
}

std::string ExperimentConfig::hash() const { return hex64(fnv1a64(str())); }

ExperimentKind ExperimentConfig::kind() const { return parse_kind(text("experiment", "kind")); }

bool ExperimentConfig::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

const std::string& ExperimentConfig::text(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  if (it == sections_.end() || !it->second.count(key))
    throw ConfigError("config: missing key " + section + "." + key);
  return it->second.at(key);
}

double ExperimentConfig::number(const std::string& section, const std::string& key) const {
  const std::string& s = text(section, key);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: " + section + "." + key + " is not a number: '" + s + "'");
  }
}

int ExperimentConfig::integer(const std::string& section, const std::string& key) const {
  const std::string& s = text(section, key);
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: " + section + "." + key + " is not an integer: '" + s + "'");
  }
}

std::vector<double> ExperimentConfig::numbers(const std::string& section, const std::string& key) const {
  std::string s = text(section, key);
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("config: " + section + "." + key + " has a non-numeric entry '" + tok + "'");
    }
  }
  return out;
}

void ExperimentConfig::set(const std::string& section, const std::string& key, const std::string& value) {
  sections_[section][key] = value;
}

ExperimentConfig ExperimentConfig::validated() const {
  const ExperimentKind k = kind();
  ExperimentConfig out = defaults(k);
  for (const auto& [sec, keys] : sections_) {
    const auto it = out.sections_.find(sec);
    if (it == out.sections_.end()) throw ConfigError("config: unknown section [" + sec + "] for " + to_string(k));
    for (const auto& [key, value] : keys) {
      if (!it->second.count(key)) throw ConfigError("config: unknown key " + sec + "." + key + " for " + to_string(k));
      it->second[key] = value;
    }
  }
  return out;
}

std::filesystem::path ExperimentConfig::output_dir() const {
  std::filesystem::path dir = text("output", "dir");
  if (const char* root = std::getenv("CYLFLOW_OUTPUT_ROOT"); root && *root && dir.is_relative())
    dir = std::filesystem::path(root) / dir;
  return dir;
}

}  // namespace cylflow::app
