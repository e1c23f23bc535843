// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/app/report.hpp"

#include <json.hpp>

#include "cylflow/io.hpp"

#ifndef CYLFLOW_VERSION
#define CYLFLOW_VERSION "unknown"
#endif

namespace cylflow::app {

using nlohmann::ordered_json;

std::string code_version() { return CYLFLOW_VERSION; }

bool RunReport::all_pass() const {
  bool any = false;
  for (const CriterionResult& c : criteria) {
    if (!c.evaluated) continue;
    any = true;
    if (!c.pass) return false;
  }
  return any;
}

std::string RunReport::json() const {
  ordered_json j;
  j["kind"] = kind;
  j["config_hash"] = config_hash;
  j["code_version"] = code_version;
  j["all_pass"] = all_pass();
  ordered_json arr = ordered_json::array();
  for (const CriterionResult& c : criteria) {
    ordered_json e;
    e["id"] = c.id;
    e["title"] = c.title;
    e["status"] = !c.evaluated ? "SKIP" : (c.pass ? "PASS" : "FAIL");
    ordered_json measured = ordered_json::object();
    for (const auto& [k, v] : c.measured) measured[k] = io::format_double(v);
    e["measured"] = measured;
    ordered_json checks = ordered_json::array();
    for (std::size_t i = 0; i < c.checks.size(); ++i) {
      ordered_json ck;
      ck["name"] = c.checks[i].first;
      ck["ok"] = c.checks[i].second;
      ck["tolerance"] = i < c.tolerances.size() ? c.tolerances[i].second : "";
      checks.push_back(ck);
    }
    e["checks"] = checks;
    e["runtime_limit_s"] = c.runtime_limit_s;
    e["within_runtime"] = c.evaluated && c.runtime_s < c.runtime_limit_s;
    e["note"] = c.note;
    arr.push_back(e);
  }
  j["criteria"] = arr;
  return j.dump(2) + "\n";
}

std::string RunReport::timing_json() const {
  ordered_json j;
  j["config_hash"] = config_hash;
  ordered_json arr = ordered_json::array();
  for (const CriterionResult& c : criteria) {
    if (!c.evaluated) continue;
    arr.push_back({{"id", c.id}, {"runtime_s", c.runtime_s}, {"runtime_limit_s", c.runtime_limit_s}});
  }
  j["criteria"] = arr;
  return j.dump(2) + "\n";
}

std::string RunReport::text() const {
  std::string out;
  for (const CriterionResult& c : criteria) out += c.line() + "\n";
  return out;
}

RunReport RunReport::parse(const std::string& json_text) {
  const ordered_json j = ordered_json::parse(json_text);
  RunReport r;
  r.kind = j.at("kind").get<std::string>();
  r.config_hash = j.at("config_hash").get<std::string>();
  r.code_version = j.at("code_version").get<std::string>();
  for (const auto& e : j.at("criteria")) {
    CriterionResult c;
    c.id = e.at("id").get<int>();
    c.title = e.at("title").get<std::string>();
    const std::string status = e.at("status").get<std::string>();
    c.evaluated = status != "SKIP";
    c.pass = status == "PASS";
    for (const auto& [k, v] : e.at("measured").items()) c.measured.emplace_back(k, std::stod(v.get<std::string>()));
    for (const auto& ck : e.at("checks")) {
      c.checks.emplace_back(ck.at("name").get<std::string>(), ck.at("ok").get<bool>());
      c.tolerances.emplace_back(ck.at("name").get<std::string>(), ck.at("tolerance").get<std::string>());
    }
    c.runtime_limit_s = e.at("runtime_limit_s").get<double>();
    c.note = e.at("note").get<std::string>();
    r.criteria.push_back(std::move(c));
  }
  return r;
}

RunReport RunReport::read(const std::filesystem::path& dir) {
  RunReport r = parse(io::read_file(dir / "report.json"));
  const auto timing = dir / "timing.json";
  if (std::filesystem::exists(timing)) {
    const ordered_json t = ordered_json::parse(io::read_file(timing));
    for (const auto& e : t.at("criteria"))
      for (CriterionResult& c : r.criteria)
        if (c.id == e.at("id").get<int>()) c.runtime_s = e.at("runtime_s").get<double>();
  }
  return r;
}

RunReport empty_report(const std::string& kind, const std::string& config_hash) {
  RunReport r;
  r.kind = kind;
  r.config_hash = config_hash;
  r.code_version = code_version();
  for (int id = 1; id <= kCriterionCount; ++id) {
    CriterionResult c;
    c.id = id;
    c.title = criterion_title(id);
    c.runtime_limit_s = criterion_runtime_limit(id);
    r.criteria.push_back(std::move(c));
  }
  return r;
}

}  // namespace cylflow::app
