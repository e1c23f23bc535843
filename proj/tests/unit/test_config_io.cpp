// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "cylflow/app/config.hpp"
#include "cylflow/app/report.hpp"
#include "cylflow/calibration.hpp"
#include "cylflow/io.hpp"

using namespace cylflow;
using namespace cylflow::app;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "cylflow_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("config canonical form round-trips bit for bit") {
  for (ExperimentKind k : all_kinds()) {
    const ExperimentConfig c = ExperimentConfig::defaults(k);
    const std::string text = c.str();
    CHECK(ExperimentConfig::parse(text).str() == text);
    CHECK(ExperimentConfig::parse(text) == c);
    CHECK(c.validated() == c);
  }
}

TEST_CASE("config hash is stable under comments and key order") {
  const auto a = ExperimentConfig::parse("[experiment]\nkind = neckpinch\n[seed]\ntau0 = 15\nh = 0.05\n");
  const auto b = ExperimentConfig::parse("# note\n[seed]\nh = 0.05   # step\ntau0 = 15\n\n[experiment]\nkind = neckpinch\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash().size() == 16);
  auto c = a;
  c.set("seed", "tau0", "16");
  CHECK(c.hash() != a.hash());
}

TEST_CASE("FNV-1a 64 reference values") {
  CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
  CHECK(hex64(fnv1a64("a")) == "af63dc4c8601ec8c");
}

TEST_CASE("config validation rejects unknown keys and kinds") {
  CHECK_THROWS_AS(ExperimentConfig::parse("[experiment]\nkind = nope\n").validated(), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("[experiment]\nkind = neckpinch\n[seed]\nbogus = 1\n").validated(), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::parse("[experiment]\nkind = neckpinch\n[seed\n"), ConfigError);
  const auto v = ExperimentConfig::parse("[experiment]\nkind = neckpinch\n[seed]\ntau0 = 20\n").validated();
  CHECK(v.number("seed", "tau0") == 20.0);
  CHECK(v.number("solver", "dt") == 0.01);
}

TEST_CASE("config numbers parse lists") {
  const auto c = ExperimentConfig::defaults(ExperimentKind::MonotonicitySuite);
  CHECK(c.numbers("localization", "radii") == std::vector<double>{3, 4, 5, 6, 7});
}

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(io::format_double(x)) == x);
}

TEST_CASE("atomic writes replace content and leave no temporaries") {
  const auto p = scratch("atomic.txt");
  io::write_atomic(p, "first");
  io::write_atomic(p, "second");
  CHECK(io::read_file(p) == "second");
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(p.parent_path()))
    if (e.path().filename().string().rfind("atomic.txt", 0) == 0) ++files;
  CHECK(files == 1);
}

TEST_CASE("CSV tables round-trip and reject unknown columns") {
  io::CsvTable t;
  t.header = {"tau", "d_u"};
  t.add_numeric_row({0.5, 1e-3});
  t.add_numeric_row({1.0, 2e-4});
  const io::CsvTable u = io::CsvTable::parse(t.str());
  CHECK(u.numeric_column("d_u") == std::vector<double>{1e-3, 2e-4});
  CHECK_THROWS(u.column("missing"));
}

TEST_CASE("frozen calibration parses, keeps provenance and rejects junk") {
  FrozenCalibration c;
  c.set("growth.C", 2.5);
  c.set("nonconcentration.K", 2.05);
  c.set_provenance("unit test");
  const FrozenCalibration d = FrozenCalibration::parse(c.str());
  CHECK(d.get("growth.C") == 2.5);
  CHECK(d.provenance() == "unit test");
  CHECK(d.str() == c.str());
  CHECK_THROWS_AS(d.get("missing"), std::out_of_range);
  CHECK_THROWS(FrozenCalibration::parse("just words\n"));
}

TEST_CASE("fit_nonconcentration covers every observation") {
  std::vector<NonconcentrationObservation> obs{{0.5, 2.0, 1.0}, {1.0, 30.0, 1.0}, {2.0, 100.0, 1.0}};
  const NonconcentrationFit f = fit_nonconcentration(obs, 2.05, 6.0, 80, 1.0);
  for (const auto& o : obs) CHECK(o.lhs <= f.C * std::exp(f.K * o.elapsed) * o.d0_squared * (1 + 1e-12));
  CHECK(fit_max_constant({1.0, 3.0, 2.0}, 2.0) == 6.0);
}

TEST_CASE("report JSON is deterministic and round-trips statuses") {
  RunReport r = empty_report("jacobi-suite", "0123456789abcdef");
  r.criteria[7].evaluated = true;
  r.criteria[7].pass = true;
  r.criteria[7].measured = {{"residual", 1e-12}};
  r.criteria[7].checks = {{"residual small", true}};
  r.criteria[7].tolerances = {{"residual small", "<= 1e-09"}};
  r.criteria[7].runtime_s = 0.123;
  RunReport s = r;
  s.criteria[7].runtime_s = 9.0;
  CHECK(r.json() == s.json());
  CHECK(r.timing_json() != s.timing_json());
  const RunReport back = RunReport::parse(r.json());
  CHECK(back.all_pass());
  CHECK(back.criteria[7].line().rfind("PASS criterion 8", 0) == 0);
  CHECK(back.criteria[0].line().rfind("SKIP criterion 1", 0) == 0);
  CHECK(back.json() == r.json());
}
