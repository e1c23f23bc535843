// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>

#include "cylflow/app/criteria.hpp"
#include "cylflow/app/experiments.hpp"
#include "cylflow/app/plot.hpp"
#include "cylflow/io.hpp"

using namespace cylflow;
using namespace cylflow::app;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  const auto d = std::filesystem::temp_directory_path() / "cylflow_unit" / name;
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("criteria map to kinds and back") {
  for (int id = 1; id <= kCriterionCount; ++id) {
    const auto ids = criteria_of(kind_of_criterion(id));
    CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
    CHECK(criterion_runtime_limit(id) > 0);
  }
}

TEST_CASE("runs are byte-deterministic apart from timing") {
  const ExperimentConfig cfg = ExperimentConfig::defaults(ExperimentKind::JacobiSuite);
  const auto a = fresh_dir("det_a"), b = fresh_dir("det_b");
  RunOptions oa, ob;
  oa.output_dir = a;
  ob.output_dir = b;
  const RunReport ra = run_experiment(cfg, oa), rb = run_experiment(cfg, ob);
  CHECK(ra.criteria[7].pass);
  for (const char* f : {"report.json", "config.effective", "duhamel_residual.csv"})
    CHECK(io::read_file(a / f) == io::read_file(b / f));
  CHECK(ExperimentConfig::read(a / "config.effective").hash() == ra.config_hash);
  const RunReport back = RunReport::read(a);
  CHECK(back.criteria[7].runtime_s == doctest::Approx(ra.criteria[7].runtime_s));
}

TEST_CASE("line chart with an empty series still draws axes and legend") {
  LineChart c;
  c.title = "empty";
  c.series.push_back({"d_u", {}, {}});
  c.logy = true;
  const std::string svg = c.svg();
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("d_u (no data)") != std::string::npos);
  CHECK(svg.find("<polyline") == std::string::npos);
}

TEST_CASE("log axes drop non-positive samples") {
  LineChart c;
  c.logx = c.logy = true;
  c.series.push_back({"s", {0.0, 1.0, 10.0}, {1.0, -1.0, 100.0}});
  const std::string svg = c.svg();
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("nan") == std::string::npos);
}

TEST_CASE("plotting a run directory renders sweeps and rejects malformed CSV") {
  const auto d = fresh_dir("plot");
  io::write_atomic(d / "series.csv", "tau,d_u,N_u,r_delta,gaussian_area\n0,1e-3,0.5,2,1\n1,6e-4,0.5,2.1,1\n");
  io::write_atomic(d / "transform_sweep.csv", "scale,residual,product_bound,ratio\n0.1,1e-4,1e-2,0.01\n0.05,2.5e-5,5e-3,0.005\n");
  const auto files = plot_directory(d);
  CHECK(files.size() == 4);
  const std::string nsvg = io::read_file(d / "n_u.svg");
  CHECK(nsvg.find(">1/2<") != std::string::npos);
  CHECK(io::read_file(d / "transform_loglog.svg").find("fitted slope: 2.000") != std::string::npos);
  const auto bad = fresh_dir("plot_bad");
  io::write_atomic(bad / "series.csv", "tau,d_u\n0,1\n");
  CHECK_THROWS(plot_directory(bad));
}
