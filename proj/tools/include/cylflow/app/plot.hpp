// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace cylflow::app {

struct Series {
  std::string name;
  std::vector<double> x, y;
};

struct Gridline {
  double value = 0.0;
  std::string label;
};

/// Static SVG line chart; non-positive values are dropped on log axes.
struct LineChart {
  std::string title, xlabel, ylabel;
  bool logx = false, logy = false;
  std::vector<Series> series;
  std::vector<Gridline> hlines;
  /// Free text drawn in the upper left of the plot area (e.g. a fitted slope).
  std::string annotation;
  /// Optional minimum y-range (data coordinates), applied before padding.
  double ymin_hint = 0.0, ymax_hint = 0.0;
  bool has_y_hint = false;

  std::string svg(int width = 720, int height = 440) const;
};

/// Emits the SVG charts for every known CSV in `dir`; returns the files written.
std::vector<std::filesystem::path> plot_directory(const std::filesystem::path& dir);

}  // namespace cylflow::app
