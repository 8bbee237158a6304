#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "quasifrag/errors.hpp"

namespace quasifrag {

// %.12g rendering used for every floating-point value we emit.
std::string format_g12(double v);

// Writes content to path via a temp file + rename so an interrupted run
// never leaves a partial file at the target.
void atomic_write(const std::filesystem::path& path, const std::string& content);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_csv() const;
  std::string to_json() const;  // array of column->value objects, key order fixed
};

// One plotted curve: x/y samples plus a legend label (may be empty).
struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string label;
};

// Self-contained deterministic SVG line plot: fixed canvas, axes, ticks and
// legend; no timestamps, byte-identical across runs for identical input.
// NaN/Inf data is rejected.
std::string plot_svg(const std::vector<Series>& series,
                     const std::string& x_label = "x",
                     const std::string& y_label = "y");

}  // namespace quasifrag
