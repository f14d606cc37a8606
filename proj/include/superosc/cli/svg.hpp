#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace superosc::cli {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

/// Bare line plot: frame, axis ranges as text, one polyline per series.
void write_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
               const std::vector<PlotSeries>& series);

}  // namespace superosc::cli
