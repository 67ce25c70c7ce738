#pragma once

#include <string>
#include <vector>

#include "eraser/table.hpp"

namespace eraser {

/// Minimal line-plot description: which table column supplies x and which
/// (at most two) supply y series.
struct PlotSpec {
  std::size_t x_col = 0;
  std::vector<std::size_t> y_cols;
  std::string title;
  std::string x_label;
  std::string y_label;
  /// Plot log10(x) when the x span covers several decades of positive values.
  bool log_x = false;
};

/// Deterministic standalone SVG line plot. Purely presentational; throws
/// std::invalid_argument on an empty table or out-of-range columns.
std::string emit_svg(const Table& table, const PlotSpec& spec);

}  // namespace eraser
