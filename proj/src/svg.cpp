#include "eraser/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace eraser {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 64.0, kRight = 16.0, kTop = 28.0, kBottom = 48.0;
constexpr const char* kSeriesColor[2] = {"#1f77b4", "#d62728"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Range {
  double lo = 0.0, hi = 1.0;
  double scale(double v, double px_lo, double px_hi) const {
    const double t = (hi > lo) ? (v - lo) / (hi - lo) : 0.5;
    return px_lo + t * (px_hi - px_lo);
  }
};

Range pad(double lo, double hi) {
  if (!(hi > lo)) {
    const double eps = (lo == 0.0) ? 1.0 : std::abs(lo) * 0.1;
    return {lo - eps, hi + eps};
  }
  const double margin = 0.05 * (hi - lo);
  return {lo - margin, hi + margin};
}

}  // namespace

std::string emit_svg(const Table& table, const PlotSpec& spec) {
  if (table.rows.empty()) {
    throw std::invalid_argument("emit_svg: empty table");
  }
  if (spec.y_cols.empty() || spec.y_cols.size() > 2) {
    throw std::invalid_argument("emit_svg: need one or two y columns");
  }
  for (std::size_t c : spec.y_cols) {
    if (c >= table.columns.size()) {
      throw std::invalid_argument("emit_svg: y column out of range");
    }
  }
  if (spec.x_col >= table.columns.size()) {
    throw std::invalid_argument("emit_svg: x column out of range");
  }

  auto x_of = [&](const std::vector<double>& row) {
    const double x = row[spec.x_col];
    return spec.log_x ? std::log10(x) : x;
  };

  double x_lo = x_of(table.rows.front()), x_hi = x_lo;
  double y_lo = table.rows.front()[spec.y_cols[0]], y_hi = y_lo;
  for (const auto& row : table.rows) {
    x_lo = std::min(x_lo, x_of(row));
    x_hi = std::max(x_hi, x_of(row));
    for (std::size_t c : spec.y_cols) {
      y_lo = std::min(y_lo, row[c]);
      y_hi = std::max(y_hi, row[c]);
    }
  }
  const Range xr = pad(x_lo, x_hi);
  const Range yr = pad(y_lo, y_hi);

  auto px = [&](double x) { return xr.scale(x, kLeft, kWidth - kRight); };
  auto py = [&](double y) { return yr.scale(y, kHeight - kBottom, kTop); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
         "height=\"400\" viewBox=\"0 0 640 400\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" "
         "fill=\"#ffffff\"/>\n";
  svg += "<text x=\"320\" y=\"18\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">" +
         spec.title + "</text>\n";

  // Axes.
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kHeight - kBottom) +
         "\" x2=\"" + fmt(kWidth - kRight) + "\" y2=\"" +
         fmt(kHeight - kBottom) + "\" stroke=\"#000000\"/>\n";
  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
         fmt(kLeft) + "\" y2=\"" + fmt(kHeight - kBottom) +
         "\" stroke=\"#000000\"/>\n";

  // Five ticks per axis.
  for (int k = 0; k <= 4; ++k) {
    const double tx = xr.lo + (xr.hi - xr.lo) * k / 4.0;
    const double ty = yr.lo + (yr.hi - yr.lo) * k / 4.0;
    const double xpx = px(tx);
    const double ypx = py(ty);
    svg += "<line x1=\"" + fmt(xpx) + "\" y1=\"" + fmt(kHeight - kBottom) +
           "\" x2=\"" + fmt(xpx) + "\" y2=\"" + fmt(kHeight - kBottom + 5) +
           "\" stroke=\"#000000\"/>\n";
    const std::string xlab =
        spec.log_x ? ("1e" + fmt_tick(tx)) : fmt_tick(tx);
    svg += "<text x=\"" + fmt(xpx) + "\" y=\"" + fmt(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           xlab + "</text>\n";
    svg += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(ypx) +
           "\" x2=\"" + fmt(kLeft) + "\" y2=\"" + fmt(ypx) +
           "\" stroke=\"#000000\"/>\n";
    svg += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(ypx + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">" +
           fmt_tick(ty) + "</text>\n";
  }

  // Series.
  for (std::size_t si = 0; si < spec.y_cols.size(); ++si) {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += kSeriesColor[si];
    svg += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      if (r) svg += ' ';
      svg += fmt(px(x_of(table.rows[r]))) + ',' +
             fmt(py(table.rows[r][spec.y_cols[si]]));
    }
    svg += "\"/>\n";
    // Legend swatch and label.
    const double ly = kTop + 14.0 + 16.0 * static_cast<double>(si);
    svg += "<line x1=\"" + fmt(kWidth - 150) + "\" y1=\"" + fmt(ly - 4) +
           "\" x2=\"" + fmt(kWidth - 126) + "\" y2=\"" + fmt(ly - 4) +
           "\" stroke=\"";
    svg += kSeriesColor[si];
    svg += "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + fmt(kWidth - 120) + "\" y=\"" + fmt(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" +
           table.columns[spec.y_cols[si]] + "</text>\n";
  }

  svg += "<text x=\"320\" y=\"" + fmt(kHeight - 10) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" +
         spec.x_label + "</text>\n";
  svg += "<text x=\"16\" y=\"200\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 16 200)\">" +
         spec.y_label + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace eraser
