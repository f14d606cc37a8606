#include "superosc/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace superosc::cli {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kMargin = 60.0;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

void write_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
               const std::vector<PlotSeries>& series) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("plot series '" + s.label + "' is ragged");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
  if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;

  const double plot_w = kWidth - 2.0 * kMargin;
  const double plot_h = kHeight - 2.0 * kMargin;
  const auto px = [&](double x) { return kMargin + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  const auto py = [&](double y) { return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * plot_h; };

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kMargin / 2 << "\" text-anchor=\"middle\">" << title
      << "</text>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">" << x_label
      << "</text>\n";
  out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 15 << "\" text-anchor=\"middle\">"
      << short_number(x_lo) << "</text>\n";
  out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 15 << "\" text-anchor=\"middle\">"
      << short_number(x_hi) << "</text>\n";
  out << "<text x=\"" << kMargin - 5 << "\" y=\"" << kHeight - kMargin << "\" text-anchor=\"end\">"
      << short_number(y_lo) << "</text>\n";
  out << "<text x=\"" << kMargin - 5 << "\" y=\"" << kMargin + 4 << "\" text-anchor=\"end\">" << short_number(y_hi)
      << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\"";
    if (s.dashed) out << " stroke-dasharray=\"5,3\"";
    out << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(s.x[i]), py(s.y[i]));
      out << buf;
    }
    out << "\"/>\n";
    out << "<text x=\"" << kWidth - kMargin - 5 << "\" y=\"" << kMargin + 16 + 14 * k
        << "\" text-anchor=\"end\" fill=\"" << color << "\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace superosc::cli
