#include "fockmarket/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "fockmarket/csv.hpp"

namespace fockmarket {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 30;
constexpr double kBottom = 45;

constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
};

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = 0;
  double hi = 1;
  double span() const { return hi - lo; }
};

Range padded_range(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = std::max(1.0, std::abs(lo)) * 0.5;
    return {lo - pad, hi + pad};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_line_plot(const TimeSeries& series, const std::string& title) {
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  Range xr{0, 1};
  if (!series.times.empty()) {
    const auto [tmin, tmax] = std::minmax_element(series.times.begin(), series.times.end());
    xr = {*tmin, *tmax};
    if (!(xr.hi > xr.lo)) xr = padded_range(xr.lo, xr.hi);
  }
  double vlo = 0, vhi = 1;
  bool seen = false;
  for (const auto& vals : series.values) {
    for (double v : vals) {
      if (!std::isfinite(v)) continue;
      if (!seen) {
        vlo = vhi = v;
        seen = true;
      } else {
        vlo = std::min(vlo, v);
        vhi = std::max(vhi, v);
      }
    }
  }
  const Range yr = seen ? padded_range(vlo, vhi) : Range{0, 1};

  const auto sx = [&](double t) { return kLeft + (t - xr.lo) / xr.span() * plot_w; };
  const auto sy = [&](double v) { return kTop + plot_h - (v - yr.lo) / yr.span() * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">"
      << title << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = static_cast<double>(i) / kTicks;
    const double tx = xr.lo + fx * xr.span();
    const double px = kLeft + fx * plot_w;
    out << "<line x1=\"" << px << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << px << "\" y2=\""
        << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << kTop + plot_h + 20
        << "\" text-anchor=\"middle\">" << tick_label(tx) << "</text>\n";

    const double ty = yr.lo + fx * yr.span();
    const double py = kTop + plot_h - fx * plot_h;
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft << "\" y2=\""
        << py << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\">" << tick_label(ty) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 8
      << "\" text-anchor=\"middle\">t</text>\n";

  for (std::size_t c = 0; c < series.values.size(); ++c) {
    const char* color = kPalette[c % kPalette.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series.times.size(); ++i) {
      const double v = series.values[c][i];
      if (!std::isfinite(v)) continue;
      if (i) out << ' ';
      out << tick_label(sx(series.times[i])) << ',' << tick_label(sy(v));
    }
    out << "\"/>\n";
  }

  const double lx = kLeft + plot_w - 150;
  for (std::size_t c = 0; c < series.names.size(); ++c) {
    const double ly = kTop + 14 + 16 * static_cast<double>(c);
    out << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 22 << "\" y2=\""
        << ly - 4 << "\" stroke=\"" << kPalette[c % kPalette.size()]
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 28 << "\" y=\"" << ly << "\">" << series.names[c] << "</text>\n";
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace fockmarket
