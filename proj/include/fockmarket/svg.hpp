#pragma once

#include <string>

#include "fockmarket/dynamics.hpp"

namespace fockmarket {

// Dependency-free line plot: one polyline per channel inside a 800 x 500
// viewBox, with axes, tick labels and a legend.
std::string render_line_plot(const TimeSeries& series, const std::string& title);

}  // namespace fockmarket
