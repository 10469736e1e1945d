#pragma once

#include <iosfwd>
#include <string>

#include "fockmarket/dynamics.hpp"

namespace fockmarket {

// "t,<channel>,..." header, then one row per time point, every value printed
// with 12 significant digits. The output is byte-deterministic for equal
// input.
void write_csv(std::ostream& out, const TimeSeries& series);

std::string format_value(double v);  // 12 significant digits

}  // namespace fockmarket
