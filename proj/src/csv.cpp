#include "fockmarket/csv.hpp"

#include <cstdio>
#include <ostream>

#include "fockmarket/errors.hpp"

namespace fockmarket {

std::string format_value(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(std::ostream& out, const TimeSeries& series) {
  for (const auto& vals : series.values) {
    if (vals.size() != series.times.size()) {
      throw InternalError("channel length does not match the time grid");
    }
  }
  out << "t";
  for (const auto& name : series.names) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out << format_value(series.times[i]);
    for (const auto& vals : series.values) out << ',' << format_value(vals[i]);
    out << '\n';
  }
}

}  // namespace fockmarket
