#ifndef EMBEZZLE_FORMAT_HPP
#define EMBEZZLE_FORMAT_HPP

#include <cmath>
#include <cstdio>
#include <string>

namespace embezzle::detail {

// 17 significant digits: enough to round-trip any double.
inline std::string format_real(double x) {
  if (std::isnan(x))
    return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_json_real(double x) {
  return std::isfinite(x) ? format_real(x) : std::string("null");
}

} // namespace embezzle::detail

#endif
