#include "qdpot/format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace qdpot {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const double a = std::abs(v);
  const auto fmt = (a >= 1e6 || a < 1e-5) ? std::chars_format::scientific : std::chars_format::fixed;
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, fmt);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string format_pair(cplx c) { return format_double(c.real()) + "," + format_double(c.imag()); }

}  // namespace qdpot
