#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace lfc {

// 17 significant digits, '.' separator, independent of the global locale.
inline std::string format_double(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  std::array<char, 64> buffer{};
  auto const result = std::to_chars(buffer.data(), buffer.data() + buffer.size(),
                                    value, std::chars_format::general, 17);
  return std::string(buffer.data(), result.ptr);
}

}  // namespace lfc
