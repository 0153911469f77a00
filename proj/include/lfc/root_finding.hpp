#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

namespace lfc {

struct RootScanOptions {
  std::size_t cells = 256;
  std::size_t refinements = 3;  // each doubles the number of cells
};

// Bisection on a bracket [lower, upper] with residual(lower) and
// residual(upper) of opposite signs. Runs until the midpoint coincides with
// an endpoint or the residual is exactly zero.
template <typename Residual>
double bisect(Residual&& residual, double lower, double upper) {
  double r_lower = residual(lower);
  for (;;) {
    double const middle = lower + 0.5 * (upper - lower);
    if (middle <= lower || middle >= upper) {
      return middle;
    }
    double const r_middle = residual(middle);
    if (r_middle == 0.0) {
      return middle;
    }
    if (std::signbit(r_middle) == std::signbit(r_lower)) {
      lower = middle;
      r_lower = r_middle;
    } else {
      upper = middle;
    }
  }
}

// Leftmost point of the open interval (lower, upper) where the residual
// vanishes, located by scanning a uniform grid for a sign change (or an
// exact zero at an interior node) and then bisecting. The grid is doubled
// up to options.refinements times. Returns nullopt if no sign change is
// found at the finest grid.
template <typename Residual>
std::optional<double> leftmost_root(Residual&& residual, double lower, double upper,
                                    RootScanOptions options = {}) {
  std::size_t cells = options.cells;
  for (std::size_t pass = 0; pass <= options.refinements; ++pass, cells *= 2) {
    double const width = (upper - lower) / static_cast<double>(cells);
    double left = lower;
    double r_left = residual(left);
    for (std::size_t i = 1; i <= cells; ++i) {
      double const right = i == cells ? upper : lower + static_cast<double>(i) * width;
      double const r_right = residual(right);
      if (i < cells && r_right == 0.0) {
        return right;
      }
      if (r_left != 0.0 && r_right != 0.0 &&
          std::signbit(r_left) != std::signbit(r_right)) {
        return bisect(residual, left, right);
      }
      left = right;
      r_left = r_right;
    }
  }
  return std::nullopt;
}

}  // namespace lfc
