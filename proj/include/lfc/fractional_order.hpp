#pragma once

#include <cmath>
#include <string>

#include "lfc/errors.hpp"

namespace lfc {

// The order alpha of the local fractional operators, restricted to (0, 1].
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0)) {
      throw DomainError("fractional order must lie in (0, 1], got " +
                        std::to_string(alpha));
    }
  }

  constexpr double value() const noexcept { return alpha_; }

  friend constexpr bool operator==(FractionalOrder, FractionalOrder) = default;

 private:
  double alpha_;
};

}  // namespace lfc
