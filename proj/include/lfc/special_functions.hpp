#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "lfc/errors.hpp"
#include "lfc/fractional_order.hpp"

namespace lfc {

namespace detail {

// Lanczos-type approximation with g = 671/128 and fourteen partial
// fractions (Numerical Recipes, 3rd ed.):
//   Gamma(x) = sqrt(2 pi) t^(x + 1/2) e^-t S(x) / x,  t = x + g,
//   S(x) = c_0 + sum_j c_j / (x + j).
// Relative error about 1.5e-15 for x >= 0.5.
inline constexpr double kLanczosG = 671.0 / 128.0;
inline constexpr double kLanczosLeading = 0.999999999999997092;
inline constexpr std::array<double, 14> kLanczosCoeffs = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

// S(x); positive for x >= 0.5.
inline double lanczos_sum(double x) {
  double sum = kLanczosLeading;
  for (std::size_t j = 0; j < kLanczosCoeffs.size(); ++j) {
    sum += kLanczosCoeffs[j] / (x + static_cast<double>(j + 1));
  }
  return sum;
}

// t = x + g as a rounded value plus its exact rounding error, so the large
// power t^(x + 1/2) can be corrected for the error in t.
struct ShiftedArgument {
  double t;
  double error;
};

inline ShiftedArgument shifted_argument(double x) {
  double const t = x + kLanczosG;
  double const back = t - x;
  return {t, (x - (t - back)) + (kLanczosG - back)};
}

// log of t_exact^(x + 1/2) e^(-t_exact) minus the same with the rounded t.
inline double shift_correction(double x, ShiftedArgument s) {
  return (x + 0.5) * std::log1p(s.error / s.t) - s.error;
}

inline bool is_non_positive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

}  // namespace detail

inline constexpr double kGammaOverflowArgument = 171.0;

// Gamma function for real arguments. Direct Lanczos evaluation for x >= 0.5,
// reflection Gamma(x) Gamma(1-x) = pi / sin(pi x) below.
inline double gamma(double x) {
  if (std::isnan(x)) {
    throw DomainError("gamma: argument is NaN");
  }
  if (detail::is_non_positive_integer(x)) {
    throw PoleError("gamma: pole at non-positive integer " + std::to_string(x));
  }
  if (x > kGammaOverflowArgument) {
    throw OverflowError("gamma: overflow for argument " + std::to_string(x) +
                        "; use log_gamma");
  }
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
  }
  if (x == std::floor(x) && x <= 24.0) {
    // (x-1)! by direct product; exact while the factorial fits in 53 bits.
    double factorial = 1.0;
    for (double k = 2.0; k < x; k += 1.0) {
      factorial *= k;
    }
    return factorial;
  }
  auto const shifted = detail::shifted_argument(x);
  double const t = shifted.t;
  // Split the power so t^(x+1/2) cannot overflow before e^-t scales it down.
  double const half_power = std::pow(t, 0.5 * (x + 0.5));
  double const correction = std::exp(detail::shift_correction(x, shifted));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) *
         (detail::lanczos_sum(x) / x * correction);
}

// log|Gamma(x)| for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be positive and finite, got " +
                      std::to_string(x));
  }
  if (x < 0.5) {
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) -
           log_gamma(1.0 - x);
  }
  auto const shifted = detail::shifted_argument(x);
  double const t = shifted.t;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t +
         std::log(detail::lanczos_sum(x) / x) + detail::shift_correction(x, shifted);
}

// log Gamma(a) - log Gamma(b) for a, b > 0. For a, b >= 0.5 the Lanczos
// terms are differenced analytically so the large (x + 1/2) log t parts
// cancel exactly instead of in floating point. Antisymmetric by construction.
inline double log_gamma_difference(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("log_gamma_difference: arguments must be positive");
  }
  if (a == b) {
    return 0.0;
  }
  if (a < b) {
    return -log_gamma_difference(b, a);
  }
  if (b < 0.5) {
    return log_gamma(a) - log_gamma(b);
  }
  double const d = a - b;
  auto const ta = detail::shifted_argument(a);
  auto const tb = detail::shifted_argument(b);
  return d * std::log(ta.t) + (b + 0.5) * std::log1p(d / tb.t) - d +
         std::log(detail::lanczos_sum(a) / detail::lanczos_sum(b)) - std::log1p(d / b) +
         (detail::shift_correction(a, ta) - detail::shift_correction(b, tb));
}

// Gamma(a) / Gamma(b). A direct quotient while both factors are finite
// (exact for small integer arguments), the log-gamma difference beyond.
inline double gamma_ratio(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("gamma_ratio: arguments must be positive, got (" +
                      std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  if (a == b) {
    return 1.0;
  }
  if (a <= kGammaOverflowArgument && b <= kGammaOverflowArgument) {
    double const ratio = gamma(a) / gamma(b);
    if (std::isnormal(ratio)) {
      return ratio;
    }
  }
  return std::exp(log_gamma_difference(a, b));
}

// 1 / Gamma(x) for x > 0; direct below the overflow point, log-gamma above.
inline double reciprocal_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("reciprocal_gamma: argument must be positive");
  }
  return x <= kGammaOverflowArgument ? 1.0 / gamma(x) : std::exp(-log_gamma(x));
}

struct MittagLefflerValue {
  FractionalOrder alpha;
  double x;
  double value;
  std::size_t terms_used;
  double tail_bound;
};

inline constexpr std::size_t kMittagLefflerTermCap = 10000;

// E_alpha(x^alpha) = sum_k x^(k alpha) / Gamma(1 + k alpha).
//
// Summation stops once the latest term is below rel_tol * |sum| and the
// terms have started to decrease; for small alpha they grow first. Since
// Gamma is log-convex, the successive term ratios are non-increasing, so
// the remaining tail is bounded by the geometric series started at the
// first omitted term with the ratio of the last two terms.
inline MittagLefflerValue mittag_leffler(FractionalOrder alpha, double x,
                                         double rel_tol,
                                         std::size_t term_cap =
                                             kMittagLefflerTermCap) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("mittag_leffler: x must be finite and >= 0");
  }
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw DomainError("mittag_leffler: rel_tol must lie in (0, 1)");
  }
  if (x == 0.0) {
    return {alpha, x, 1.0, 1, 0.0};
  }
  double const a = alpha.value();
  double const log_x = std::log(x);
  auto term = [&](std::size_t k) {
    double const ka = static_cast<double>(k) * a;
    return std::exp(ka * log_x - log_gamma(1.0 + ka));
  };

  double sum = 1.0;
  double previous = 1.0;
  for (std::size_t k = 1; k < term_cap; ++k) {
    double const current = term(k);
    sum += current;
    bool const decreasing = current < previous;
    if (decreasing && current <= rel_tol * std::abs(sum)) {
      double const next = term(k + 1);
      double const ratio = next / current;
      if (ratio < 1.0) {
        return {alpha, x, sum, k + 1, next / (1.0 - ratio)};
      }
    }
    previous = current;
  }
  throw NonConvergenceError("mittag_leffler: term cap " +
                            std::to_string(term_cap) + " reached");
}

}  // namespace lfc
