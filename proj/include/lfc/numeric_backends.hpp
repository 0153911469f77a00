#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lfc/errors.hpp"
#include "lfc/fractional_order.hpp"
#include "lfc/special_functions.hpp"

namespace lfc {

// Sequence of difference quotients Gamma(1+a) (f(x0+h) - f(x0)) / h^a.
struct QuotientEstimate {
  double value = 0.0;
  std::vector<double> h_values;
  std::vector<double> quotients;
  double stability = 0.0;  // max spread of the last three quotients
};

struct QuadratureResult {
  double value = 0.0;
  std::size_t nodes = 0;
  double error_estimate = 0.0;  // |Q(2 panels) - Q(panels)|
  bool converged = true;
};

struct HolderEstimate {
  double exponent = 0.0;
  double r_squared = 0.0;
  double delta_min = 0.0;
  double delta_max = 0.0;
};

struct RiemannSumRow {
  std::size_t partition_size;
  double sum;
};

inline constexpr double kQuadratureConvergenceRatio = 1e-4;

namespace detail {

template <typename F>
double evaluate_checked(F& f, double t) {
  double value = 0.0;
  try {
    value = static_cast<double>(f(t));
  } catch (Error const&) {
    throw;
  } catch (std::exception const& e) {
    throw EvaluationError("function evaluation failed at t = " + std::to_string(t) +
                          ": " + e.what());
  }
  if (!std::isfinite(value)) {
    throw EvaluationError("function returned a non-finite value at t = " +
                          std::to_string(t));
  }
  return value;
}

// (1/Gamma(1+a)) * integral over u in [0, (b-a)^alpha] of f(b - u^(1/alpha)),
// composite midpoint with `panels` cells.
template <typename F>
double substituted_midpoint(F& f, double a, double b, double alpha, std::size_t panels) {
  double const upper = std::pow(b - a, alpha);
  double const width = upper / static_cast<double>(panels);
  double const inv_alpha = 1.0 / alpha;
  double sum = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    double const u = (static_cast<double>(i) + 0.5) * width;
    double const t = std::max(a, b - std::pow(u, inv_alpha));
    sum += evaluate_checked(f, t);
  }
  return sum * width / gamma(1.0 + alpha);
}

}  // namespace detail

// Raw quotients of the defining limit at h_j = h0 2^-j, j < levels. No
// extrapolation: value is the last quotient, stability is reported only.
template <typename F>
QuotientEstimate lfd_quotient(F&& f, double x0, FractionalOrder alpha, double h0,
                              std::size_t levels) {
  if (!(h0 > 0.0) || !std::isfinite(h0)) {
    throw DomainError("lfd_quotient: h0 must be positive");
  }
  if (levels < 3) {
    throw DomainError("lfd_quotient: need at least 3 levels");
  }
  double const a = alpha.value();
  double const scale = gamma(1.0 + a);
  double const f0 = detail::evaluate_checked(f, x0);
  QuotientEstimate estimate;
  estimate.h_values.reserve(levels);
  estimate.quotients.reserve(levels);
  double h = h0;
  for (std::size_t j = 0; j < levels; ++j, h *= 0.5) {
    double const df = detail::evaluate_checked(f, x0 + h) - f0;
    estimate.h_values.push_back(h);
    estimate.quotients.push_back(scale * df / std::pow(h, a));
  }
  auto const tail = std::span(estimate.quotients).last(3);
  auto const [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  estimate.value = estimate.quotients.back();
  estimate.stability = *hi - *lo;
  return estimate;
}

// Order-alpha integral over [a, b] in kernel form
//   (1/Gamma(alpha)) int_a^b (b - t)^(alpha - 1) f(t) dt,
// which after u = (b - t)^alpha becomes (1/Gamma(1+alpha)) int f(b - u^(1/alpha)) du
// with a bounded integrand. On (t - a)^(k alpha) it reproduces
// Gamma(1 + k alpha) / Gamma(1 + (k+1) alpha) (b - a)^((k+1) alpha).
template <typename F>
QuadratureResult lfi_quadrature(F&& f, double a, double b, FractionalOrder alpha,
                                std::size_t panels) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("lfi_quadrature: need b > a");
  }
  if (panels < 2) {
    throw DomainError("lfi_quadrature: need at least 2 panels");
  }
  double const coarse = detail::substituted_midpoint(f, a, b, alpha.value(), panels);
  double const fine = detail::substituted_midpoint(f, a, b, alpha.value(), 2 * panels);
  QuadratureResult result;
  result.value = coarse;
  result.nodes = panels;
  result.error_estimate = std::abs(fine - coarse);
  result.converged =
      result.error_estimate <= kQuadratureConvergenceRatio * std::abs(result.value);
  return result;
}

// Least-squares slope of log|f(x0 + d) - f(x0)| against log d over
// geometrically spaced d in [delta_min, delta_max].
template <typename F>
HolderEstimate holder_exponent(F&& f, double x0, double delta_min, double delta_max,
                               std::size_t samples) {
  if (!(delta_min > 0.0) || !(delta_max > delta_min)) {
    throw DomainError("holder_exponent: need 0 < delta_min < delta_max");
  }
  if (samples < 8) {
    throw DomainError("holder_exponent: need at least 8 samples");
  }
  double const f0 = detail::evaluate_checked(f, x0);
  double const log_min = std::log(delta_min);
  double const log_step = (std::log(delta_max) - log_min) / static_cast<double>(samples - 1);
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < samples; ++i) {
    double const log_delta = log_min + static_cast<double>(i) * log_step;
    double const diff = std::abs(detail::evaluate_checked(f, x0 + std::exp(log_delta)) - f0);
    if (diff > 0.0) {
      xs.push_back(log_delta);
      ys.push_back(std::log(diff));
    }
  }
  if (2 * xs.size() <= samples || xs.size() < 2) {
    throw DegenerateError("holder_exponent: f is constant near x0 on most samples");
  }
  double const n = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double const dx = xs[i] - mean_x;
    double const dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  HolderEstimate estimate;
  estimate.exponent = sxy / sxx;
  estimate.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  estimate.delta_min = delta_min;
  estimate.delta_max = delta_max;
  return estimate;
}

// The literal sum (1/Gamma(1+a)) sum_j f(t_j) (dt_j)^a on uniform
// partitions of [a, b]. For alpha < 1 it grows like N^(1 - alpha).
template <typename F>
std::vector<RiemannSumRow> riemann_sum_diagnostic(F&& f, double a, double b,
                                                  FractionalOrder alpha,
                                                  std::span<const std::size_t> sizes) {
  if (!(b > a)) {
    throw DomainError("riemann_sum_diagnostic: need b > a");
  }
  std::vector<RiemannSumRow> rows;
  std::size_t previous = 0;
  for (std::size_t n : sizes) {
    if (n < 1 || n <= previous) {
      throw DomainError("riemann_sum_diagnostic: partition sizes must be >= 1 and increasing");
    }
    previous = n;
    double const dt = (b - a) / static_cast<double>(n);
    double const weight = std::pow(dt, alpha.value());
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sum += detail::evaluate_checked(f, a + static_cast<double>(j) * dt);
    }
    rows.push_back({n, sum * weight / gamma(1.0 + alpha.value())});
  }
  return rows;
}

}  // namespace lfc
