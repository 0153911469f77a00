#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfc/errors.hpp"
#include "lfc/format.hpp"
#include "lfc/fractal_series.hpp"
#include "lfc/root_finding.hpp"
#include "lfc/special_functions.hpp"

namespace lfc {

// Degree-N generalized Taylor polynomial about x0 together with a remainder
// certificate. remainder_bound bounds |f(x) - T_N(x)| for x in
// [x0, bound_upper]; xi and theta are the mean-value point of the remainder
// and theta = (xi - x0) / (x - x0), when they were requested and found.
struct TaylorResult {
  FractalSeries polynomial;
  std::size_t degree = 0;
  double remainder_bound = 0.0;
  double bound_upper = 0.0;
  std::optional<double> xi;
  std::optional<double> theta;
};

struct ConvergenceRow {
  std::size_t degree;
  double approx;
  double abs_error;
  double remainder_bound;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
};

struct MeanValuePoint {
  double xi;
  double theta;
  double residual;
};

inline constexpr std::size_t kSupremumGridPoints = 1024;
inline constexpr double kMeanValueResidualTolerance = 1e-10;

namespace detail {

inline void require_at_or_right_of_center(FractalSeries const& f, double x0,
                                          char const* op) {
  if (!(x0 >= f.center()) || !std::isfinite(x0)) {
    throw DomainError(std::string(op) + ": expansion point " + std::to_string(x0) +
                      " lies left of the series center " +
                      std::to_string(f.center()));
  }
}

// (x - x0)^(n alpha) / Gamma(1 + n alpha), in log space to survive large n.
inline double remainder_weight(FractionalOrder alpha, std::size_t n, double h) {
  if (h == 0.0) {
    return n == 0 ? 1.0 : 0.0;
  }
  double const na = static_cast<double>(n) * alpha.value();
  double const power = std::pow(h, na);
  double const scale = reciprocal_gamma(1.0 + na);
  if (std::isnormal(power) && std::isnormal(power * scale)) {
    return power * scale;
  }
  return std::exp(na * std::log(h) - log_gamma(1.0 + na));
}

// Sampled max of |g| on [lower, upper]: a uniform grid, then one pass on a
// grid of the same size over the two cells around the best node.
inline double sampled_sup_abs(FractalSeries const& g, double lower, double upper,
                              std::size_t points) {
  auto sweep = [&](double lo, double hi, std::size_t& best_index) {
    double best = -1.0;
    double const step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
      double const t = i + 1 == points ? hi : lo + static_cast<double>(i) * step;
      double const v = std::abs(eval(g, t));
      if (v > best) {
        best = v;
        best_index = i;
      }
    }
    return best;
  };
  std::size_t index = 0;
  double best = sweep(lower, upper, index);
  double const step = (upper - lower) / static_cast<double>(points - 1);
  double const lo = std::max(lower, lower + (static_cast<double>(index) - 1.0) * step);
  double const hi = std::min(upper, lower + (static_cast<double>(index) + 1.0) * step);
  std::size_t unused = 0;
  return std::max(best, sweep(lo, hi, unused));
}

}  // namespace detail

// T_N(x) = sum_{k<=N} f^(k alpha)(x0) / Gamma(1 + k alpha) (x - x0)^(k alpha),
// with the sequential derivatives taken on the series and evaluated at x0.
// x0 = f.center() is the Mc-Laurin case.
inline TaylorResult taylor_polynomial(FractalSeries const& f, double x0, std::size_t N) {
  detail::require_at_or_right_of_center(f, x0, "taylor_polynomial");
  if (N > kMaxSeriesDegree) {
    throw DomainError("taylor_polynomial: degree exceeds the series cap");
  }
  double const a = f.alpha().value();
  std::vector<double> coeffs(N + 1, 0.0);
  FractalSeries derivative = f;
  for (std::size_t k = 0; k <= N; ++k) {
    if (derivative.is_zero()) {
      break;
    }
    double const value = eval(derivative, x0);
    coeffs[k] = value * reciprocal_gamma(1.0 + static_cast<double>(k) * a);
    derivative = lf_derivative(derivative);
  }
  return {FractalSeries(f.alpha(), x0, std::move(coeffs)), N, 0.0, x0, {}, {}};
}

// M (b - x0)^((N+1) alpha) / Gamma(1 + (N+1) alpha), M the sampled sup of
// |f^((N+1) alpha)| on [x0, b]. The sup is exact when that magnitude is
// monotone on the interval (e.g. all coefficients of one sign).
inline double remainder_bound(FractalSeries const& f, double x0, std::size_t N,
                              double b) {
  detail::require_at_or_right_of_center(f, x0, "remainder_bound");
  if (!(b > x0) || !std::isfinite(b)) {
    throw DomainError("remainder_bound: need b > x0");
  }
  FractalSeries const derivative = sequential_derivative(f, N + 1);
  if (derivative.is_zero()) {
    return 0.0;
  }
  double const sup = detail::sampled_sup_abs(derivative, x0, b, kSupremumGridPoints);
  return sup * detail::remainder_weight(f.alpha(), N + 1, b - x0);
}

// Point xi in (x0, x) with
//   f(x) - T_N(x) = f^((N+1) alpha)(xi) (x - x0)^((N+1) alpha) / Gamma(1 + (N+1) alpha).
// N = 0 is the generalized mean value theorem. The leftmost root is returned.
inline MeanValuePoint find_mean_value_point(FractalSeries const& f, double x0,
                                            double x, std::size_t N,
                                            RootScanOptions options = {}) {
  detail::require_at_or_right_of_center(f, x0, "find_mean_value_point");
  if (!(x > x0) || !std::isfinite(x)) {
    throw DomainError("find_mean_value_point: need x > x0");
  }
  FractalSeries const taylor = taylor_polynomial(f, x0, N).polynomial;
  FractalSeries const derivative = sequential_derivative(f, N + 1);
  double const remainder = eval(f, x) - eval(taylor, x);
  double const weight = detail::remainder_weight(f.alpha(), N + 1, x - x0);
  auto residual = [&](double t) { return eval(derivative, t) * weight - remainder; };

  double const tolerance = kMeanValueResidualTolerance * (1.0 + std::abs(remainder));
  auto const root = leftmost_root(residual, x0, x, options);
  if (!root || !(*root > x0 && *root < x)) {
    throw NotFoundError(
        "no mean-value point: residual has no sign change inside (x0, x)");
  }
  double const r = residual(*root);
  if (std::abs(r) > tolerance) {
    throw NotFoundError("no mean-value point: sign change is not a root (residual " +
                        format_double(r) + ")");
  }
  return {*root, (*root - x0) / (x - x0), r};
}

inline double find_xi(FractalSeries const& f, double x0, double x) {
  return find_mean_value_point(f, x0, x, 0).xi;
}

// theta in (0, 1) with f(x) - T_N(x) = f^((N+1) alpha)(theta x) x^((N+1) alpha) / Gamma(...).
inline double find_theta(FractalSeries const& f, double x, std::size_t N) {
  if (f.center() != 0.0) {
    throw DomainError("find_theta: series must be centered at 0");
  }
  if (!(x > 0.0)) {
    throw DomainError("find_theta: need x > 0");
  }
  return find_mean_value_point(f, 0.0, x, N).theta;
}

// Taylor polynomial plus remainder bound on [x0, x] and, if one exists, the
// mean-value point of the remainder at x.
inline TaylorResult taylor_expand(FractalSeries const& f, double x0, std::size_t N,
                                  double x) {
  TaylorResult result = taylor_polynomial(f, x0, N);
  result.remainder_bound = remainder_bound(f, x0, N, x);
  result.bound_upper = x;
  try {
    MeanValuePoint const point = find_mean_value_point(f, x0, x, N);
    result.xi = point.xi;
    result.theta = point.theta;
  } catch (NotFoundError const&) {
    // The remainder identity has no interior solution; the bound still holds.
  }
  return result;
}

// Rows N = 0..N_max of T_N(x), |f(x) - T_N(x)| and the remainder bound on [x0, x].
inline ConvergenceTable convergence_table(FractalSeries const& f, double x0, double x,
                                          std::size_t max_degree) {
  detail::require_at_or_right_of_center(f, x0, "convergence_table");
  if (!(x > x0)) {
    throw DomainError("convergence_table: need x > x0");
  }
  if (max_degree < 1) {
    throw DomainError("convergence_table: need N_max >= 1");
  }
  double const reference = eval(f, x);
  ConvergenceTable table;
  table.rows.reserve(max_degree + 1);
  for (std::size_t N = 0; N <= max_degree; ++N) {
    double const approx = eval(taylor_polynomial(f, x0, N).polynomial, x);
    table.rows.push_back({N, approx, std::abs(reference - approx),
                          remainder_bound(f, x0, N, x)});
  }
  return table;
}

inline std::string to_csv(ConvergenceTable const& table) {
  std::ostringstream out;
  out << "N,approx,abs_error,remainder_bound\n";
  for (auto const& row : table.rows) {
    out << row.degree << ',' << format_double(row.approx) << ','
        << format_double(row.abs_error) << ',' << format_double(row.remainder_bound)
        << '\n';
  }
  return out.str();
}

inline nlohmann::json to_json(ConvergenceTable const& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (auto const& row : table.rows) {
    rows.push_back({{"N", row.degree},
                    {"approx", row.approx},
                    {"abs_error", row.abs_error},
                    {"remainder_bound", row.remainder_bound}});
  }
  return rows;
}

inline nlohmann::json to_json(TaylorResult const& result) {
  nlohmann::json j{{"polynomial", to_json(result.polynomial)},
                   {"degree", result.degree},
                   {"remainder_bound", result.remainder_bound},
                   {"bound_interval", {result.polynomial.center(), result.bound_upper}}};
  j["xi"] = result.xi ? nlohmann::json(*result.xi) : nlohmann::json(nullptr);
  j["theta"] = result.theta ? nlohmann::json(*result.theta) : nlohmann::json(nullptr);
  return j;
}

}  // namespace lfc
