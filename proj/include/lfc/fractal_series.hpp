#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lfc/errors.hpp"
#include "lfc/fractional_order.hpp"
#include "lfc/special_functions.hpp"

namespace lfc {

inline constexpr std::size_t kMaxSeriesDegree = 512;

// Finite fractal power series  sum_k c_k (x - x0)^(k alpha),  x >= x0.
//
// For a function expanded about its center, c_k = f^(k alpha)(x0) /
// Gamma(1 + k alpha). Values are immutable; every operation returns a new
// series. The zero series is stored as the single coefficient 0.
class FractalSeries {
 public:
  FractalSeries(FractionalOrder alpha, double center, std::vector<double> coeffs)
      : alpha_(alpha), center_(center), coeffs_(std::move(coeffs)) {
    if (!std::isfinite(center_)) {
      throw DomainError("series center must be finite");
    }
    if (coeffs_.empty()) {
      coeffs_.push_back(0.0);
    }
    if (coeffs_.size() > kMaxSeriesDegree + 1) {
      throw DomainError("series degree " + std::to_string(coeffs_.size() - 1) +
                        " exceeds the cap of " +
                        std::to_string(kMaxSeriesDegree));
    }
    for (double c : coeffs_) {
      if (!std::isfinite(c)) {
        throw DomainError("series coefficients must be finite");
      }
    }
  }

  static FractalSeries zero(FractionalOrder alpha, double center = 0.0) {
    return {alpha, center, {0.0}};
  }

  static FractalSeries constant(FractionalOrder alpha, double value,
                                double center = 0.0) {
    return {alpha, center, {value}};
  }

  // The single basis function (x - x0)^(k alpha).
  static FractalSeries basis(FractionalOrder alpha, std::size_t k,
                             double center = 0.0) {
    std::vector<double> c(k + 1, 0.0);
    c[k] = 1.0;
    return {alpha, center, std::move(c)};
  }

  // Degree-N truncation of E_alpha((x - x0)^alpha).
  static FractalSeries mittag_leffler(FractionalOrder alpha, std::size_t degree,
                                      double center = 0.0) {
    std::vector<double> c(degree + 1);
    for (std::size_t k = 0; k <= degree; ++k) {
      c[k] = reciprocal_gamma(1.0 + static_cast<double>(k) * alpha.value());
    }
    return {alpha, center, std::move(c)};
  }

  FractionalOrder alpha() const noexcept { return alpha_; }
  double center() const noexcept { return center_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double coeff(std::size_t k) const noexcept {
    return k < coeffs_.size() ? coeffs_[k] : 0.0;
  }
  std::size_t degree() const noexcept { return coeffs_.size() - 1; }

  bool is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](double c) { return c == 0.0; });
  }

  // Strips trailing zero coefficients, keeping at least c_0.
  FractalSeries canonical() const {
    std::vector<double> c = coeffs_;
    while (c.size() > 1 && c.back() == 0.0) {
      c.pop_back();
    }
    return {alpha_, center_, std::move(c)};
  }

  double operator()(double x) const;

  // Coefficientwise comparison after canonicalization: relative 1e-12 with
  // an absolute floor of 1e-300. Order and center must match exactly.
  friend bool operator==(FractalSeries const& lhs, FractalSeries const& rhs) {
    return approx_equal(lhs, rhs, 1e-12, 1e-300);
  }

  friend bool approx_equal(FractalSeries const& lhs, FractalSeries const& rhs,
                           double rel_tol, double abs_floor) {
    if (!(lhs.alpha_ == rhs.alpha_) || lhs.center_ != rhs.center_) {
      return false;
    }
    FractalSeries const a = lhs.canonical();
    FractalSeries const b = rhs.canonical();
    if (a.coeffs_.size() != b.coeffs_.size()) {
      return false;
    }
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) {
      double const scale = std::max(std::abs(a.coeffs_[k]), std::abs(b.coeffs_[k]));
      if (std::abs(a.coeffs_[k] - b.coeffs_[k]) > std::max(rel_tol * scale, abs_floor)) {
        return false;
      }
    }
    return true;
  }

 private:
  FractionalOrder alpha_;
  double center_;
  std::vector<double> coeffs_;
};

// sum_k c_k (x - x0)^(k alpha), accumulated in increasing k. At x = x0
// only c_0 survives (0^0 := 1).
inline double eval(FractalSeries const& s, double x) {
  if (!(x >= s.center())) {
    throw DomainError("eval: x = " + std::to_string(x) +
                      " lies left of the series center " +
                      std::to_string(s.center()));
  }
  auto const c = s.coeffs();
  double const h = x - s.center();
  if (h == 0.0) {
    return c[0];
  }
  double const a = s.alpha().value();
  double sum = c[0];
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (c[k] != 0.0) {
      sum += c[k] * std::pow(h, static_cast<double>(k) * a);
    }
  }
  return sum;
}

inline double FractalSeries::operator()(double x) const { return eval(*this, x); }

// Local fractional derivative: D (x-x0)^(k a) =
// Gamma(1+k a)/Gamma(1+(k-1) a) (x-x0)^((k-1) a); constants are annihilated.
inline FractalSeries lf_derivative(FractalSeries const& s) {
  auto const c = s.coeffs();
  if (c.size() == 1) {
    return FractalSeries::zero(s.alpha(), s.center());
  }
  double const a = s.alpha().value();
  std::vector<double> out(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) {
    double const kd = static_cast<double>(k);
    out[k - 1] = c[k] * gamma_ratio(1.0 + kd * a, 1.0 + (kd - 1.0) * a);
  }
  return {s.alpha(), s.center(), std::move(out)};
}

// Local fractional integral from the center: I (x-x0)^(k a) =
// Gamma(1+k a)/Gamma(1+(k+1) a) (x-x0)^((k+1) a); the result vanishes at x0.
inline FractalSeries lf_integral(FractalSeries const& s) {
  auto const c = s.coeffs();
  double const a = s.alpha().value();
  std::vector<double> out(c.size() + 1, 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) {
    double const kd = static_cast<double>(k);
    out[k + 1] = c[k] * gamma_ratio(1.0 + kd * a, 1.0 + (kd + 1.0) * a);
  }
  return {s.alpha(), s.center(), std::move(out)};
}

// k-fold local fractional derivative; k = 0 is the identity.
inline FractalSeries sequential_derivative(FractalSeries const& s, std::size_t k) {
  if (k > s.degree()) {
    return FractalSeries::zero(s.alpha(), s.center());
  }
  FractalSeries out = s;
  for (std::size_t i = 0; i < k; ++i) {
    out = lf_derivative(out);
  }
  return out;
}

// Order-alpha integral of s over [a, b] as g(b) - g(a), g = lf_integral(s).
// Zero for a == b and antisymmetric in (a, b), both exactly.
inline double definite_integral(FractalSeries const& s, double a, double b) {
  if (!(a >= s.center()) || !(b >= s.center())) {
    throw DomainError("definite_integral: limits must not lie left of the center");
  }
  FractalSeries const g = lf_integral(s);
  return eval(g, b) - eval(g, a);
}

namespace detail {

inline void require_compatible(FractalSeries const& lhs, FractalSeries const& rhs,
                               char const* op) {
  if (!(lhs.alpha() == rhs.alpha())) {
    throw MismatchError(std::string(op) + ": fractional orders differ");
  }
  if (lhs.center() != rhs.center()) {
    throw MismatchError(std::string(op) + ": series centers differ");
  }
}

}  // namespace detail

inline FractalSeries add(FractalSeries const& lhs, FractalSeries const& rhs) {
  detail::require_compatible(lhs, rhs, "add");
  std::vector<double> out(std::max(lhs.coeffs().size(), rhs.coeffs().size()));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = lhs.coeff(k) + rhs.coeff(k);
  }
  return {lhs.alpha(), lhs.center(), std::move(out)};
}

inline FractalSeries scale(FractalSeries const& s, double factor) {
  std::vector<double> out(s.coeffs().begin(), s.coeffs().end());
  for (double& c : out) {
    c *= factor;
  }
  return {s.alpha(), s.center(), std::move(out)};
}

// Cauchy product; (x-x0)^(j a) (x-x0)^(k a) = (x-x0)^((j+k) a).
inline FractalSeries mul(FractalSeries const& lhs, FractalSeries const& rhs) {
  detail::require_compatible(lhs, rhs, "mul");
  auto const a = lhs.coeffs();
  auto const b = rhs.coeffs();
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return {lhs.alpha(), lhs.center(), std::move(out)};
}

inline FractalSeries operator+(FractalSeries const& lhs, FractalSeries const& rhs) {
  return add(lhs, rhs);
}
inline FractalSeries operator*(FractalSeries const& lhs, FractalSeries const& rhs) {
  return mul(lhs, rhs);
}
inline FractalSeries operator*(double factor, FractalSeries const& s) {
  return scale(s, factor);
}

// {"alpha": a, "center": x0, "coeffs": [c0, c1, ...]}
inline nlohmann::json to_json(FractalSeries const& s) {
  return nlohmann::json{{"alpha", s.alpha().value()},
                        {"center", s.center()},
                        {"coeffs", std::vector<double>(s.coeffs().begin(),
                                                       s.coeffs().end())}};
}

inline FractalSeries series_from_json(nlohmann::json const& j) {
  if (!j.is_object()) {
    throw DomainError("series JSON must be an object");
  }
  for (char const* key : {"alpha", "center", "coeffs"}) {
    if (!j.contains(key)) {
      throw DomainError(std::string("series JSON is missing \"") + key + "\"");
    }
  }
  if (!j.at("alpha").is_number() || !j.at("center").is_number() ||
      !j.at("coeffs").is_array()) {
    throw DomainError("series JSON has fields of the wrong type");
  }
  std::vector<double> coeffs;
  for (auto const& c : j.at("coeffs")) {
    if (!c.is_number()) {
      throw DomainError("series coefficients must be numbers");
    }
    coeffs.push_back(c.get<double>());
  }
  return {FractionalOrder(j.at("alpha").get<double>()),
          j.at("center").get<double>(), std::move(coeffs)};
}

}  // namespace lfc
