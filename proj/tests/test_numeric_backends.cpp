#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "lfc/fractal_series.hpp"
#include "lfc/numeric_backends.hpp"
#include "oracles.hpp"

namespace lfc {
namespace {

using testing::random_coeffs;
using testing::relative_error;

FractionalOrder const kHalf(0.5);
FractionalOrder const kOne(1.0);

TEST(LfdQuotient, PureBasisFunctionIsStepIndependent) {
  auto const q = lfd_quotient([](double t) { return std::sqrt(t); }, 0.0, kHalf, 0.5, 12);
  ASSERT_EQ(q.quotients.size(), 12u);
  for (double v : q.quotients) {
    EXPECT_NEAR(v, std::tgamma(1.5), 1e-15);
  }
  EXPECT_NEAR(q.value, 0.8862269255, 1e-10);
  EXPECT_LT(q.stability, 1e-15);
}

TEST(LfdQuotient, ClassicalDerivative) {
  auto const q = lfd_quotient([](double t) { return t * t; }, 1.0, kOne, 0.1, 16);
  EXPECT_NEAR(q.value, 2.0, 1e-5);
  for (std::size_t j = 1; j < q.h_values.size(); ++j) {
    EXPECT_EQ(q.h_values[j], 0.5 * q.h_values[j - 1]);
    EXPECT_LT(std::abs(q.quotients[j] - 2.0), std::abs(q.quotients[j - 1] - 2.0));
  }
}

TEST(LfdQuotient, ConstantFunction) {
  auto const q = lfd_quotient([](double) { return 3.0; }, 0.2, FractionalOrder(0.4), 0.1, 5);
  EXPECT_EQ(q.value, 0.0);
  EXPECT_EQ(q.stability, 0.0);
}

TEST(LfdQuotient, Errors) {
  auto f = [](double t) { return t; };
  EXPECT_THROW(lfd_quotient(f, 0.0, kHalf, 0.0, 5), DomainError);
  EXPECT_THROW(lfd_quotient(f, 0.0, kHalf, 0.1, 2), DomainError);
  EXPECT_THROW(lfd_quotient([](double t) { return std::log(t); }, 0.0, kHalf, 0.1, 4),
               EvaluationError);
  EXPECT_THROW(lfd_quotient([](double) -> double { throw std::runtime_error("boom"); }, 0.0,
                            kHalf, 0.1, 4),
               EvaluationError);
}

TEST(LfdQuotient, AgreesWithSpectralDerivativeClassically) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    FractalSeries const f(kOne, 0.0, random_coeffs(rng, 10, -1.0, 1.0));
    double const x0 = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    double const expected = eval(lf_derivative(f), x0);
    auto const q = lfd_quotient([&](double t) { return eval(f, t); }, x0, kOne, 1e-2, 20);
    EXPECT_LE(std::abs(q.value - expected), 1e-5 * (1.0 + std::abs(expected)));
  }
}

TEST(LfdQuotient, AtTheCenterConvergesLikeStepToTheAlpha) {
  // Gamma(1+a) (f(h) - f(0)) / h^a = Gamma(1+a) (c1 + c2 h^a + ...).
  FractalSeries const f(FractionalOrder(0.6), 0.0, {0.3, -0.7, 0.4, 0.9});
  double const expected = eval(lf_derivative(f), 0.0);
  auto const q = lfd_quotient([&](double t) { return eval(f, t); }, 0.0, f.alpha(), 1e-2, 20);
  double const h = q.h_values.back();
  EXPECT_LE(std::abs(q.value - expected), 2.0 * std::tgamma(1.6) * 0.4 * std::pow(h, 0.6));
}

TEST(LfdQuotient, VanishesAtSmoothInteriorPointsBelowOrderOne) {
  // The defining limit annihilates differentiable functions when alpha < 1.
  auto const q = lfd_quotient([](double t) { return t * t; }, 1.0, kHalf, 1e-2, 30);
  EXPECT_LT(std::abs(q.value), 1e-3);
  EXPECT_LT(std::abs(q.quotients.back()), std::abs(q.quotients.front()));
}

TEST(LfiQuadrature, ConstantHasClosedForm) {
  auto const r = lfi_quadrature([](double) { return 1.0; }, 0.0, 1.0, kHalf, 16);
  EXPECT_NEAR(r.value, 1.0 / std::tgamma(1.5), 1e-14);
  EXPECT_NEAR(r.value, 1.1283791671, 1e-10);
  EXPECT_LE(std::abs(r.value - 1.0 / std::tgamma(1.5)), r.error_estimate + 1e-14);
  EXPECT_EQ(r.nodes, 16u);
  EXPECT_TRUE(r.converged);
}

TEST(LfiQuadrature, SquareRootMatchesPowerRule) {
  auto const r = lfi_quadrature([](double t) { return std::sqrt(t); }, 0.0, 1.0, kHalf, 4096);
  EXPECT_NEAR(r.value, std::tgamma(1.5) / std::tgamma(2.0), 1e-6);
  FractalSeries const basis = FractalSeries::basis(kHalf, 1);
  EXPECT_NEAR(r.value, definite_integral(basis, 0.0, 1.0), 1e-6);
}

TEST(LfiQuadrature, ClassicalIntegral) {
  auto const r = lfi_quadrature([](double t) { return t; }, 0.0, 1.0, kOne, 64);
  EXPECT_NEAR(r.value, 0.5, 1e-14);
}

TEST(LfiQuadrature, RefinementShrinksErrorEstimate) {
  for (double a : {0.3, 0.5, 0.9}) {
    FractionalOrder const alpha(a);
    for (std::size_t k = 1; k <= 8; ++k) {
      auto f = [&](double t) { return std::pow(t, k * a); };
      double previous = lfi_quadrature(f, 0.0, 1.0, alpha, 64).error_estimate;
      for (std::size_t panels = 128; panels <= 4096; panels *= 2) {
        double const current = lfi_quadrature(f, 0.0, 1.0, alpha, panels).error_estimate;
        // Integer k a gives a polynomial integrand, exact up to rounding.
        if (previous > 1e-13) {
          EXPECT_LE(current, previous) << a << ' ' << k << ' ' << panels;
        }
        previous = current;
      }
    }
  }
}

TEST(LfiQuadrature, AgreesWithSpectralIntegralOnRandomSeries) {
  std::mt19937_64 rng(67);
  for (double a : {0.5, 0.9, 1.0}) {
    FractionalOrder const alpha(a);
    for (int i = 0; i < 10; ++i) {
      double const center = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
      double const b = center + std::uniform_real_distribution<double>(0.2, 2.0)(rng);
      FractalSeries const f(alpha, center, random_coeffs(rng, 8, 0.0, 1.0));
      double const expected = definite_integral(f, center, b);
      auto const r = lfi_quadrature([&](double t) { return eval(f, t); }, center, b, alpha, 4096);
      EXPECT_LE(std::abs(r.value - expected), std::max(1e-6 * std::abs(expected), 1e-9))
          << a << ' ' << i;
    }
  }
}

TEST(LfiQuadrature, NonConvergenceFlag) {
  // Oscillation far below the grid resolution.
  auto const r = lfi_quadrature([](double t) { return std::sin(5000.0 * t); }, 0.0, 1.0,
                                kOne, 2);
  EXPECT_FALSE(r.converged);
}

TEST(LfiQuadrature, Errors) {
  auto f = [](double) { return 1.0; };
  EXPECT_THROW(lfi_quadrature(f, 1.0, 1.0, kHalf, 8), DomainError);
  EXPECT_THROW(lfi_quadrature(f, 0.0, 1.0, kHalf, 1), DomainError);
}

TEST(HolderExponent, PurePowers) {
  for (double beta : {0.3, 0.5, 0.8, 1.0}) {
    auto const h = holder_exponent([beta](double t) { return std::pow(t - 0.25, beta); }, 0.25,
                                   1e-6, 1e-2, 32);
    EXPECT_NEAR(h.exponent, beta, 0.02) << beta;
    EXPECT_GT(h.r_squared, 0.999);
  }
  auto const h = holder_exponent([](double t) { return std::sqrt(t); }, 0.0, 1e-6, 1e-2, 16);
  EXPECT_NEAR(h.exponent, 0.5, 0.01);
  EXPECT_EQ(h.delta_min, 1e-6);
  EXPECT_EQ(h.delta_max, 1e-2);
}

TEST(HolderExponent, SmoothPointIsOrderOne) {
  auto const h = holder_exponent([](double t) { return t * t + 3.0; }, 1.0, 1e-6, 1e-2, 32);
  EXPECT_NEAR(h.exponent, 1.0, 0.02);
}

TEST(HolderExponent, Errors) {
  auto constant = [](double) { return 2.0; };
  EXPECT_THROW(holder_exponent(constant, 0.0, 1e-6, 1e-2, 16), DegenerateError);
  auto f = [](double t) { return t; };
  EXPECT_THROW(holder_exponent(f, 0.0, 1e-2, 1e-6, 16), DomainError);
  EXPECT_THROW(holder_exponent(f, 0.0, 1e-6, 1e-2, 7), DomainError);
}

TEST(RiemannSumDiagnostic, ClassicalSumOfOne) {
  std::vector<std::size_t> const sizes = {1, 3, 10, 1000};
  for (auto const& row : riemann_sum_diagnostic([](double) { return 1.0; }, -0.5, 1.5, kOne, sizes)) {
    EXPECT_NEAR(row.sum, 2.0, 1e-13);
  }
}

TEST(RiemannSumDiagnostic, GrowthLaw) {
  std::vector<std::size_t> const sizes = {1, 4, 16, 100, 400};
  auto const rows = riemann_sum_diagnostic([](double) { return 1.0; }, 0.0, 1.0, kHalf, sizes);
  ASSERT_EQ(rows.size(), sizes.size());
  for (auto const& row : rows) {
    double const expected = std::sqrt(static_cast<double>(row.partition_size)) / std::tgamma(1.5);
    EXPECT_LT(relative_error(row.sum, expected), 1e-12) << row.partition_size;
  }
  EXPECT_NEAR(rows[4].sum / rows[3].sum, 2.0, 1e-12);
}

TEST(RiemannSumDiagnostic, GrowthLawProperty) {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 50; ++i) {
    double const a = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    double const lo = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
    double const hi = lo + std::uniform_real_distribution<double>(0.1, 3.0)(rng);
    std::vector<std::size_t> const sizes = {1, 7, 50, 333};
    auto const rows =
        riemann_sum_diagnostic([](double) { return 1.0; }, lo, hi, FractionalOrder(a), sizes);
    for (auto const& row : rows) {
      double const n = static_cast<double>(row.partition_size);
      double const expected =
          std::pow(n, 1.0 - a) * std::pow(hi - lo, a) / std::tgamma(1.0 + a);
      EXPECT_LT(relative_error(row.sum, expected), 1e-12);
    }
  }
}

TEST(RiemannSumDiagnostic, Errors) {
  auto f = [](double) { return 1.0; };
  std::vector<std::size_t> const decreasing = {4, 2};
  EXPECT_THROW(riemann_sum_diagnostic(f, 0.0, 1.0, kHalf, decreasing), DomainError);
  std::vector<std::size_t> const zero = {0};
  EXPECT_THROW(riemann_sum_diagnostic(f, 0.0, 1.0, kHalf, zero), DomainError);
}

}  // namespace
}  // namespace lfc
