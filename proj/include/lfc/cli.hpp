#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lfc/errors.hpp"
#include "lfc/format.hpp"
#include "lfc/fractal_series.hpp"
#include "lfc/numeric_backends.hpp"
#include "lfc/special_functions.hpp"
#include "lfc/taylor.hpp"

namespace lfc::cli {

enum class ExitCode : int { kSuccess = 0, kInvalid = 1, kNonConvergence = 2 };

enum class OutputFormat { kCsv, kJson };

// Output options shared by every subcommand.
struct OutputOptions {
  std::string format;
  std::string path;
};

// Where a subcommand reads its series from: a JSON file or a generated family.
struct SeriesSource {
  std::string file;
  std::string family;
  double alpha = 0.0;
  std::size_t family_degree = 0;
};

namespace detail {

inline void add_output_options(CLI::App& sub, OutputOptions& output,
                               std::string default_format) {
  output.format = std::move(default_format);
  sub.add_option("--format", output.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub.add_option("--output", output.path, "Write the report to this file");
}

inline void add_series_options(CLI::App& sub, SeriesSource& source) {
  auto* file = sub.add_option("--series", source.file, "Series JSON file");
  auto* family = sub.add_option("--family", source.family, "Generated series family")
                     ->check(CLI::IsMember({"e_alpha"}));
  file->excludes(family);
  sub.add_option("--alpha", source.alpha, "Order of the generated family")
      ->needs(family);
  sub.add_option("--family-degree", source.family_degree,
                 "Degree of the generated family")
      ->needs(family);
}

inline FractalSeries load_series(SeriesSource const& source) {
  if (!source.family.empty()) {
    return FractalSeries::mittag_leffler(FractionalOrder(source.alpha),
                                         source.family_degree);
  }
  if (source.file.empty()) {
    throw DomainError("a series is required: pass --series FILE or --family e_alpha");
  }
  std::ifstream in(source.file);
  if (!in) {
    throw DomainError("cannot open series file " + source.file);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (nlohmann::json::exception const& e) {
    throw DomainError("malformed series file " + source.file + ": " + e.what());
  }
  return series_from_json(j);
}

inline std::string json_text(nlohmann::json const& j) { return j.dump(2) + "\n"; }

inline std::string optional_cell(std::optional<double> v) {
  return v ? format_double(*v) : std::string();
}

inline nlohmann::json optional_json(std::optional<double> v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

inline std::string series_csv(FractalSeries const& s) {
  std::ostringstream out;
  out << "k,coefficient\n";
  for (std::size_t k = 0; k <= s.degree(); ++k) {
    out << k << ',' << format_double(s.coeff(k)) << '\n';
  }
  return out.str();
}

inline void emit(OutputOptions const& output, std::string const& text, std::ostream& out) {
  if (output.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(output.path, std::ios::binary);
  if (!file || !(file << text)) {
    throw DomainError("cannot write output file " + output.path);
  }
}

inline bool csv(OutputOptions const& output) { return output.format == "csv"; }

}  // namespace detail

// Parses argv (without the program name) and runs one subcommand. The
// report goes to `out` or --output; diagnostics go to `err`. Exit codes:
// 0 success, 1 usage/domain/validation error, 2 numerical non-convergence.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local fractional calculus on fractal power series", "lfc"};
  app.require_subcommand(1);

  // ml
  OutputOptions ml_out;
  double ml_alpha = 0.0;
  double ml_x = 0.0;
  double ml_tol = 1e-14;
  std::size_t ml_cap = kMittagLefflerTermCap;
  auto* ml = app.add_subcommand("ml", "Mittag-Leffler function E_alpha(x^alpha)");
  ml->add_option("--alpha", ml_alpha, "Order in (0, 1]")->required();
  ml->add_option("--x", ml_x, "Argument x >= 0")->required();
  ml->add_option("--tol", ml_tol, "Relative truncation tolerance")->capture_default_str();
  ml->add_option("--term-cap", ml_cap, "Maximum number of series terms")
      ->capture_default_str();
  detail::add_output_options(*ml, ml_out, "json");

  // taylor
  OutputOptions taylor_out;
  SeriesSource taylor_src;
  double taylor_x0 = 0.0;
  std::size_t taylor_degree = 0;
  std::optional<double> taylor_at;
  auto* taylor = app.add_subcommand("taylor", "Generalized Taylor polynomial");
  detail::add_series_options(*taylor, taylor_src);
  taylor->add_option("--x0", taylor_x0, "Expansion point")->required();
  taylor->add_option("--degree", taylor_degree, "Taylor degree N")->required();
  taylor->add_option("--at", taylor_at, "Evaluation point; bounds the remainder on [x0, at]");
  detail::add_output_options(*taylor, taylor_out, "json");

  // deriv
  OutputOptions deriv_out;
  SeriesSource deriv_src;
  std::size_t deriv_k = 1;
  auto* deriv = app.add_subcommand("deriv", "Sequential local fractional derivative");
  detail::add_series_options(*deriv, deriv_src);
  deriv->add_option("--k", deriv_k, "Number of derivative applications")
      ->capture_default_str();
  detail::add_output_options(*deriv, deriv_out, "json");

  // integrate
  OutputOptions integrate_out;
  SeriesSource integrate_src;
  std::optional<double> integrate_a;
  std::optional<double> integrate_b;
  auto* integrate = app.add_subcommand("integrate", "Local fractional integral");
  detail::add_series_options(*integrate, integrate_src);
  auto* a_opt = integrate->add_option("--a", integrate_a, "Lower limit");
  auto* b_opt = integrate->add_option("--b", integrate_b, "Upper limit");
  a_opt->needs(b_opt);
  b_opt->needs(a_opt);
  detail::add_output_options(*integrate, integrate_out, "json");

  // mvt
  OutputOptions mvt_out;
  SeriesSource mvt_src;
  double mvt_x0 = 0.0;
  double mvt_x = 0.0;
  auto* mvt = app.add_subcommand("mvt", "Mean value point of the local fractional derivative");
  detail::add_series_options(*mvt, mvt_src);
  mvt->add_option("--x0", mvt_x0, "Left point")->required();
  mvt->add_option("--x", mvt_x, "Right point")->required();
  detail::add_output_options(*mvt, mvt_out, "json");

  // converge
  OutputOptions converge_out;
  SeriesSource converge_src;
  double converge_x0 = 0.0;
  double converge_x = 0.0;
  std::size_t converge_nmax = 1;
  auto* converge = app.add_subcommand("converge", "Taylor convergence table");
  detail::add_series_options(*converge, converge_src);
  converge->add_option("--x0", converge_x0, "Expansion point")->required();
  converge->add_option("--x", converge_x, "Evaluation point")->required();
  converge->add_option("--nmax", converge_nmax, "Largest Taylor degree")->required();
  detail::add_output_options(*converge, converge_out, "csv");

  // holder
  OutputOptions holder_out;
  std::string holder_expr;
  double holder_x0 = 0.0;
  double holder_dmin = 1e-6;
  double holder_dmax = 1e-2;
  std::size_t holder_samples = 32;
  auto* holder = app.add_subcommand("holder", "Hoelder exponent estimate of |t|^beta");
  holder->add_option("--expr", holder_expr, "Function, pow:BETA for |t|^BETA")->required();
  holder->add_option("--x0", holder_x0, "Point of estimation")->required();
  holder->add_option("--delta-min", holder_dmin, "Smallest offset")->capture_default_str();
  holder->add_option("--delta-max", holder_dmax, "Largest offset")->capture_default_str();
  holder->add_option("--samples", holder_samples, "Number of offsets")->capture_default_str();
  detail::add_output_options(*holder, holder_out, "json");

  // riemann-demo
  OutputOptions riemann_out;
  double riemann_alpha = 0.0;
  std::vector<std::size_t> riemann_sizes;
  double riemann_a = 0.0;
  double riemann_b = 1.0;
  auto* riemann = app.add_subcommand("riemann-demo",
                                     "Literal uniform-partition sum for f = 1");
  riemann->add_option("--alpha", riemann_alpha, "Order in (0, 1]")->required();
  riemann->add_option("--sizes", riemann_sizes, "Partition sizes N1,N2,...")
      ->required()
      ->delimiter(',');
  riemann->add_option("--a", riemann_a, "Left end")->capture_default_str();
  riemann->add_option("--b", riemann_b, "Right end")->capture_default_str();
  detail::add_output_options(*riemann, riemann_out, "csv");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return static_cast<int>(ExitCode::kSuccess);
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return static_cast<int>(ExitCode::kInvalid);
  }

  try {
    if (ml->parsed()) {
      auto const r = mittag_leffler(FractionalOrder(ml_alpha), ml_x, ml_tol, ml_cap);
      if (detail::csv(ml_out)) {
        detail::emit(ml_out,
                     "alpha,x,value,terms_used,tail_bound\n" + format_double(ml_alpha) +
                         ',' + format_double(r.x) + ',' + format_double(r.value) + ',' +
                         std::to_string(r.terms_used) + ',' +
                         format_double(r.tail_bound) + '\n',
                     out);
      } else {
        detail::emit(ml_out,
                     detail::json_text({{"alpha", ml_alpha},
                                        {"x", r.x},
                                        {"value", r.value},
                                        {"terms_used", r.terms_used},
                                        {"tail_bound", r.tail_bound}}),
                     out);
      }
    } else if (taylor->parsed()) {
      FractalSeries const f = detail::load_series(taylor_src);
      TaylorResult const r = taylor_at ? taylor_expand(f, taylor_x0, taylor_degree, *taylor_at)
                                       : taylor_polynomial(f, taylor_x0, taylor_degree);
      std::optional<double> value;
      if (taylor_at) {
        value = eval(r.polynomial, *taylor_at);
      }
      if (detail::csv(taylor_out)) {
        std::ostringstream text;
        text << "degree,x0,at,value,remainder_bound,xi,theta";
        for (std::size_t k = 0; k <= r.polynomial.degree(); ++k) {
          text << ",c" << k;
        }
        text << '\n'
             << r.degree << ',' << format_double(taylor_x0) << ','
             << detail::optional_cell(taylor_at) << ',' << detail::optional_cell(value)
             << ',' << format_double(r.remainder_bound) << ','
             << detail::optional_cell(r.xi) << ',' << detail::optional_cell(r.theta);
        for (double c : r.polynomial.coeffs()) {
          text << ',' << format_double(c);
        }
        text << '\n';
        detail::emit(taylor_out, text.str(), out);
      } else {
        nlohmann::json j = to_json(r);
        j["at"] = detail::optional_json(taylor_at);
        j["value"] = detail::optional_json(value);
        detail::emit(taylor_out, detail::json_text(j), out);
      }
    } else if (deriv->parsed()) {
      FractalSeries const d = sequential_derivative(detail::load_series(deriv_src), deriv_k);
      detail::emit(deriv_out,
                   detail::csv(deriv_out) ? detail::series_csv(d)
                                          : detail::json_text(to_json(d)),
                   out);
    } else if (integrate->parsed()) {
      FractalSeries const f = detail::load_series(integrate_src);
      if (integrate_a) {
        double const value = definite_integral(f, *integrate_a, *integrate_b);
        detail::emit(integrate_out,
                     detail::csv(integrate_out)
                         ? "a,b,value\n" + format_double(*integrate_a) + ',' +
                               format_double(*integrate_b) + ',' + format_double(value) +
                               '\n'
                         : detail::json_text(
                               {{"a", *integrate_a}, {"b", *integrate_b}, {"value", value}}),
                     out);
      } else {
        FractalSeries const g = lf_integral(f);
        detail::emit(integrate_out,
                     detail::csv(integrate_out) ? detail::series_csv(g)
                                                : detail::json_text(to_json(g)),
                     out);
      }
    } else if (mvt->parsed()) {
      FractalSeries const f = detail::load_series(mvt_src);
      MeanValuePoint const p = find_mean_value_point(f, mvt_x0, mvt_x, 0);
      detail::emit(mvt_out,
                   detail::csv(mvt_out)
                       ? "x0,x,xi,theta,residual\n" + format_double(mvt_x0) + ',' +
                             format_double(mvt_x) + ',' + format_double(p.xi) + ',' +
                             format_double(p.theta) + ',' + format_double(p.residual) +
                             '\n'
                       : detail::json_text({{"x0", mvt_x0},
                                            {"x", mvt_x},
                                            {"xi", p.xi},
                                            {"theta", p.theta},
                                            {"residual", p.residual}}),
                   out);
    } else if (converge->parsed()) {
      ConvergenceTable const table = convergence_table(
          detail::load_series(converge_src), converge_x0, converge_x, converge_nmax);
      detail::emit(converge_out,
                   detail::csv(converge_out) ? to_csv(table)
                                             : detail::json_text(to_json(table)),
                   out);
    } else if (holder->parsed()) {
      constexpr std::string_view prefix = "pow:";
      if (!holder_expr.starts_with(prefix)) {
        throw DomainError("unsupported --expr '" + holder_expr + "', expected pow:BETA");
      }
      double beta = 0.0;
      try {
        std::size_t used = 0;
        std::string const number = holder_expr.substr(prefix.size());
        beta = std::stod(number, &used);
        if (used != number.size()) {
          throw std::invalid_argument(number);
        }
      } catch (std::logic_error const&) {
        throw DomainError("cannot parse exponent in --expr '" + holder_expr + "'");
      }
      if (!(beta > 0.0)) {
        throw DomainError("pow:BETA needs BETA > 0");
      }
      auto const h = holder_exponent([beta](double t) { return std::pow(std::abs(t), beta); },
                                     holder_x0, holder_dmin, holder_dmax, holder_samples);
      detail::emit(holder_out,
                   detail::csv(holder_out)
                       ? "exponent,r_squared,delta_min,delta_max\n" +
                             format_double(h.exponent) + ',' + format_double(h.r_squared) +
                             ',' + format_double(h.delta_min) + ',' +
                             format_double(h.delta_max) + '\n'
                       : detail::json_text({{"exponent", h.exponent},
                                            {"r_squared", h.r_squared},
                                            {"delta_min", h.delta_min},
                                            {"delta_max", h.delta_max}}),
                   out);
    } else if (riemann->parsed()) {
      auto const rows = riemann_sum_diagnostic([](double) { return 1.0; }, riemann_a,
                                               riemann_b, FractionalOrder(riemann_alpha),
                                               riemann_sizes);
      if (detail::csv(riemann_out)) {
        std::ostringstream text;
        text << "N,sum\n";
        for (auto const& row : rows) {
          text << row.partition_size << ',' << format_double(row.sum) << '\n';
        }
        detail::emit(riemann_out, text.str(), out);
      } else {
        nlohmann::json j = nlohmann::json::array();
        for (auto const& row : rows) {
          j.push_back({{"N", row.partition_size}, {"sum", row.sum}});
        }
        detail::emit(riemann_out, detail::json_text(j), out);
      }
    }
  } catch (NonConvergenceError const& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kNonConvergence);
  } catch (Error const& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::kInvalid);
  }
  return static_cast<int>(ExitCode::kSuccess);
}

}  // namespace lfc::cli
