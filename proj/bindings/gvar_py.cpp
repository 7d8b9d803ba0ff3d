// Python bindings for the gvar core.  Policy decisions, applied uniformly:
//
//  * Probability is an implementation detail — Python callers pass and
//    receive plain floats, and the range check happens where it always
//    happens, in the Probability constructor.
//  * std::span parameters become list/ndarray-friendly std::vector copies.
//  * Functions that write to std::ostream get two Python spellings: a
//    `..._str` form returning the text and (where it exists in C++) the
//    file-destination form.
//  * Every library exception maps onto a Python class derived from
//    gvar_engine.Error, so `except ge.Error` catches the whole taxonomy.

#include "gvar/arcal.hpp"
#include "gvar/backtest.hpp"
#include "gvar/gheat.hpp"
#include "gvar/gnormal.hpp"
#include "gvar/pipeline.hpp"
#include "gvar/series.hpp"
#include "gvar/windows.hpp"

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace gvar;

namespace {

// std::ostream writers, re-targeted at strings and paths.

template <typename Writer>
std::string to_text(Writer&& writer) {
    std::ostringstream out;
    writer(out);
    return out.str();
}

std::ifstream open_for_reading(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path + " for reading");
    return in;
}

std::ofstream open_for_writing(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Robust value-at-risk under volatility uncertainty: the "
              "G-normal distribution, its worst-case CDF and quantile, the "
              "G-heat finite-difference oracle, rolling-window estimation, "
              "AR(1) forecasting, and Kupiec/Christoffersen backtesting.";
    m.attr("__version__") = "0.1.0";
    m.attr("k_variance_floor") = k_variance_floor;

    // ---- exceptions ------------------------------------------------------
    // The base is registered first: translators run newest-first, so every
    // subclass gets matched before the catch-all Error translator.
    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", error);
    py::register_exception<DomainError>(m, "DomainError", error);
    py::register_exception<RangeError>(m, "RangeError", error);
    py::register_exception<ContractError>(m, "ContractError", error);
    py::register_exception<SingularFitError>(m, "SingularFitError", error);
    py::register_exception<IngestError>(m, "IngestError", error);
    py::register_exception<IoError>(m, "IoError", error);
    py::register_exception<InsufficientHistoryError>(
        m, "InsufficientHistoryError", error);

    // ---- numerics --------------------------------------------------------
    m.def("std_normal_pdf", &std_normal_pdf, py::arg("x"),
          "Standard normal density.");
    m.def(
        "std_normal_cdf", [](double x) { return double(std_normal_cdf(x)); },
        py::arg("x"), "Standard normal CDF.");
    m.def(
        "std_normal_quantile",
        [](double p) { return std_normal_quantile(Probability(p)); },
        py::arg("p"), "Standard normal quantile; p must lie strictly in (0, 1).");
    m.def(
        "chi2_df1_sf", [](double t) { return double(chi2_df1_sf(t)); },
        py::arg("t"), "Chi-squared(1) survival function P(X > t).");

    // ---- dates and series ------------------------------------------------
    py::class_<Date>(m, "Date",
                     "Calendar date; parses and prints strict ISO YYYY-MM-DD. "
                     "Plain strings convert implicitly wherever a Date is "
                     "expected.")
        .def(py::init(&Date::parse), py::arg("text"))
        .def_static("parse", &Date::parse, py::arg("text"))
        .def_readonly("year", &Date::year)
        .def_readonly("month", &Date::month)
        .def_readonly("day", &Date::day)
        .def("to_string", &Date::to_string)
        .def("next_day", &Date::next_day)
        .def("prev_day", &Date::prev_day)
        .def("__str__", &Date::to_string)
        .def("__repr__",
             [](const Date& d) { return "Date(\"" + d.to_string() + "\")"; })
        .def("__hash__",
             [](const Date& d) {
                 return d.year * 10000 + d.month * 100 + d.day;
             })
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def(py::self < py::self)
        .def(py::self <= py::self)
        .def(py::self > py::self)
        .def(py::self >= py::self);
    py::implicitly_convertible<py::str, Date>();

    py::class_<ReturnSeries>(m, "ReturnSeries",
                             "Date-indexed scaled log-returns "
                             "Z_t = 100 * ln(P_t / P_{t-1}).")
        .def(py::init<>())
        .def(py::init([](const std::vector<Date>& dates,
                         std::vector<double> values) {
                 ReturnSeries s;
                 s.dates = dates;
                 s.values = std::move(values);
                 s.validate();
                 return s;
             }),
             py::arg("dates"), py::arg("values"),
             "Build and validate a series; dates may be ISO strings.")
        .def_readwrite("dates", &ReturnSeries::dates)
        .def_readwrite("values", &ReturnSeries::values)
        .def("__len__", &ReturnSeries::size)
        .def("validate", &ReturnSeries::validate);

    // ---- G-normal distribution ---------------------------------------------
    py::class_<GNormalParams>(m, "GNormalParams",
                              "N(mu, [sigma_lo^2, sigma_hi^2]): a mean plus "
                              "an interval of variances.  Collapses to the "
                              "classical normal when sigma_lo == sigma_hi.")
        .def(py::init<double, double, double>(), py::arg("mu"),
             py::arg("sigma_lo"), py::arg("sigma_hi"))
        .def_readonly("mu", &GNormalParams::mu)
        .def_readonly("sigma_lo", &GNormalParams::sigma_lo)
        .def_readonly("sigma_hi", &GNormalParams::sigma_hi)
        .def("__repr__", [](const GNormalParams& p) {
            return "GNormalParams(mu=" + format_g6(p.mu) +
                   ", sigma_lo=" + format_g6(p.sigma_lo) +
                   ", sigma_hi=" + format_g6(p.sigma_hi) + ")";
        });

    m.def("g_function", &g_function, py::arg("a"), py::arg("params"),
          "The sublinear generator G(a) = (sigma_hi^2 a+ - sigma_lo^2 a-)/2.");
    m.def(
        "g_cdf",
        [](double x, const GNormalParams& p) { return double(g_cdf(x, p)); },
        py::arg("x"), py::arg("params"), "Worst-case CDF of the G-normal law.");
    m.def(
        "g_quantile",
        [](double alpha, const GNormalParams& p) {
            return g_quantile(Probability(alpha), p);
        },
        py::arg("alpha"), py::arg("params"),
        "Inverse of g_cdf; alpha strictly inside (0, 1).");
    m.def(
        "g_var",
        [](double alpha, const GNormalParams& p) {
            return g_var(Probability(alpha), p);
        },
        py::arg("alpha"), py::arg("params"),
        "Robust value-at-risk: -g_quantile(alpha, params).");

    // ---- G-heat oracle -----------------------------------------------------
    py::class_<GridSpec>(m, "GridSpec",
                         "Discretization for the G-heat solver: symmetric "
                         "domain of half_width_sigmas * sigma_hi, nx nodes, "
                         "dt from the CFL number unless overridden.")
        .def(py::init([](double half_width_sigmas, int nx, double cfl,
                         std::optional<double> dt) {
                 GridSpec spec;
                 spec.half_width_sigmas = half_width_sigmas;
                 spec.nx = nx;
                 spec.cfl = cfl;
                 spec.dt = dt;
                 return spec;
             }),
             py::arg("half_width_sigmas") = 8.0, py::arg("nx") = 1601,
             py::arg("cfl") = 0.9, py::arg("dt") = py::none())
        .def_readwrite("half_width_sigmas", &GridSpec::half_width_sigmas)
        .def_readwrite("nx", &GridSpec::nx)
        .def_readwrite("cfl", &GridSpec::cfl)
        .def_readwrite("dt", &GridSpec::dt);

    py::class_<PDEGrid>(m, "PDEGrid",
                        "Solution snapshot u(t_final, .) on a uniform grid.")
        .def_readonly("x_min", &PDEGrid::x_min)
        .def_readonly("x_max", &PDEGrid::x_max)
        .def_readonly("nx", &PDEGrid::nx)
        .def_readonly("dx", &PDEGrid::dx)
        .def_readonly("dt", &PDEGrid::dt)
        .def_readonly("u", &PDEGrid::u)
        .def("value_at", &PDEGrid::value_at, py::arg("x"),
             "Linear interpolation; x outside the domain raises RangeError.");

    m.def("unit_step", &unit_step, py::arg("x"),
          "Indicator of [0, inf) with the symmetric value 1/2 at 0.");
    m.def("solve_gheat", &solve_gheat, py::arg("params"), py::arg("phi0"),
          py::arg("t_final"), py::arg("spec") = GridSpec{},
          "March d_t u = G(d^2_xx u) from u(0,.) = phi0 to t_final with the "
          "explicit monotone scheme.  params.mu must be 0.");
    m.def(
        "numeric_g_cdf",
        [](double x, const GNormalParams& p, const GridSpec& spec) {
            return double(numeric_g_cdf(x, p, spec));
        },
        py::arg("x"), py::arg("params"), py::arg("spec") = GridSpec{},
        "Worst-case CDF through the PDE instead of the closed form; x must "
        "fall in the interior 80% of the grid.");
    m.def("expectation_of", &expectation_of, py::arg("phi"), py::arg("params"),
          py::arg("spec") = GridSpec{},
          "Sublinear expectation E_G[phi(X)] via the PDE; phi should be "
          "Lipschitz and bounded on the domain.");

    // ---- rolling-window estimation -----------------------------------------
    py::class_<WindowConfig>(m, "WindowConfig",
                             "K windows of width L, shifted one day apart; "
                             "N is the AR calibration history length.")
        .def(py::init([](int L, int K, int N) {
                 WindowConfig cfg;
                 cfg.L = L;
                 cfg.K = K;
                 cfg.N = N;
                 return cfg;
             }),
             py::arg("L") = 10, py::arg("K") = 5, py::arg("N") = 100)
        .def_readwrite("L", &WindowConfig::L)
        .def_readwrite("K", &WindowConfig::K)
        .def_readwrite("N", &WindowConfig::N)
        .def("validate", &WindowConfig::validate)
        .def("__repr__", [](const WindowConfig& c) {
            return "WindowConfig(L=" + std::to_string(c.L) +
                   ", K=" + std::to_string(c.K) +
                   ", N=" + std::to_string(c.N) + ")";
        });

    py::class_<LocalEstimates>(m, "LocalEstimates",
                               "Per-date estimates: latest-window mean and "
                               "the min/max of the K window variances.")
        .def(py::init([](const Date& date, double r_hat, double var_lo_hat,
                         double var_hi_hat) {
                 return LocalEstimates{date, r_hat, var_lo_hat, var_hi_hat};
             }),
             py::arg("date"), py::arg("r_hat"), py::arg("var_lo_hat"),
             py::arg("var_hi_hat"))
        .def_readwrite("date", &LocalEstimates::date)
        .def_readwrite("r_hat", &LocalEstimates::r_hat)
        .def_readwrite("var_lo_hat", &LocalEstimates::var_lo_hat)
        .def_readwrite("var_hi_hat", &LocalEstimates::var_hi_hat)
        .def("__repr__", [](const LocalEstimates& e) {
            return "LocalEstimates(" + e.date.to_string() +
                   ", r_hat=" + format_g6(e.r_hat) +
                   ", var_lo_hat=" + format_g6(e.var_lo_hat) +
                   ", var_hi_hat=" + format_g6(e.var_hi_hat) + ")";
        });

    m.def("window_mean", &window_mean, py::arg("series"), py::arg("t"),
          py::arg("j"), py::arg("L"),
          "Mean of the L values at indices t-j-L+1 .. t-j.");
    m.def("window_variance", &window_variance, py::arg("series"), py::arg("t"),
          py::arg("j"), py::arg("L"),
          "Unbiased sample variance of the same window.");
    m.def("local_estimates", &local_estimates, py::arg("series"), py::arg("t"),
          py::arg("config"), "Full per-date estimate; needs t >= L+K-2.");
    m.def("rolling_estimates", &rolling_estimates, py::arg("series"),
          py::arg("t_start"), py::arg("t_end"), py::arg("config"),
          "local_estimates over every index in [t_start, t_end].");
    m.def(
        "phi_max_mean",
        [](const std::vector<double>& samples,
           const std::function<double(double)>& phi, int block_size) {
            return phi_max_mean(samples, phi, block_size);
        },
        py::arg("samples"), py::arg("phi"), py::arg("block_size"),
        "(min, max) of block means of phi(sample); incomplete trailing "
        "blocks are discarded.");

    // ---- AR(1) calibration ---------------------------------------------------
    py::class_<ARFit>(m, "ARFit",
                      "One OLS line y_t = intercept + slope * y_{t-1}.")
        .def_readonly("intercept", &ARFit::intercept)
        .def_readonly("slope", &ARFit::slope)
        .def_readonly("residuals", &ARFit::residuals)
        .def_readonly("n_pairs", &ARFit::n_pairs)
        .def("__repr__", [](const ARFit& f) {
            return "ARFit(intercept=" + format_g6(f.intercept) +
                   ", slope=" + format_g6(f.slope) +
                   ", n_pairs=" + std::to_string(f.n_pairs) + ")";
        });

    py::class_<ARCoefficients>(m, "ARCoefficients",
                               "The three per-series fits: means, upper "
                               "variances, lower variances.")
        .def_readonly("mean_fit", &ARCoefficients::mean_fit)
        .def_readonly("var_hi_fit", &ARCoefficients::var_hi_fit)
        .def_readonly("var_lo_fit", &ARCoefficients::var_lo_fit);

    py::class_<Forecast>(m, "Forecast",
                         "One-step-ahead parameter forecast; always "
                         "0 < var_lo_tilde <= var_hi_tilde.")
        .def(py::init([](const Date& date, double r_tilde, double var_lo_tilde,
                         double var_hi_tilde) {
                 return Forecast{date, r_tilde, var_hi_tilde, var_lo_tilde};
             }),
             py::arg("date"), py::arg("r_tilde"), py::arg("var_lo_tilde"),
             py::arg("var_hi_tilde"))
        .def_readwrite("date", &Forecast::date)
        .def_readwrite("r_tilde", &Forecast::r_tilde)
        .def_readwrite("var_lo_tilde", &Forecast::var_lo_tilde)
        .def_readwrite("var_hi_tilde", &Forecast::var_hi_tilde)
        .def("__repr__", [](const Forecast& f) {
            return "Forecast(" + f.date.to_string() +
                   ", r_tilde=" + format_g6(f.r_tilde) +
                   ", var_lo_tilde=" + format_g6(f.var_lo_tilde) +
                   ", var_hi_tilde=" + format_g6(f.var_hi_tilde) + ")";
        });

    m.def(
        "fit_ar1",
        [](const std::vector<double>& values) { return fit_ar1(values); },
        py::arg("values"),
        "OLS of y_t on (1, y_{t-1}); needs at least three values.");
    m.def(
        "calibrate",
        [](const std::vector<LocalEstimates>& history) {
            return calibrate(history);
        },
        py::arg("history"),
        "fit_ar1 over each component series of the history.");
    m.def("forecast_one_step", &forecast_one_step, py::arg("coefficients"),
          py::arg("latest"), py::arg("target_date"),
          "Apply the fitted lines to the latest estimates and stamp the "
          "caller's next trading date.");

    // ---- backtesting ----------------------------------------------------------
    py::class_<ViolationCounts>(m, "ViolationCounts",
                                "Transition counts of the violation "
                                "indicator over consecutive date pairs.")
        .def(py::init([](long long m00, long long m01, long long m10,
                         long long m11) {
                 return ViolationCounts{m00, m01, m10, m11};
             }),
             py::arg("m00") = 0, py::arg("m01") = 0, py::arg("m10") = 0,
             py::arg("m11") = 0)
        .def_readwrite("m00", &ViolationCounts::m00)
        .def_readwrite("m01", &ViolationCounts::m01)
        .def_readwrite("m10", &ViolationCounts::m10)
        .def_readwrite("m11", &ViolationCounts::m11)
        .def("m0", &ViolationCounts::m0)
        .def("m1", &ViolationCounts::m1)
        .def("pairs", &ViolationCounts::pairs)
        .def("__repr__", [](const ViolationCounts& c) {
            return "ViolationCounts(m00=" + std::to_string(c.m00) +
                   ", m01=" + std::to_string(c.m01) +
                   ", m10=" + std::to_string(c.m10) +
                   ", m11=" + std::to_string(c.m11) + ")";
        });

    py::class_<TestResult>(m, "TestResult",
                           "A likelihood-ratio statistic and its chi^2(1) "
                           "p-value.")
        .def_readonly("statistic", &TestResult::statistic)
        .def_property_readonly(
            "p_value", [](const TestResult& r) { return double(r.p_value); })
        .def("__repr__", [](const TestResult& r) {
            return "TestResult(statistic=" + format_g6(r.statistic) +
                   ", p_value=" + format_g6(double(r.p_value)) + ")";
        });

    py::class_<BacktestReport>(m, "BacktestReport",
                               "Everything the summary row reports about one "
                               "forecast sequence.")
        .def_readonly("counts", &BacktestReport::counts)
        .def_property_readonly(
            "alpha_hat",
            [](const BacktestReport& r) { return double(r.alpha_hat); })
        .def_readonly("pi01", &BacktestReport::pi01)
        .def_readonly("pi11", &BacktestReport::pi11)
        .def_readonly("pi", &BacktestReport::pi)
        .def_readonly("t1", &BacktestReport::t1)
        .def_readonly("t2", &BacktestReport::t2)
        .def_property_readonly(
            "lr_uc", [](const BacktestReport& r) { return double(r.lr_uc); })
        .def_property_readonly(
            "lr_ind", [](const BacktestReport& r) { return double(r.lr_ind); })
        .def_readonly("mean_var", &BacktestReport::mean_var)
        .def_readonly("horizon", &BacktestReport::horizon);

    m.def(
        "count_violations",
        [](const std::vector<double>& returns,
           const std::vector<double>& var_forecasts) {
            return count_violations(returns, var_forecasts);
        },
        py::arg("returns"), py::arg("var_forecasts"),
        "Classify consecutive pairs; a violation is Z < -VaR, strictly.");
    m.def(
        "lr_uc",
        [](const ViolationCounts& counts, double alpha) {
            return lr_uc(counts, Probability(alpha));
        },
        py::arg("counts"), py::arg("alpha"),
        "Kupiec unconditional-coverage test.");
    m.def("lr_ind", &lr_ind, py::arg("counts"),
          "Christoffersen independence test.");
    m.def(
        "build_report",
        [](const std::vector<double>& returns,
           const std::vector<double>& var_forecasts, double alpha) {
            return build_report(returns, var_forecasts, Probability(alpha));
        },
        py::arg("returns"), py::arg("var_forecasts"), py::arg("alpha"),
        "Full report for one aligned forecast sequence.");

    // ---- the engine ------------------------------------------------------------
    py::class_<EngineConfig>(m, "EngineConfig",
                             "Run settings; K/L/N address the embedded window "
                             "config, start/end take dates or ISO strings.")
        .def(py::init<>())
        .def_property(
            "alpha", [](const EngineConfig& c) { return double(c.alpha); },
            [](EngineConfig& c, double v) { c.alpha = Probability(v); })
        .def_property(
            "K", [](const EngineConfig& c) { return c.window.K; },
            [](EngineConfig& c, int v) { c.window.K = v; })
        .def_property(
            "L", [](const EngineConfig& c) { return c.window.L; },
            [](EngineConfig& c, int v) { c.window.L = v; })
        .def_property(
            "N", [](const EngineConfig& c) { return c.window.N; },
            [](EngineConfig& c, int v) { c.window.N = v; })
        .def_property(
            "start", [](const EngineConfig& c) { return c.start; },
            [](EngineConfig& c, std::optional<Date> d) { c.start = d; })
        .def_property(
            "end", [](const EngineConfig& c) { return c.end; },
            [](EngineConfig& c, std::optional<Date> d) { c.end = d; })
        .def_readwrite("k_min", &EngineConfig::k_min)
        .def_readwrite("k_max", &EngineConfig::k_max)
        .def_readwrite("l_min", &EngineConfig::l_min)
        .def_readwrite("l_max", &EngineConfig::l_max)
        .def_readwrite("baseline", &EngineConfig::baseline)
        .def_readwrite("seed", &EngineConfig::seed)
        .def_readwrite("identity_ar", &EngineConfig::identity_ar)
        .def_readwrite("refit_daily", &EngineConfig::refit_daily)
        .def("validate", &EngineConfig::validate);

    py::class_<ForecastRecord>(m, "ForecastRecord",
                               "One forecast date, fully resolved: forecast "
                               "parameters, the VaR they imply, and the "
                               "realized return.")
        .def_readonly("date", &ForecastRecord::date)
        .def_readonly("forecast", &ForecastRecord::forecast)
        .def_readonly("g_var", &ForecastRecord::g_var)
        .def_readonly("realized_return", &ForecastRecord::realized_return)
        .def("__repr__", [](const ForecastRecord& r) {
            return "ForecastRecord(" + r.date.to_string() +
                   ", g_var=" + format_g6(r.g_var) +
                   ", realized_return=" + format_g6(r.realized_return) + ")";
        });

    py::class_<GridCell>(m, "GridCell",
                         "One cell of the grid-search score table; failed "
                         "cells keep their error message.")
        .def_readonly("K", &GridCell::K)
        .def_readonly("L", &GridCell::L)
        .def_readonly("ok", &GridCell::ok)
        .def_readonly("error", &GridCell::error)
        .def_readonly("alpha_hat", &GridCell::alpha_hat)
        .def_readonly("lr_uc_p", &GridCell::lr_uc_p)
        .def_readonly("gap", &GridCell::gap)
        .def_readonly("horizon", &GridCell::horizon);

    m.def("run_gvar", &run_gvar, py::arg("series"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>(),
          "Forecast every date in the configured range and price its VaR "
          "from the worst-case quantile.");
    m.def("gaussian_var_baseline", &gaussian_var_baseline, py::arg("series"),
          py::arg("config"), py::call_guard<py::gil_scoped_release>(),
          "Classical single-sigma comparator over the same dates.");
    m.def(
        "grid_search",
        [](const ReturnSeries& series, const EngineConfig& cfg) {
            py::gil_scoped_release release;
            return grid_search(series, cfg);
        },
        py::arg("series"), py::arg("config"),
        "The (K, L) pair minimizing |alpha_hat - alpha| over the configured "
        "ranges.");
    m.def(
        "grid_search_table",
        [](const ReturnSeries& series, const EngineConfig& cfg) {
            std::vector<GridCell> cells;
            std::pair<int, int> selected;
            {
                py::gil_scoped_release release;
                selected = grid_search(series, cfg, &cells);
            }
            return py::make_tuple(selected, std::move(cells));
        },
        py::arg("series"), py::arg("config"),
        "grid_search plus the full score table, ((K, L), [GridCell...]).");
    m.def(
        "simulate_regime_switching",
        [](std::size_t n, double sigma_lo, double sigma_hi, double mu,
           double switch_prob, std::uint64_t seed) {
            const Probability p(switch_prob);
            py::gil_scoped_release release;
            return simulate_regime_switching(n, sigma_lo, sigma_hi, mu, p,
                                             seed);
        },
        py::arg("n"), py::arg("sigma_lo"), py::arg("sigma_hi"),
        py::arg("mu") = 0.0, py::arg("switch_prob") = 0.02, py::arg("seed") = 0,
        "Two-state volatility chain, bit-reproducible per seed.");

    // ---- ingestion and reports -----------------------------------------------
    m.def("load_prices", &load_prices, py::arg("path"),
          py::call_guard<py::gil_scoped_release>(),
          "Read a date,close price CSV and convert to scaled log-returns.");
    m.def(
        "parse_prices_text",
        [](const std::string& text, const std::string& origin) {
            std::istringstream in(text);
            return parse_prices(in, origin);
        },
        py::arg("text"), py::arg("origin") = "<string>",
        "load_prices over in-memory text.");
    m.def(
        "write_price_csv",
        [](const ReturnSeries& series, const std::string& path) {
            auto out = open_for_writing(path);
            write_price_csv(series, out);
        },
        py::arg("series"), py::arg("path"),
        "Write a price CSV that reproduces the series under ingestion.");
    m.def(
        "price_csv_str",
        [](const ReturnSeries& series) {
            return to_text([&](std::ostream& out) {
                write_price_csv(series, out);
            });
        },
        py::arg("series"), "write_price_csv into a string.");
    m.def(
        "report_from_records",
        [](const std::vector<ForecastRecord>& records, double alpha) {
            return report_from_records(records, Probability(alpha));
        },
        py::arg("records"), py::arg("alpha"),
        "Backtest a record sequence at risk level alpha.");
    m.def(
        "forecast_table_str",
        [](const std::vector<ForecastRecord>& records) {
            return to_text([&](std::ostream& out) {
                write_forecast_table(records, out);
            });
        },
        py::arg("records"),
        "The per-date table (6 significant digits) as a string.");
    m.def(
        "summary_str",
        [](const BacktestReport& report) {
            return to_text(
                [&](std::ostream& out) { write_summary(report, out); });
        },
        py::arg("report"), "The one-row summary table as a string.");
    m.def(
        "emit_report",
        [](const std::vector<ForecastRecord>& records,
           const BacktestReport& report, const std::string& destination) {
            emit_report(records, report, destination);
        },
        py::arg("records"), py::arg("report"), py::arg("destination"),
        "Write the per-date table, a blank line, and the summary to a file.");
    m.def(
        "parse_forecast_table_text",
        [](const std::string& text) {
            std::istringstream in(text);
            return parse_forecast_table(in);
        },
        py::arg("text"),
        "Re-ingest a per-date table; stops at the blank separator line.");
    m.def(
        "load_forecast_table",
        [](const std::string& path) {
            auto in = open_for_reading(path);
            return parse_forecast_table(in);
        },
        py::arg("path"), "parse_forecast_table over a file.");

    // ---- configuration ---------------------------------------------------------
    m.def(
        "parse_config_text",
        [](const std::string& text, const std::string& origin) {
            std::istringstream in(text);
            return parse_config(in, origin);
        },
        py::arg("text"), py::arg("origin") = "<string>",
        "Parse the flat key = value config format from in-memory text.");
    m.def("parse_config_file", &parse_config_file, py::arg("path"),
          "Parse a config file; missing file raises IoError.");
    m.def("format_g6", &format_g6, py::arg("v"),
          "Shortest-form rendering at 6 significant digits used by all "
          "tables.");
}
