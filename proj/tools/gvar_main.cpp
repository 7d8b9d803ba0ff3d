// gvar — command-line front end of the G-VaR risk engine.
//
// Subcommands: ingest, forecast, backtest, grid, simulate, pde-check,
// baseline.  Every engine knob can come from a flat `key = value` config
// file (--config) and be overridden per-flag; precedence is CLI > file >
// built-in default, resolved field by field.
//
// Exit codes: 0 success; 2 configuration or domain error (including bad
// flags); 3 ingestion or I/O error; 4 insufficient history.  Anything else
// escaping to main is a bug and exits 1.

#include "gvar/gheat.hpp"
#include "gvar/pipeline.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace gvar;

// Writes through `writer` either to stdout or to --output, with stream
// failures surfaced as IoError (exit code 3).
void with_output(const std::string& path,
                 const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
        std::cout.flush();
        if (!std::cout) {
            throw IoError("write to stdout failed");
        }
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write to " + path);
    }
    writer(out);
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path);
    }
}

// One bundle of engine options shared by the data-driven subcommands.  The
// CLI::Option handles let resolve() distinguish "flag given" from "default",
// so file-config values survive unless explicitly overridden.
struct EngineCli {
    std::string config_path;
    double alpha = 0.05;
    int K = 5;
    int L = 10;
    int N = 100;
    std::string start;
    std::string end;
    std::uint64_t seed = 0;

    CLI::Option* alpha_opt = nullptr;
    CLI::Option* k_opt = nullptr;
    CLI::Option* l_opt = nullptr;
    CLI::Option* n_opt = nullptr;
    CLI::Option* start_opt = nullptr;
    CLI::Option* end_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* identity_opt = nullptr;
    CLI::Option* fit_once_opt = nullptr;
};

void add_engine_options(CLI::App* sub, EngineCli& e) {
    sub->add_option("--config", e.config_path,
                    "flat key = value config file; flags override it");
    e.alpha_opt = sub->add_option("--alpha", e.alpha, "risk level in (0, 0.5]");
    e.k_opt = sub->add_option("-K,--windows", e.K, "number of shifted windows");
    e.l_opt = sub->add_option("-L,--width", e.L, "window width");
    e.n_opt = sub->add_option("-N,--history", e.N, "AR calibration history length");
    e.start_opt = sub->add_option("--start", e.start,
                                  "first forecast date, YYYY-MM-DD (inclusive)");
    e.end_opt = sub->add_option("--end", e.end,
                                "last forecast date, YYYY-MM-DD (inclusive)");
    e.seed_opt = sub->add_option("--seed", e.seed, "RNG seed for synthetic runs");
    e.identity_opt = sub->add_flag(
        "--identity-ar", "forecast with the raw local estimates (no AR fit)");
    e.fit_once_opt = sub->add_flag(
        "--fit-once", "calibrate the AR lines once and hold them "
                      "(default refits daily)");
}

EngineConfig resolve(const EngineCli& e) {
    EngineConfig cfg;
    if (!e.config_path.empty()) {
        cfg = parse_config_file(e.config_path);
    }
    if (e.alpha_opt->count() > 0) cfg.alpha = Probability(e.alpha);
    if (e.k_opt->count() > 0) cfg.window.K = e.K;
    if (e.l_opt->count() > 0) cfg.window.L = e.L;
    if (e.n_opt->count() > 0) cfg.window.N = e.N;
    if (e.start_opt->count() > 0) cfg.start = Date::parse(e.start);
    if (e.end_opt->count() > 0) cfg.end = Date::parse(e.end);
    if (e.seed_opt->count() > 0) cfg.seed = e.seed;
    if (e.identity_opt->count() > 0) cfg.identity_ar = true;
    if (e.fit_once_opt->count() > 0) cfg.refit_daily = false;
    return cfg;
}

std::vector<ForecastRecord> forecast_records(const ReturnSeries& series,
                                             const EngineConfig& cfg) {
    return cfg.baseline ? gaussian_var_baseline(series, cfg)
                        : run_gvar(series, cfg);
}

void emit_backtest(const std::vector<ForecastRecord>& records,
                   const EngineConfig& cfg, const std::string& output) {
    const BacktestReport rep = report_from_records(records, cfg.alpha);
    if (!output.empty()) {
        emit_report(records, rep, output);
        return;
    }
    write_forecast_table(records, std::cout);
    std::cout << '\n';
    write_summary(rep, std::cout);
    std::cout.flush();
    if (!std::cout) {
        throw IoError("write to stdout failed");
    }
}

// Commas inside cell error messages would break the one-line-per-cell CSV;
// semicolons keep the table greppable without a quoting dialect.
std::string csv_safe(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == '\n') c = ';';
    }
    return text;
}

int run_app(int argc, char** argv) {
    CLI::App app{"gvar — G-VaR engine: worst-case value-at-risk under "
                 "volatility uncertainty"};
    app.require_subcommand(1);

    // ---- ingest -------------------------------------------------------------
    auto* ingest = app.add_subcommand(
        "ingest", "validate a price CSV and echo the return series");
    std::string ingest_prices;
    std::string ingest_output;
    ingest->add_option("prices", ingest_prices, "price CSV with header date,close")
        ->required();
    ingest->add_option("-o,--output", ingest_output, "destination (default stdout)");
    ingest->callback([&] {
        const ReturnSeries series = load_prices(ingest_prices);
        with_output(ingest_output, [&](std::ostream& out) {
            out << "date,z\n";
            for (std::size_t i = 0; i < series.size(); ++i) {
                out << series.dates[i].to_string() << ','
                    << format_g6(series.values[i]) << '\n';
            }
        });
    });

    // ---- forecast -----------------------------------------------------------
    auto* forecast = app.add_subcommand(
        "forecast", "run the G-VaR engine and emit the per-date table");
    std::string forecast_prices;
    std::string forecast_output;
    EngineCli forecast_cli;
    forecast->add_option("prices", forecast_prices, "price CSV")->required();
    forecast->add_option("-o,--output", forecast_output, "destination (default stdout)");
    add_engine_options(forecast, forecast_cli);
    forecast->callback([&] {
        const EngineConfig cfg = resolve(forecast_cli);
        const ReturnSeries series = load_prices(forecast_prices);
        const auto records = forecast_records(series, cfg);
        with_output(forecast_output,
                    [&](std::ostream& out) { write_forecast_table(records, out); });
    });

    // ---- backtest -----------------------------------------------------------
    auto* backtest = app.add_subcommand(
        "backtest", "forecast, then append the coverage/independence summary");
    std::string backtest_prices;
    std::string backtest_output;
    EngineCli backtest_cli;
    backtest->add_option("prices", backtest_prices, "price CSV")->required();
    backtest->add_option("-o,--output", backtest_output, "destination (default stdout)");
    add_engine_options(backtest, backtest_cli);
    backtest->callback([&] {
        const EngineConfig cfg = resolve(backtest_cli);
        const ReturnSeries series = load_prices(backtest_prices);
        emit_backtest(forecast_records(series, cfg), cfg, backtest_output);
    });

    // ---- grid ---------------------------------------------------------------
    auto* grid = app.add_subcommand(
        "grid", "score every (K, L) candidate on a validation range");
    std::string grid_prices;
    std::string grid_output;
    EngineCli grid_cli;
    int k_min = 5, k_max = 15, l_min = 5, l_max = 15;
    std::string val_start, val_end;
    grid->add_option("prices", grid_prices, "price CSV")->required();
    grid->add_option("-o,--output", grid_output, "destination (default stdout)");
    add_engine_options(grid, grid_cli);
    auto* k_min_opt = grid->add_option("--k-min", k_min, "smallest K candidate");
    auto* k_max_opt = grid->add_option("--k-max", k_max, "largest K candidate");
    auto* l_min_opt = grid->add_option("--l-min", l_min, "smallest L candidate");
    auto* l_max_opt = grid->add_option("--l-max", l_max, "largest L candidate");
    auto* val_start_opt = grid->add_option(
        "--val-start", val_start, "validation range start (overrides --start)");
    auto* val_end_opt = grid->add_option(
        "--val-end", val_end, "validation range end (overrides --end)");
    grid->callback([&] {
        EngineConfig cfg = resolve(grid_cli);
        if (k_min_opt->count() > 0) cfg.k_min = k_min;
        if (k_max_opt->count() > 0) cfg.k_max = k_max;
        if (l_min_opt->count() > 0) cfg.l_min = l_min;
        if (l_max_opt->count() > 0) cfg.l_max = l_max;
        if (val_start_opt->count() > 0) cfg.start = Date::parse(val_start);
        if (val_end_opt->count() > 0) cfg.end = Date::parse(val_end);
        const ReturnSeries series = load_prices(grid_prices);
        std::vector<GridCell> cells;
        const auto [bestK, bestL] = grid_search(series, cfg, &cells);
        with_output(grid_output, [&](std::ostream& out) {
            out << "K,L,ok,alpha_hat,lr_uc,gap,horizon,error\n";
            for (const GridCell& c : cells) {
                out << c.K << ',' << c.L << ',' << (c.ok ? 1 : 0) << ',';
                if (c.ok) {
                    out << format_g6(c.alpha_hat) << ',' << format_g6(c.lr_uc_p)
                        << ',' << format_g6(c.gap) << ',' << c.horizon << ',';
                } else {
                    out << ",,,," << csv_safe(c.error);
                }
                out << '\n';
            }
            out << "\nselected K=" << bestK << " L=" << bestL << '\n';
        });
    });

    // ---- simulate -----------------------------------------------------------
    auto* simulate = app.add_subcommand(
        "simulate", "write a synthetic regime-switching price CSV");
    std::string sim_output;
    std::size_t sim_n = 0;
    double sim_sigma_lo = 0.0, sim_sigma_hi = 0.0, sim_mu = 0.0;
    double sim_switch_prob = 0.02;
    std::uint64_t sim_seed = 0;
    simulate->add_option("--n", sim_n, "number of return dates")->required();
    simulate->add_option("--sigma-lo", sim_sigma_lo, "quiet-regime volatility")
        ->required();
    simulate->add_option("--sigma-hi", sim_sigma_hi, "loud-regime volatility")
        ->required();
    simulate->add_option("--mu", sim_mu, "common drift (default 0)");
    simulate->add_option("--switch-prob", sim_switch_prob,
                         "per-date regime flip probability (default 0.02)");
    simulate->add_option("--seed", sim_seed, "RNG seed (default 0)");
    simulate->add_option("-o,--output", sim_output, "destination (default stdout)");
    simulate->callback([&] {
        const ReturnSeries series = simulate_regime_switching(
            sim_n, sim_sigma_lo, sim_sigma_hi, sim_mu,
            Probability(sim_switch_prob), sim_seed);
        with_output(sim_output,
                    [&](std::ostream& out) { write_price_csv(series, out); });
    });

    // ---- pde-check ----------------------------------------------------------
    auto* pde = app.add_subcommand(
        "pde-check", "compare the closed-form worst-case CDF against the "
                     "G-heat finite-difference oracle");
    std::string pde_output;
    double pde_sigma_lo = 1.0, pde_sigma_hi = 2.0;
    int pde_nx = 1601;
    pde->add_option("--sigma-lo", pde_sigma_lo, "lower volatility (default 1)");
    pde->add_option("--sigma-hi", pde_sigma_hi, "upper volatility (default 2)");
    pde->add_option("--nx", pde_nx, "spatial node count (default 1601)");
    pde->add_option("-o,--output", pde_output, "destination (default stdout)");
    pde->callback([&] {
        const GNormalParams params(0.0, pde_sigma_lo, pde_sigma_hi);
        GridSpec spec;
        spec.nx = pde_nx;
        const PDEGrid solved = solve_gheat(params, unit_step, 1.0, spec);
        const double trusted = 0.8 * spec.half_width_sigmas * params.sigma_hi;
        with_output(pde_output, [&](std::ostream& out) {
            out << "x,exact,numeric,diff\n";
            double sup = 0.0;
            for (int i = 0; i < solved.nx; ++i) {
                const double x = solved.x_min + i * solved.dx;
                if (std::fabs(x) > trusted) continue;
                const double exact = g_cdf(x, params).value();
                const double numeric = solved.u[static_cast<std::size_t>(i)];
                const double diff = numeric - exact;
                sup = std::max(sup, std::fabs(diff));
                out << format_g6(x) << ',' << format_g6(exact) << ','
                    << format_g6(numeric) << ',' << format_g6(diff) << '\n';
            }
            out << "\nsup_norm," << format_g6(sup) << '\n';
        });
    });

    // ---- baseline -----------------------------------------------------------
    auto* baseline = app.add_subcommand(
        "baseline", "backtest the classical rolling-Gaussian VaR instead");
    std::string baseline_prices;
    std::string baseline_output;
    EngineCli baseline_cli;
    baseline->add_option("prices", baseline_prices, "price CSV")->required();
    baseline->add_option("-o,--output", baseline_output,
                         "destination (default stdout)");
    add_engine_options(baseline, baseline_cli);
    baseline->callback([&] {
        EngineConfig cfg = resolve(baseline_cli);
        cfg.baseline = true;
        const ReturnSeries series = load_prices(baseline_prices);
        emit_backtest(forecast_records(series, cfg), cfg, baseline_output);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the flag error
        return code == 0 ? 0 : 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const gvar::InsufficientHistoryError& e) {
        std::cerr << "gvar: " << e.what() << '\n';
        return 4;
    } catch (const gvar::IngestError& e) {
        std::cerr << "gvar: " << e.what() << '\n';
        return 3;
    } catch (const gvar::IoError& e) {
        std::cerr << "gvar: " << e.what() << '\n';
        return 3;
    } catch (const gvar::Error& e) {
        std::cerr << "gvar: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "gvar: unexpected error: " << e.what() << '\n';
        return 1;
    }
}
