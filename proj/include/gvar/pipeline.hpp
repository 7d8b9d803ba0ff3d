#pragma once

#include "gvar/arcal.hpp"
#include "gvar/backtest.hpp"
#include "gvar/gnormal.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gvar {

/// Everything a run needs beyond the data.  Mirrored 1:1 by the flat
/// key = value config file (see parse_config) and by the CLI flags, which
/// override file values field by field.
struct EngineConfig {
    Probability alpha{0.05};     ///< risk level, must lie in (0, 0.5]
    WindowConfig window;         ///< K, L, N
    std::optional<Date> start;   ///< first forecast date (inclusive)
    std::optional<Date> end;     ///< last forecast date (inclusive)
    int k_min = 5, k_max = 15;   ///< grid-search range for K
    int l_min = 5, l_max = 15;   ///< grid-search range for L
    bool baseline = false;       ///< run the rolling-Gaussian baseline instead
    std::uint64_t seed = 0;      ///< RNG seed for synthetic runs
    bool identity_ar = false;    ///< skip calibration: forecast = latest estimates
    bool refit_daily = true;     ///< refit the AR lines at every forecast date

    void validate() const; ///< ConfigError on violation
};

/// One forecast date, fully resolved: the parameter forecast, the VaR it
/// implies (g_var of the forecast parameters at the configured alpha), and
/// the return that was then realized.
struct ForecastRecord {
    Date date;
    Forecast forecast;
    double g_var = 0.0;
    double realized_return = 0.0;
};

/// One cell of the grid-search score table.  Cells that error are kept (ok =
/// false, error message filled in) so the emitted table shows why a
/// candidate was skipped.
struct GridCell {
    int K = 0;
    int L = 0;
    bool ok = false;
    std::string error;
    double alpha_hat = 0.0;
    double lr_uc_p = 0.0;
    double gap = 0.0; ///< |alpha_hat - alpha|, the selection objective
    long long horizon = 0;
};

// ---- ingestion ------------------------------------------------------------

/// Read a price CSV (header `date,close`, ISO dates, ascending) and convert
/// to scaled log-returns Z_t = 100 * ln(P_t / P_{t-1}); the first date is
/// consumed by the differencing.  Missing file -> IoError; malformed content
/// -> IngestError with the 1-based line number.
ReturnSeries load_prices(const std::string& path);

/// The parsing core of load_prices, reading any stream; `origin` names the
/// source in error messages.
ReturnSeries parse_prices(std::istream& in, const std::string& origin);

/// Inverse of load_prices for synthetic data: writes a price CSV that
/// reproduces the series, anchored at 100 one calendar day before the first
/// return date.
void write_price_csv(const ReturnSeries& series, std::ostream& out);

// ---- the engine -----------------------------------------------------------

/// Algorithm: for every forecast date t+1 in the configured range, take the
/// local estimates at the N dates ending at t, fit the three AR(1) lines
/// (unless identity_ar), forecast one step, and price the VaR from the
/// worst-case quantile.  The local estimates are precomputed once per call —
/// each date would otherwise recompute N-1 of its predecessor's windows.
///
/// Needs at least N + L + K - 1 observations (the first forecastable index);
/// fewer -> InsufficientHistoryError naming that minimum.  A date range that
/// selects nothing -> ConfigError.
std::vector<ForecastRecord> run_gvar(const ReturnSeries& series,
                                     const EngineConfig& cfg);

/// Classical single-sigma comparator: VaR = -(m + s * Phi^-1(alpha)) with m,
/// s^2 the mean and unbiased variance of the trailing N returns.  Records
/// carry (m, s^2, s^2) as their "forecast" so the output table renders
/// uniformly; on a constant window s^2 is exactly 0 and the VaR degenerates
/// to -m (no variance floor here — exactness matters more than the G-normal
/// layer's positivity rule, which this path never touches).
std::vector<ForecastRecord> gaussian_var_baseline(const ReturnSeries& series,
                                                  const EngineConfig& cfg);

/// Evaluate every (K, L) in [k_min, k_max] x [l_min, l_max] with run_gvar +
/// build_report over cfg's date range — set that range to a validation
/// segment disjoint from the final test segment — and return the pair
/// minimizing |alpha_hat - alpha|; ties broken by larger lr_uc p-value, then
/// smaller K, then smaller L.  Cells that error are skipped (and recorded
/// when `cells` is given); all cells failing -> ConfigError.
std::pair<int, int> grid_search(const ReturnSeries& series,
                                const EngineConfig& cfg,
                                std::vector<GridCell>* cells = nullptr);

/// Two-state volatility chain: each date after the first flips between
/// sigma_lo and sigma_hi with probability switch_prob, starting in the high
/// state; Z_t = mu + sigma_state * xi_t with standard normal draws from a
/// mersenne-twister generator seeded with `seed` (bit-reproducible per seed
/// on a given platform).  Dates run daily from 2000-01-03.
ReturnSeries simulate_regime_switching(std::size_t n, double sigma_lo,
                                       double sigma_hi, double mu,
                                       Probability switch_prob,
                                       std::uint64_t seed);

// ---- reports --------------------------------------------------------------

/// Backtest of an emitted/parsed record sequence: violations counted from
/// (realized_return, g_var) pairs.
BacktestReport report_from_records(std::span<const ForecastRecord> records,
                                   Probability alpha);

/// Per-date table: `date,z,r_tilde,sigma_lo_tilde,sigma_hi_tilde,g_var,violation`
/// — note the sigma columns are volatilities (square roots of the forecast
/// variances).  Floats are rendered with 6 significant digits.
void write_forecast_table(std::span<const ForecastRecord> records,
                          std::ostream& out);

/// Summary table: header plus one row, `horizon,alpha_hat,lr_uc,lr_ind,mean_var`.
void write_summary(const BacktestReport& report, std::ostream& out);

/// Write the per-date table, a blank separator line, and the summary to one
/// destination file.  Empty records -> ContractError; unwritable destination
/// -> IoError.
void emit_report(std::span<const ForecastRecord> records,
                 const BacktestReport& report, const std::string& destination);

/// Re-ingest a per-date table produced by write_forecast_table.  Stops at a
/// blank line (so the combined emit_report file parses too).  Within the
/// 6-digit rendering, parse-then-write is byte-stable.
std::vector<ForecastRecord> parse_forecast_table(std::istream& in);

// ---- configuration --------------------------------------------------------

/// Parse the flat `key = value` config format ('#' comments, blank lines
/// allowed).  Keys: alpha, K, L, N, start, end, k_min, k_max, l_min, l_max,
/// baseline, seed, identity_ar, refit_daily.  Unknown keys and unparsable
/// values -> ConfigError with the line number.  The result is NOT validated
/// here — CLI flags may still override fields; validation happens on use.
EngineConfig parse_config(std::istream& in, const std::string& origin);

/// parse_config over a file; missing file -> IoError.
EngineConfig parse_config_file(const std::string& path);

/// Shortest-form rendering at 6 significant digits used by all tables.
std::string format_g6(double v);

} // namespace gvar
