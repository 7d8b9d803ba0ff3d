#include "gvar/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <tuple>

namespace gvar {

namespace {

std::string_view trim(std::string_view sv) {
    while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t' || sv.front() == '\r')) {
        sv.remove_prefix(1);
    }
    while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r')) {
        sv.remove_suffix(1);
    }
    return sv;
}

bool parse_full_double(std::string_view sv, double& out) {
    const char* first = sv.data();
    const char* last = sv.data() + sv.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

template <typename Int>
bool parse_full_int(std::string_view sv, Int& out) {
    const char* first = sv.data();
    const char* last = sv.data() + sv.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_csv(std::string_view sv) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = sv.find(',', pos);
        if (comma == std::string_view::npos) {
            fields.push_back(sv.substr(pos));
            return fields;
        }
        fields.push_back(sv.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

void strip_bom(std::string& line) {
    if (line.size() >= 3 && line[0] == '\xEF' && line[1] == '\xBB' && line[2] == '\xBF') {
        line.erase(0, 3);
    }
}

} // namespace

void EngineConfig::validate() const {
    const double a = alpha.value();
    if (!(a > 0.0) || a > 0.5) {
        throw ConfigError("EngineConfig: alpha must lie in (0, 0.5], got " +
                          std::to_string(a));
    }
    window.validate();
    if (k_min < 1 || k_min > k_max) {
        throw ConfigError("EngineConfig: need 1 <= k_min <= k_max, got [" +
                          std::to_string(k_min) + ", " + std::to_string(k_max) + "]");
    }
    if (l_min < 2 || l_min > l_max) {
        throw ConfigError("EngineConfig: need 2 <= l_min <= l_max, got [" +
                          std::to_string(l_min) + ", " + std::to_string(l_max) + "]");
    }
    if (start && end && *end < *start) {
        throw ConfigError("EngineConfig: date range is empty (start " +
                          start->to_string() + " after end " + end->to_string() + ")");
    }
}

// ---- ingestion ------------------------------------------------------------

ReturnSeries parse_prices(std::istream& in, const std::string& origin) {
    std::vector<Date> dates;
    std::vector<double> prices;
    std::string line;
    int lineno = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) strip_bom(line);
        const std::string_view sv = trim(line);
        if (sv.empty()) continue;

        const auto fail = [&](const std::string& what) {
            throw IngestError(origin + " line " + std::to_string(lineno) + ": " + what);
        };

        if (!header_seen) {
            if (sv != "date,close") {
                fail("expected header 'date,close', got '" + std::string(sv) + "'");
            }
            header_seen = true;
            continue;
        }

        const auto fields = split_csv(sv);
        if (fields.size() != 2) {
            fail("expected 2 comma-separated fields, got " +
                 std::to_string(fields.size()));
        }
        Date d;
        try {
            d = Date::parse(trim(fields[0]));
        } catch (const DomainError& e) {
            fail(e.what());
        }
        double price = 0.0;
        if (!parse_full_double(trim(fields[1]), price) || !std::isfinite(price)) {
            fail("unparsable price '" + std::string(trim(fields[1])) + "'");
        }
        if (price <= 0.0) {
            fail("nonpositive price " + std::string(trim(fields[1])));
        }
        if (!dates.empty() && !(dates.back() < d)) {
            fail(dates.back() == d
                     ? "duplicate date " + d.to_string()
                     : "dates must be strictly increasing; " + d.to_string() +
                           " follows " + dates.back().to_string());
        }
        dates.push_back(d);
        prices.push_back(price);
    }

    if (!header_seen) {
        throw IngestError(origin + ": empty input (missing 'date,close' header)");
    }
    if (prices.size() < 2) {
        throw IngestError(origin + ": need at least two price rows to form a return, got " +
                          std::to_string(prices.size()));
    }

    ReturnSeries series;
    series.dates.assign(dates.begin() + 1, dates.end());
    series.values.resize(prices.size() - 1);
    for (std::size_t i = 1; i < prices.size(); ++i) {
        series.values[i - 1] = 100.0 * std::log(prices[i] / prices[i - 1]);
    }
    return series;
}

ReturnSeries load_prices(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open price file: " + path);
    }
    return parse_prices(in, path);
}

void write_price_csv(const ReturnSeries& series, std::ostream& out) {
    series.validate();
    if (series.size() == 0) {
        throw ContractError("write_price_csv: empty series");
    }
    out << "date,close\n";
    char buf[48];
    double price = 100.0;
    std::snprintf(buf, sizeof buf, "%.12g", price);
    out << series.dates.front().prev_day().to_string() << ',' << buf << '\n';
    for (std::size_t i = 0; i < series.size(); ++i) {
        price *= std::exp(series.values[i] / 100.0);
        std::snprintf(buf, sizeof buf, "%.12g", price);
        out << series.dates[i].to_string() << ',' << buf << '\n';
    }
}

// ---- the engine -----------------------------------------------------------

std::vector<ForecastRecord> run_gvar(const ReturnSeries& series,
                                     const EngineConfig& cfg) {
    cfg.validate();
    series.validate();
    const int L = cfg.window.L;
    const int K = cfg.window.K;
    const int N = cfg.window.N;
    const std::size_t n = series.size();
    const std::size_t min_len =
        static_cast<std::size_t>(N) + static_cast<std::size_t>(L) +
        static_cast<std::size_t>(K) - 1;
    if (n < min_len) {
        throw InsufficientHistoryError(
            "run_gvar: series has " + std::to_string(n) +
            " observations; the first forecast needs N + L + K - 1 = " +
            std::to_string(min_len));
    }

    const std::size_t est_first = static_cast<std::size_t>(L + K - 2);
    const std::vector<LocalEstimates> est =
        rolling_estimates(series, est_first, n - 1, cfg.window);

    const ARCoefficients identity{
        {0.0, 1.0, {}, 0}, {0.0, 1.0, {}, 0}, {0.0, 1.0, {}, 0}};

    std::vector<ForecastRecord> out;
    out.reserve(n - min_len + 1);
    std::optional<ARCoefficients> held; // for refit_daily == false
    ARCoefficients refit;
    for (std::size_t i = min_len - 1; i < n; ++i) {
        const Date& d = series.dates[i];
        if (cfg.start && d < *cfg.start) continue;
        if (cfg.end && *cfg.end < d) break; // dates are strictly increasing

        const std::size_t t = i - 1; // last index the forecast may look at
        const ARCoefficients* coeffs = &identity;
        if (!cfg.identity_ar) {
            const auto history = std::span(est).subspan(
                t - static_cast<std::size_t>(N) + 1 - est_first,
                static_cast<std::size_t>(N));
            if (cfg.refit_daily) {
                refit = calibrate(history);
                coeffs = &refit;
            } else {
                if (!held) held = calibrate(history);
                coeffs = &*held;
            }
        }
        const Forecast f = forecast_one_step(*coeffs, est[t - est_first], d);
        const GNormalParams params(f.r_tilde, std::sqrt(f.var_lo_tilde),
                                   std::sqrt(f.var_hi_tilde));
        out.push_back({d, f, g_var(cfg.alpha, params), series.values[i]});
    }
    if (out.empty()) {
        throw ConfigError("run_gvar: the configured date range selects no "
                          "forecast dates");
    }
    return out;
}

std::vector<ForecastRecord> gaussian_var_baseline(const ReturnSeries& series,
                                                  const EngineConfig& cfg) {
    cfg.validate();
    series.validate();
    const int N = cfg.window.N;
    const std::size_t n = series.size();
    if (n < static_cast<std::size_t>(N) + 1) {
        throw InsufficientHistoryError(
            "gaussian_var_baseline: series has " + std::to_string(n) +
            " observations; the first forecast needs N + 1 = " +
            std::to_string(N + 1));
    }
    const double zq = std_normal_quantile(cfg.alpha);

    std::vector<ForecastRecord> out;
    out.reserve(n - static_cast<std::size_t>(N));
    for (std::size_t i = static_cast<std::size_t>(N); i < n; ++i) {
        const Date& d = series.dates[i];
        if (cfg.start && d < *cfg.start) continue;
        if (cfg.end && *cfg.end < d) break;

        double mean = 0.0;
        for (std::size_t k = i - static_cast<std::size_t>(N); k < i; ++k) {
            mean += series.values[k];
        }
        mean /= N;
        double ss = 0.0;
        for (std::size_t k = i - static_cast<std::size_t>(N); k < i; ++k) {
            const double dv = series.values[k] - mean;
            ss += dv * dv;
        }
        const double var = ss / (N - 1);
        const double var_forecast = -(mean + std::sqrt(var) * zq);
        out.push_back({d, Forecast{d, mean, var, var}, var_forecast,
                       series.values[i]});
    }
    if (out.empty()) {
        throw ConfigError("gaussian_var_baseline: the configured date range "
                          "selects no forecast dates");
    }
    return out;
}

std::pair<int, int> grid_search(const ReturnSeries& series,
                                const EngineConfig& cfg,
                                std::vector<GridCell>* cells) {
    cfg.validate();
    std::optional<std::pair<int, int>> best;
    // Selection key: (gap, -p, K, L) lexicographically smallest.  Iterating
    // K then L ascending plus strict comparison realizes the documented
    // tie-breaks deterministically.
    std::tuple<double, double, int, int> best_key;

    for (int K = cfg.k_min; K <= cfg.k_max; ++K) {
        for (int L = cfg.l_min; L <= cfg.l_max; ++L) {
            EngineConfig candidate = cfg;
            candidate.window.K = K;
            candidate.window.L = L;
            GridCell cell;
            cell.K = K;
            cell.L = L;
            try {
                const auto records = run_gvar(series, candidate);
                const BacktestReport rep = report_from_records(records, cfg.alpha);
                cell.ok = true;
                cell.alpha_hat = rep.alpha_hat.value();
                cell.lr_uc_p = rep.lr_uc.value();
                cell.gap = std::fabs(rep.alpha_hat.value() - cfg.alpha.value());
                cell.horizon = rep.horizon;
                const std::tuple<double, double, int, int> key{
                    cell.gap, -cell.lr_uc_p, K, L};
                if (!best || key < best_key) {
                    best = {K, L};
                    best_key = key;
                }
            } catch (const Error& e) {
                cell.error = e.what();
            }
            if (cells) cells->push_back(std::move(cell));
        }
    }
    if (!best) {
        throw ConfigError("grid_search: every (K, L) candidate failed; see "
                          "the score table for per-cell errors");
    }
    return *best;
}

ReturnSeries simulate_regime_switching(std::size_t n, double sigma_lo,
                                       double sigma_hi, double mu,
                                       Probability switch_prob,
                                       std::uint64_t seed) {
    if (n == 0) {
        throw DomainError("simulate_regime_switching: n must be >= 1");
    }
    if (!std::isfinite(sigma_lo) || !std::isfinite(sigma_hi) ||
        !(sigma_lo > 0.0) || sigma_lo > sigma_hi) {
        throw DomainError("simulate_regime_switching: need 0 < sigma_lo <= "
                          "sigma_hi and finite values");
    }
    if (!std::isfinite(mu)) {
        throw DomainError("simulate_regime_switching: mu must be finite");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    ReturnSeries series;
    series.dates.reserve(n);
    series.values.reserve(n);
    bool high = true; // deterministic start in the high-volatility state
    Date d{2000, 1, 3};
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && unif(rng) < switch_prob.value()) high = !high;
        const double sigma = high ? sigma_hi : sigma_lo;
        series.dates.push_back(d);
        series.values.push_back(mu + sigma * gauss(rng));
        d = d.next_day();
    }
    return series;
}

// ---- reports --------------------------------------------------------------

BacktestReport report_from_records(std::span<const ForecastRecord> records,
                                   Probability alpha) {
    std::vector<double> returns(records.size());
    std::vector<double> vars(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        returns[i] = records[i].realized_return;
        vars[i] = records[i].g_var;
    }
    return build_report(returns, vars, alpha);
}

std::string format_g6(double v) {
    if (v == 0.0) return "0"; // also normalizes -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace {

const char* const k_table_header =
    "date,z,r_tilde,sigma_lo_tilde,sigma_hi_tilde,g_var,violation";

} // namespace

void write_forecast_table(std::span<const ForecastRecord> records,
                          std::ostream& out) {
    out << k_table_header << '\n';
    for (const ForecastRecord& r : records) {
        out << r.date.to_string() << ',' << format_g6(r.realized_return) << ','
            << format_g6(r.forecast.r_tilde) << ','
            << format_g6(std::sqrt(r.forecast.var_lo_tilde)) << ','
            << format_g6(std::sqrt(r.forecast.var_hi_tilde)) << ','
            << format_g6(r.g_var) << ','
            << (r.realized_return < -r.g_var ? '1' : '0') << '\n';
    }
}

void write_summary(const BacktestReport& report, std::ostream& out) {
    out << "horizon,alpha_hat,lr_uc,lr_ind,mean_var\n"
        << report.horizon << ',' << format_g6(report.alpha_hat.value()) << ','
        << format_g6(report.lr_uc.value()) << ','
        << format_g6(report.lr_ind.value()) << ','
        << format_g6(report.mean_var) << '\n';
}

void emit_report(std::span<const ForecastRecord> records,
                 const BacktestReport& report, const std::string& destination) {
    if (records.empty()) {
        throw ContractError("emit_report: no records to write");
    }
    std::ofstream out(destination);
    if (!out) {
        throw IoError("cannot write report to " + destination);
    }
    write_forecast_table(records, out);
    out << '\n';
    write_summary(report, out);
    out.flush();
    if (!out) {
        throw IoError("write failed for " + destination);
    }
}

std::vector<ForecastRecord> parse_forecast_table(std::istream& in) {
    std::vector<ForecastRecord> records;
    std::string line;
    int lineno = 0;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) strip_bom(line);
        const std::string_view sv = trim(line);
        const auto fail = [&](const std::string& what) {
            throw IngestError("forecast table line " + std::to_string(lineno) +
                              ": " + what);
        };
        if (sv.empty()) {
            if (!header_seen) fail("expected header '" + std::string(k_table_header) + "'");
            break; // blank line separates the table from a trailing summary
        }
        if (!header_seen) {
            if (sv != k_table_header) {
                fail("expected header '" + std::string(k_table_header) +
                     "', got '" + std::string(sv) + "'");
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_csv(sv);
        if (fields.size() != 7) {
            fail("expected 7 fields, got " + std::to_string(fields.size()));
        }
        ForecastRecord rec;
        try {
            rec.date = Date::parse(trim(fields[0]));
        } catch (const DomainError& e) {
            fail(e.what());
        }
        double z = 0.0, r = 0.0, slo = 0.0, shi = 0.0, gv = 0.0;
        if (!parse_full_double(trim(fields[1]), z) ||
            !parse_full_double(trim(fields[2]), r) ||
            !parse_full_double(trim(fields[3]), slo) ||
            !parse_full_double(trim(fields[4]), shi) ||
            !parse_full_double(trim(fields[5]), gv)) {
            fail("unparsable numeric field");
        }
        const std::string_view flag = trim(fields[6]);
        if (flag != "0" && flag != "1") {
            fail("violation flag must be 0 or 1, got '" + std::string(flag) + "'");
        }
        rec.forecast.date = rec.date;
        rec.forecast.r_tilde = r;
        rec.forecast.var_lo_tilde = slo * slo;
        rec.forecast.var_hi_tilde = shi * shi;
        rec.g_var = gv;
        rec.realized_return = z;
        records.push_back(rec);
    }
    if (!header_seen) {
        throw IngestError("forecast table: empty input");
    }
    return records;
}

// ---- configuration --------------------------------------------------------

EngineConfig parse_config(std::istream& in, const std::string& origin) {
    EngineConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) strip_bom(line);
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string_view sv = trim(line);
        if (sv.empty()) continue;

        const auto fail = [&](const std::string& what) {
            throw ConfigError(origin + " line " + std::to_string(lineno) + ": " + what);
        };

        const std::size_t eq = sv.find('=');
        if (eq == std::string_view::npos) {
            fail("expected 'key = value', got '" + std::string(sv) + "'");
        }
        const std::string_view key = trim(sv.substr(0, eq));
        const std::string_view val = trim(sv.substr(eq + 1));
        if (key.empty() || val.empty()) {
            fail("expected 'key = value', got '" + std::string(sv) + "'");
        }

        const auto as_int = [&](const char* name) {
            int v = 0;
            if (!parse_full_int(val, v)) {
                fail(std::string(name) + " must be an integer, got '" +
                     std::string(val) + "'");
            }
            return v;
        };
        const auto as_bool = [&](const char* name) {
            if (val == "true" || val == "1") return true;
            if (val == "false" || val == "0") return false;
            fail(std::string(name) + " must be true/false/1/0, got '" +
                 std::string(val) + "'");
            return false; // unreachable
        };
        const auto as_date = [&](const char* name) {
            try {
                return Date::parse(val);
            } catch (const DomainError& e) {
                fail(std::string(name) + ": " + e.what());
            }
            return Date{}; // unreachable
        };

        if (key == "alpha") {
            double v = 0.0;
            if (!parse_full_double(val, v)) {
                fail("alpha must be a real number, got '" + std::string(val) + "'");
            }
            try {
                cfg.alpha = Probability(v);
            } catch (const DomainError& e) {
                fail(e.what());
            }
        } else if (key == "K") {
            cfg.window.K = as_int("K");
        } else if (key == "L") {
            cfg.window.L = as_int("L");
        } else if (key == "N") {
            cfg.window.N = as_int("N");
        } else if (key == "start") {
            cfg.start = as_date("start");
        } else if (key == "end") {
            cfg.end = as_date("end");
        } else if (key == "k_min") {
            cfg.k_min = as_int("k_min");
        } else if (key == "k_max") {
            cfg.k_max = as_int("k_max");
        } else if (key == "l_min") {
            cfg.l_min = as_int("l_min");
        } else if (key == "l_max") {
            cfg.l_max = as_int("l_max");
        } else if (key == "baseline") {
            cfg.baseline = as_bool("baseline");
        } else if (key == "seed") {
            std::uint64_t v = 0;
            if (!parse_full_int(val, v)) {
                fail("seed must be a nonnegative integer, got '" +
                     std::string(val) + "'");
            }
            cfg.seed = v;
        } else if (key == "identity_ar") {
            cfg.identity_ar = as_bool("identity_ar");
        } else if (key == "refit_daily") {
            cfg.refit_daily = as_bool("refit_daily");
        } else {
            fail("unknown key '" + std::string(key) + "'");
        }
    }
    return cfg;
}

EngineConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    return parse_config(in, path);
}

} // namespace gvar
