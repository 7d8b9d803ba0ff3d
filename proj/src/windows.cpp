#include "gvar/windows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gvar {

namespace {

// Shared guard for the window operations: walks the index arithmetic in
// signed space and reports exactly what was missing.
void check_window(const ReturnSeries& series, std::size_t t, int j, int L,
                  const char* op, int min_width) {
    if (t >= series.size()) {
        throw DomainError(std::string(op) + ": index " + std::to_string(t) +
                          " is out of range for a series of length " +
                          std::to_string(series.size()));
    }
    if (j < 0) {
        throw DomainError(std::string(op) + ": window shift j must be >= 0, got " +
                          std::to_string(j));
    }
    if (L < min_width) {
        throw DomainError(std::string(op) + ": window width L must be >= " +
                          std::to_string(min_width) + ", got " + std::to_string(L));
    }
    const long long start = static_cast<long long>(t) - j - L + 1;
    if (start < 0) {
        throw InsufficientHistoryError(
            std::string(op) + ": window j=" + std::to_string(j) + " of width L=" +
            std::to_string(L) + " ending at index " + std::to_string(t) +
            " would start at index " + std::to_string(start) +
            "; earliest index with enough history is t = " +
            std::to_string(L + j - 1));
    }
}

} // namespace

void WindowConfig::validate() const {
    if (L < 2) {
        throw ConfigError("WindowConfig: L must be >= 2, got " + std::to_string(L));
    }
    if (K < 1) {
        throw ConfigError("WindowConfig: K must be >= 1, got " + std::to_string(K));
    }
    if (N < 3) {
        throw ConfigError("WindowConfig: N must be >= 3, got " + std::to_string(N));
    }
}

double window_mean(const ReturnSeries& series, std::size_t t, int j, int L) {
    check_window(series, t, j, L, "window_mean", 1);
    const std::size_t start = t - static_cast<std::size_t>(j) - static_cast<std::size_t>(L) + 1;
    double sum = 0.0;
    for (int i = 0; i < L; ++i) sum += series.values[start + static_cast<std::size_t>(i)];
    return sum / L;
}

double window_variance(const ReturnSeries& series, std::size_t t, int j, int L) {
    check_window(series, t, j, L, "window_variance", 2);
    const std::size_t start = t - static_cast<std::size_t>(j) - static_cast<std::size_t>(L) + 1;
    double sum = 0.0;
    for (int i = 0; i < L; ++i) sum += series.values[start + static_cast<std::size_t>(i)];
    const double mean = sum / L;
    double ss = 0.0;
    for (int i = 0; i < L; ++i) {
        const double d = series.values[start + static_cast<std::size_t>(i)] - mean;
        ss += d * d;
    }
    return ss / (L - 1);
}

LocalEstimates local_estimates(const ReturnSeries& series, std::size_t t,
                               const WindowConfig& cfg) {
    cfg.validate();
    if (t >= series.size()) {
        throw DomainError("local_estimates: index " + std::to_string(t) +
                          " is out of range for a series of length " +
                          std::to_string(series.size()));
    }
    const long long earliest = static_cast<long long>(cfg.L) + cfg.K - 2;
    if (static_cast<long long>(t) < earliest) {
        throw InsufficientHistoryError(
            "local_estimates: index " + std::to_string(t) + " has only " +
            std::to_string(t + 1) + " observations behind it; L=" +
            std::to_string(cfg.L) + ", K=" + std::to_string(cfg.K) +
            " need L+K-1 = " + std::to_string(earliest + 1) +
            " (earliest index with enough history is t = " +
            std::to_string(earliest) + ")");
    }

    LocalEstimates est;
    est.date = series.dates[t];
    est.r_hat = window_mean(series, t, 0, cfg.L);
    est.var_lo_hat = std::numeric_limits<double>::infinity();
    est.var_hi_hat = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < cfg.K; ++j) {
        const double v = window_variance(series, t, j, cfg.L);
        est.var_lo_hat = std::min(est.var_lo_hat, v);
        est.var_hi_hat = std::max(est.var_hi_hat, v);
    }
    return est;
}

std::vector<LocalEstimates> rolling_estimates(const ReturnSeries& series,
                                              std::size_t t_start,
                                              std::size_t t_end,
                                              const WindowConfig& cfg) {
    if (t_start > t_end) {
        throw ContractError("rolling_estimates: t_start " + std::to_string(t_start) +
                            " exceeds t_end " + std::to_string(t_end));
    }
    std::vector<LocalEstimates> out;
    out.reserve(t_end - t_start + 1);
    for (std::size_t t = t_start; t <= t_end; ++t) {
        out.push_back(local_estimates(series, t, cfg));
    }
    return out;
}

std::pair<double, double> phi_max_mean(std::span<const double> samples,
                                       const std::function<double(double)>& phi,
                                       int block_size) {
    if (!phi) {
        throw ContractError("phi_max_mean: payoff function is empty");
    }
    if (block_size < 1) {
        throw DomainError("phi_max_mean: block_size must be >= 1, got " +
                          std::to_string(block_size));
    }
    const std::size_t nb = samples.size() / static_cast<std::size_t>(block_size);
    if (nb < 2) {
        throw InsufficientHistoryError(
            "phi_max_mean: need at least two complete blocks of size " +
            std::to_string(block_size) + "; " + std::to_string(samples.size()) +
            " samples give " + std::to_string(nb));
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < nb; ++k) {
        double sum = 0.0;
        for (int i = 0; i < block_size; ++i) {
            sum += phi(samples[k * static_cast<std::size_t>(block_size) +
                               static_cast<std::size_t>(i)]);
        }
        const double mean = sum / block_size;
        lo = std::min(lo, mean);
        hi = std::max(hi, mean);
    }
    return {lo, hi};
}

} // namespace gvar
