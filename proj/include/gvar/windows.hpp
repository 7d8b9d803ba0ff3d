#pragma once

#include "gvar/series.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace gvar {

/// Rolling-window estimation settings.
///
/// At each date t the estimator looks at K windows of width L, each shifted
/// back one day from the previous: window j covers indices t-j-L+1 .. t-j.
/// The spread of the K window variances is what expresses volatility
/// uncertainty — min is the lower variance estimate, max the upper.
/// N is the calibration history length consumed by the AR stage.
struct WindowConfig {
    int L = 10;  ///< window width, >= 2 (sample variance needs L-1 > 0)
    int K = 5;   ///< number of shifted windows, >= 1
    int N = 100; ///< AR calibration history length, >= 3

    void validate() const; ///< ConfigError on violation
};

/// Per-date parameter estimates: the mean of the most recent window and the
/// min/max of the K window variances.  Always 0 <= var_lo_hat <= var_hi_hat.
struct LocalEstimates {
    Date date;
    double r_hat = 0.0;
    double var_lo_hat = 0.0;
    double var_hi_hat = 0.0;
};

// Index convention: t, t_start, t_end are 0-based positions in the series.

/// Mean of the L values ending j steps before and including index t, i.e.
/// indices t-j-L+1 .. t-j.  Needs t >= L+j-1 -> InsufficientHistoryError
/// naming the earliest legal index.
double window_mean(const ReturnSeries& series, std::size_t t, int j, int L);

/// Unbiased sample variance (denominator L-1) of the same L values.
double window_variance(const ReturnSeries& series, std::size_t t, int j, int L);

/// The full per-date estimate: r_hat from window j=0, variance bounds from
/// the min/max over j in {0, ..., K-1}.  Needs t >= L+K-2.
LocalEstimates local_estimates(const ReturnSeries& series, std::size_t t,
                               const WindowConfig& cfg);

/// local_estimates evaluated at every index in [t_start, t_end], in order.
std::vector<LocalEstimates> rolling_estimates(const ReturnSeries& series,
                                              std::size_t t_start,
                                              std::size_t t_end,
                                              const WindowConfig& cfg);

/// The phi-max-mean estimator pair: apply phi elementwise, average over
/// consecutive disjoint blocks of block_size samples (an incomplete trailing
/// block is discarded — block means of unequal sizes are not comparable),
/// and return (min, max) of the block means.  Fewer than two complete blocks
/// -> InsufficientHistoryError.
std::pair<double, double> phi_max_mean(std::span<const double> samples,
                                       const std::function<double(double)>& phi,
                                       int block_size);

} // namespace gvar
