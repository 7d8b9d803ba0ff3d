#include "gvar/arcal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gvar {

ARFit fit_ar1(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 3) {
        throw InsufficientHistoryError("fit_ar1: need at least 3 values (2 "
                                       "lagged pairs), got " + std::to_string(n));
    }
    const std::size_t m = n - 1; // number of (y_{t-1}, y_t) pairs

    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_x += values[i];
        mean_y += values[i + 1];
    }
    mean_x /= static_cast<double>(m);
    mean_y /= static_cast<double>(m);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dx = values[i] - mean_x;
        sxx += dx * dx;
        sxy += dx * (values[i + 1] - mean_y);
    }

    // An exactly constant series leaves rounding residue of order eps^2 in
    // sxx, so the singularity test has to be relative, not sxx == 0.
    const double scale = std::max(1.0, mean_x * mean_x);
    if (sxx <= 1e-18 * static_cast<double>(m) * scale) {
        throw SingularFitError("fit_ar1: lagged regressor is (numerically) "
                               "constant; the slope is unidentifiable");
    }

    ARFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    fit.n_pairs = static_cast<int>(m);
    fit.residuals.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        fit.residuals[i] = values[i + 1] - (fit.intercept + fit.slope * values[i]);
    }
    return fit;
}

ARCoefficients calibrate(std::span<const LocalEstimates> history) {
    if (history.size() < 3) {
        throw InsufficientHistoryError("calibrate: need at least 3 rows of "
                                       "local estimates, got " +
                                       std::to_string(history.size()));
    }
    std::vector<double> r(history.size()), hi(history.size()), lo(history.size());
    for (std::size_t i = 0; i < history.size(); ++i) {
        r[i] = history[i].r_hat;
        hi[i] = history[i].var_hi_hat;
        lo[i] = history[i].var_lo_hat;
    }
    const auto fit_named = [](std::span<const double> v, const char* name) {
        try {
            return fit_ar1(v);
        } catch (const SingularFitError& e) {
            throw SingularFitError("calibrate: " + std::string(name) +
                                   " series: " + e.what());
        }
    };
    ARCoefficients c;
    c.mean_fit = fit_named(r, "r_hat");
    c.var_hi_fit = fit_named(hi, "var_hi_hat");
    c.var_lo_fit = fit_named(lo, "var_lo_hat");
    return c;
}

Forecast forecast_one_step(const ARCoefficients& coeffs,
                           const LocalEstimates& latest,
                           const Date& target_date) {
    const auto apply = [](const ARFit& f, double y) {
        return f.intercept + f.slope * y;
    };
    Forecast f;
    f.date = target_date;
    f.r_tilde = apply(coeffs.mean_fit, latest.r_hat);
    f.var_hi_tilde = std::max(apply(coeffs.var_hi_fit, latest.var_hi_hat),
                              k_variance_floor);
    f.var_lo_tilde = std::max(apply(coeffs.var_lo_fit, latest.var_lo_hat),
                              k_variance_floor);
    if (f.var_lo_tilde > f.var_hi_tilde) {
        f.var_lo_tilde = f.var_hi_tilde;
    }
    return f;
}

} // namespace gvar
