#pragma once

#include "gvar/windows.hpp"

#include <span>
#include <vector>

namespace gvar {

/// Variance forecasts are floored here before they reach the G-normal layer,
/// which needs strictly positive volatilities.
inline constexpr double k_variance_floor = 1e-8;

/// One fitted AR(1) line y_t = intercept + slope * y_{t-1} + eps_t, with the
/// residuals and the number of (y_{t-1}, y_t) pairs it was fitted on.
/// The OLS normal equations force the residuals to sum to zero and to be
/// orthogonal to the lagged values.
struct ARFit {
    double intercept = 0.0;
    double slope = 0.0;
    std::vector<double> residuals;
    int n_pairs = 0;
};

/// The three per-series fits the engine forecasts with: means, upper
/// variances, lower variances.
struct ARCoefficients {
    ARFit mean_fit;
    ARFit var_hi_fit;
    ARFit var_lo_fit;
};

/// One-step-ahead parameter forecast for a target date.  Clamping in
/// forecast_one_step guarantees 0 < var_lo_tilde <= var_hi_tilde.
struct Forecast {
    Date date;
    double r_tilde = 0.0;
    double var_hi_tilde = 0.0;
    double var_lo_tilde = 0.0;
};

/// Ordinary least squares of y_t on (1, y_{t-1}) over the values.size()-1
/// consecutive pairs.  Needs at least 3 values; a (numerically) constant
/// lag series has no regressor variance -> SingularFitError.
ARFit fit_ar1(std::span<const double> values);

/// Three independent fit_ar1 runs over the r_hat / var_hi_hat / var_lo_hat
/// component series of the history.  A singular fit is re-thrown with the
/// failing series named.
ARCoefficients calibrate(std::span<const LocalEstimates> history);

/// Apply each fitted line to the matching component of the latest estimates,
/// then repair degeneracies: variances floored at k_variance_floor, and if
/// the lines cross (var_lo_tilde > var_hi_tilde) the lower forecast is
/// pulled down to the upper one.  The target date is the caller's next
/// trading date — it cannot be derived from `latest` because trading
/// calendars skip days.
Forecast forecast_one_step(const ARCoefficients& coeffs,
                           const LocalEstimates& latest,
                           const Date& target_date);

} // namespace gvar
