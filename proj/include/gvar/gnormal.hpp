#pragma once

#include "gvar/numerics.hpp"

namespace gvar {

/// Parameters of the G-normal distribution N(mu, [sigma_lo^2, sigma_hi^2]):
/// a mean plus an *interval* of variances expressing volatility uncertainty.
/// When sigma_lo == sigma_hi the distribution collapses to the classical
/// normal.  Units follow the return series (percent log-returns).
struct GNormalParams {
    double mu = 0.0;
    double sigma_lo = 1.0; ///< minimal volatility, >= 0
    double sigma_hi = 1.0; ///< maximal volatility, > 0, >= sigma_lo

    GNormalParams(double mu, double sigma_lo, double sigma_hi);
};

/// The sublinear generator G(a) = (sigma_hi^2 * a+  -  sigma_lo^2 * a-) / 2.
/// Positively homogeneous of degree 1 and nondecreasing in a.
double g_function(double a, const GNormalParams& p);

/// Worst-case CDF of the G-normal distribution, in the continuous form
///
///   x <= mu :  (2*sigma_hi / (sigma_hi + sigma_lo)) * Phi((x - mu) / sigma_hi)
///   x >  mu :  1 - (2*sigma_lo / (sigma_hi + sigma_lo)) * Phi(-(x - mu) / sigma_lo)
///
/// i.e. a heavy left half built from the high-volatility normal and a thin
/// right half built from the low-volatility one, glued continuously at mu
/// where both branches evaluate to sigma_hi / (sigma_hi + sigma_lo).  This is
/// exactly u(1, x - mu) for the G-heat equation with indicator initial data
/// (see gheat.hpp for the numerical cross-check).
///
/// Requires sigma_lo > 0: with sigma_lo == 0 the upper branch degenerates.
Probability g_cdf(double x, const GNormalParams& p);

/// Inverse of g_cdf.  Branches at alpha* = sigma_hi / (sigma_hi + sigma_lo)
/// (the CDF value at x = mu):
///
///   alpha <= alpha* :  mu + sigma_hi * Phi^-1(alpha * (sigma_hi + sigma_lo) / (2*sigma_hi))
///   alpha >  alpha* :  mu - sigma_lo * Phi^-1((1 - alpha) * (sigma_hi + sigma_lo) / (2*sigma_lo))
///
/// alpha must be strictly inside (0, 1); requires sigma_lo > 0.
double g_quantile(Probability alpha, const GNormalParams& p);

/// Robust value-at-risk at level alpha: the negated worst-case quantile,
/// g_var = -g_quantile(alpha, p).  Positive for small alpha and mu near 0.
double g_var(Probability alpha, const GNormalParams& p);

} // namespace gvar
