#include "gvar/gnormal.hpp"

#include <cmath>
#include <string>

namespace gvar {

namespace {

void require_positive_sigma_lo(const GNormalParams& p, const char* op) {
    if (p.sigma_lo <= 0.0) {
        throw DomainError(std::string(op) +
                          ": sigma_lo must be strictly positive (got " +
                          std::to_string(p.sigma_lo) +
                          "); the upper branch of the worst-case CDF "
                          "degenerates at sigma_lo = 0");
    }
}

} // namespace

GNormalParams::GNormalParams(double mu_, double sigma_lo_, double sigma_hi_)
    : mu(mu_), sigma_lo(sigma_lo_), sigma_hi(sigma_hi_) {
    if (!std::isfinite(mu) || !std::isfinite(sigma_lo) || !std::isfinite(sigma_hi)) {
        throw DomainError("GNormalParams: parameters must be finite");
    }
    if (sigma_lo < 0.0) {
        throw DomainError("GNormalParams: sigma_lo must be >= 0, got " +
                          std::to_string(sigma_lo));
    }
    if (sigma_hi <= 0.0) {
        throw DomainError("GNormalParams: sigma_hi must be > 0, got " +
                          std::to_string(sigma_hi));
    }
    if (sigma_lo > sigma_hi) {
        throw DomainError("GNormalParams: need sigma_lo <= sigma_hi, got [" +
                          std::to_string(sigma_lo) + ", " +
                          std::to_string(sigma_hi) + "]");
    }
}

double g_function(double a, const GNormalParams& p) {
    if (!std::isfinite(a)) {
        throw DomainError("g_function: non-finite argument");
    }
    const double a_pos = a > 0.0 ? a : 0.0;
    const double a_neg = a < 0.0 ? -a : 0.0;
    return 0.5 * (p.sigma_hi * p.sigma_hi * a_pos -
                  p.sigma_lo * p.sigma_lo * a_neg);
}

Probability g_cdf(double x, const GNormalParams& p) {
    require_positive_sigma_lo(p, "g_cdf");
    if (!std::isfinite(x)) {
        throw DomainError("g_cdf: non-finite argument");
    }
    const double span = p.sigma_hi + p.sigma_lo;
    if (x <= p.mu) {
        const double w = 2.0 * p.sigma_hi / span;
        return Probability(w * std_normal_cdf((x - p.mu) / p.sigma_hi).value());
    }
    const double w = 2.0 * p.sigma_lo / span;
    return Probability(1.0 - w * std_normal_cdf(-(x - p.mu) / p.sigma_lo).value());
}

double g_quantile(Probability alpha, const GNormalParams& p) {
    require_positive_sigma_lo(p, "g_quantile");
    const double a = alpha.value();
    if (a <= 0.0 || a >= 1.0) {
        throw DomainError("g_quantile: alpha must lie strictly inside (0, 1), "
                          "got " + std::to_string(a));
    }
    const double span = p.sigma_hi + p.sigma_lo;
    const double branch = p.sigma_hi / span; // CDF value at x = mu
    if (a <= branch) {
        // At a == branch the argument is exactly 1/2 and the quantile is mu,
        // which the other branch also gives in the limit: continuity holds.
        return p.mu +
               p.sigma_hi * std_normal_quantile(Probability(a * span / (2.0 * p.sigma_hi)));
    }
    return p.mu -
           p.sigma_lo * std_normal_quantile(Probability((1.0 - a) * span / (2.0 * p.sigma_lo)));
}

double g_var(Probability alpha, const GNormalParams& p) {
    return -g_quantile(alpha, p);
}

} // namespace gvar
