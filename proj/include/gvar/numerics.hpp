#pragma once

#include "gvar/errors.hpp"

namespace gvar {

/// A real number certified to lie in [0, 1].
///
/// Used for risk levels, p-values and CDF values so that range checks happen
/// once, at the boundary where the number is produced, instead of being
/// re-validated by every consumer.  Converts implicitly to double; the
/// constructor is explicit and throws DomainError for values outside [0, 1]
/// (NaN included).
class Probability {
public:
    Probability() noexcept = default;
    explicit Probability(double v);

    double value() const noexcept { return v_; }
    operator double() const noexcept { return v_; }

private:
    double v_ = 0.0;
};

/// Standard normal density at x.
double std_normal_pdf(double x) noexcept;

/// Standard normal CDF.  Absolute error well below 1e-10 (delegates to the
/// double-precision erfc kernel).  Non-finite x -> DomainError.
Probability std_normal_cdf(double x);

/// Standard normal quantile (inverse CDF).  AS241 initial guess polished by
/// one Newton step; round-trips through std_normal_cdf to ~1e-15.
/// p must be strictly inside (0, 1) -> DomainError otherwise.
double std_normal_quantile(Probability p);

/// Survival function of the chi-squared distribution with one degree of
/// freedom: P(X > t) = 2(1 - Phi(sqrt(t))) = erfc(sqrt(t/2)).
/// Negative or non-finite t -> DomainError.
Probability chi2_df1_sf(double t);

} // namespace gvar
