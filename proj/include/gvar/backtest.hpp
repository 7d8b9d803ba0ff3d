#pragma once

#include "gvar/numerics.hpp"

#include <optional>
#include <span>

namespace gvar {

/// Transition counts of the violation indicator over consecutive date pairs:
/// m_ab = number of pairs with state a on the first date and b on the second
/// (1 = violation).  The four counts always sum to (number of dates - 1).
struct ViolationCounts {
    long long m00 = 0;
    long long m01 = 0;
    long long m10 = 0;
    long long m11 = 0;

    long long m0() const noexcept { return m00 + m01; }
    long long m1() const noexcept { return m10 + m11; }
    long long pairs() const noexcept { return m00 + m01 + m10 + m11; }
};

/// A likelihood-ratio test outcome: the statistic and its chi^2(1) p-value.
struct TestResult {
    double statistic = 0.0;
    Probability p_value;
};

/// Everything the summary row reports about one forecast sequence.
/// pi01/pi11/pi are the transition MLEs behind the independence test; a
/// transition whose source state never occurs has no MLE and stays nullopt.
struct BacktestReport {
    ViolationCounts counts;
    Probability alpha_hat;       ///< m1 / (m0 + m1)
    std::optional<double> pi01;  ///< P(violation | previous ok)
    std::optional<double> pi11;  ///< P(violation | previous violation)
    std::optional<double> pi;    ///< pooled violation rate over pairs
    double t1 = 0.0;             ///< unconditional-coverage LR statistic
    double t2 = 0.0;             ///< independence LR statistic
    Probability lr_uc;           ///< p-value of t1
    Probability lr_ind;          ///< p-value of t2
    double mean_var = 0.0;       ///< mean of the VaR forecasts, Z units
    long long horizon = 0;       ///< number of forecast dates
};

/// Classify consecutive date pairs of the aligned (return, VaR forecast)
/// sequences.  A date is a violation when the realized return falls strictly
/// below the negated forecast, Z < -VaR; equality counts as no violation, so
/// every pair lands in exactly one bucket.  Misaligned or shorter-than-2
/// inputs -> ContractError.
ViolationCounts count_violations(std::span<const double> returns,
                                 std::span<const double> var_forecasts);

/// Unconditional-coverage (Kupiec) likelihood-ratio test:
///   T1 = 2 m1 ln(alpha_hat / alpha) + 2 m0 ln((1-alpha_hat) / (1-alpha)),
/// with 0 * ln(...) = 0 and T1 clamped at 0 against rounding.  alpha must be
/// strictly inside (0, 1); empty counts -> ContractError.
TestResult lr_uc(const ViolationCounts& counts, Probability alpha);

/// Independence (Christoffersen) likelihood-ratio test of the violation
/// indicator against a first-order Markov alternative.  Factors with a zero
/// exponent contribute nothing, and a transition probability whose source
/// state never occurs drops out of the likelihood entirely; both conventions
/// are the exact limits of the log-likelihood, keeping T2 finite and >= 0.
TestResult lr_ind(const ViolationCounts& counts);

/// Full report for one aligned forecast sequence at risk level alpha.
BacktestReport build_report(std::span<const double> returns,
                            std::span<const double> var_forecasts,
                            Probability alpha);

} // namespace gvar
