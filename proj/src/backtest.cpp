#include "gvar/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace gvar {

namespace {

// count * ln(p), with the 0 * ln(0) = 0 convention.  Callers only pass p = 0
// together with count = 0 (the MLE structure guarantees it), but the guard
// keeps the function total.
double xlogp(long long count, double p) {
    if (count == 0) return 0.0;
    return static_cast<double>(count) * std::log(p);
}

} // namespace

ViolationCounts count_violations(std::span<const double> returns,
                                 std::span<const double> var_forecasts) {
    if (returns.size() != var_forecasts.size()) {
        throw ContractError("count_violations: " + std::to_string(returns.size()) +
                            " returns vs " + std::to_string(var_forecasts.size()) +
                            " forecasts");
    }
    if (returns.size() < 2) {
        throw ContractError("count_violations: need at least 2 aligned dates "
                            "to form a pair, got " +
                            std::to_string(returns.size()));
    }
    ViolationCounts c;
    bool prev = returns[0] < -var_forecasts[0];
    for (std::size_t i = 1; i < returns.size(); ++i) {
        const bool cur = returns[i] < -var_forecasts[i];
        if (prev) {
            (cur ? c.m11 : c.m10) += 1;
        } else {
            (cur ? c.m01 : c.m00) += 1;
        }
        prev = cur;
    }
    return c;
}

TestResult lr_uc(const ViolationCounts& counts, Probability alpha) {
    const long long total = counts.pairs();
    if (total < 1) {
        throw ContractError("lr_uc: empty violation sample");
    }
    const double a = alpha.value();
    if (a <= 0.0 || a >= 1.0) {
        throw DomainError("lr_uc: alpha must lie strictly inside (0, 1), got " +
                          std::to_string(a));
    }
    const long long m0 = counts.m0();
    const long long m1 = counts.m1();
    const double alpha_hat = static_cast<double>(m1) / static_cast<double>(total);

    double t1 = 2.0 * (xlogp(m1, alpha_hat) - xlogp(m1, a)) +
                2.0 * (xlogp(m0, 1.0 - alpha_hat) - xlogp(m0, 1.0 - a));
    t1 = std::max(t1, 0.0); // LR statistics are nonnegative; clear FP dust
    return {t1, chi2_df1_sf(t1)};
}

TestResult lr_ind(const ViolationCounts& counts) {
    const long long total = counts.pairs();
    if (total < 1) {
        throw ContractError("lr_ind: empty violation sample");
    }
    const long long m0 = counts.m0();
    const long long m1 = counts.m1();

    // Markov alternative: one transition probability per source state,
    // defined only where the source state occurs.
    double ll_markov = 0.0;
    if (m0 > 0) {
        const double pi01 = static_cast<double>(counts.m01) / static_cast<double>(m0);
        ll_markov += xlogp(counts.m00, 1.0 - pi01) + xlogp(counts.m01, pi01);
    }
    if (m1 > 0) {
        const double pi11 = static_cast<double>(counts.m11) / static_cast<double>(m1);
        ll_markov += xlogp(counts.m10, 1.0 - pi11) + xlogp(counts.m11, pi11);
    }

    // Independence null: one pooled rate.
    const double pi = static_cast<double>(counts.m01 + counts.m11) /
                      static_cast<double>(total);
    const double ll_pooled =
        xlogp(counts.m00 + counts.m10, 1.0 - pi) + xlogp(counts.m01 + counts.m11, pi);

    double t2 = std::max(2.0 * (ll_markov - ll_pooled), 0.0);
    return {t2, chi2_df1_sf(t2)};
}

BacktestReport build_report(std::span<const double> returns,
                            std::span<const double> var_forecasts,
                            Probability alpha) {
    BacktestReport rep;
    rep.counts = count_violations(returns, var_forecasts);
    rep.horizon = static_cast<long long>(returns.size());
    rep.alpha_hat = Probability(static_cast<double>(rep.counts.m1()) /
                                static_cast<double>(rep.counts.pairs()));
    if (rep.counts.m0() > 0) {
        rep.pi01 = static_cast<double>(rep.counts.m01) /
                   static_cast<double>(rep.counts.m0());
    }
    if (rep.counts.m1() > 0) {
        rep.pi11 = static_cast<double>(rep.counts.m11) /
                   static_cast<double>(rep.counts.m1());
    }
    rep.pi = static_cast<double>(rep.counts.m01 + rep.counts.m11) /
             static_cast<double>(rep.counts.pairs());

    const TestResult uc = lr_uc(rep.counts, alpha);
    rep.t1 = uc.statistic;
    rep.lr_uc = uc.p_value;
    const TestResult ind = lr_ind(rep.counts);
    rep.t2 = ind.statistic;
    rep.lr_ind = ind.p_value;

    double sum = 0.0;
    for (double v : var_forecasts) sum += v;
    rep.mean_var = sum / static_cast<double>(var_forecasts.size());
    return rep;
}

} // namespace gvar
