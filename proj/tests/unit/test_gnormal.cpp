#include "gvar/gnormal.hpp"
#include "gvar/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace gvar;

TEST_SUITE_BEGIN("gnormal");

TEST_CASE("GNormalParams validates its volatility band") {
    CHECK_NOTHROW(GNormalParams(0.0, 1.0, 2.0));
    CHECK_NOTHROW(GNormalParams(0.0, 1.0, 1.0));
    CHECK_NOTHROW(GNormalParams(0.0, 0.0, 1.0));  // degenerate lower edge
    CHECK_THROWS_AS(GNormalParams(0.0, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(GNormalParams(0.0, -0.5, 1.0), DomainError);
    CHECK_THROWS_AS(GNormalParams(0.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(
        GNormalParams(std::numeric_limits<double>::quiet_NaN(), 1.0, 2.0),
        DomainError);
}

TEST_CASE("g_function hand examples") {
    const GNormalParams p(0.0, 0.5, 1.5);
    CHECK(g_function(0.0, p) == 0.0);
    CHECK(g_function(2.0, p) == doctest::Approx(2.25).epsilon(1e-15));
    CHECK(g_function(-2.0, p) == doctest::Approx(-0.25).epsilon(1e-15));
}

TEST_CASE("g_function is positively homogeneous and monotone") {
    const GNormalParams p(0.0, 0.8, 1.2);
    for (double a : {-3.0, -1.0, -0.25, 0.25, 1.0, 3.0}) {
        for (double lam : {0.5, 2.0, 7.0}) {
            CHECK(g_function(lam * a, p) ==
                  doctest::Approx(lam * g_function(a, p)).epsilon(1e-13));
        }
    }
    double prev = g_function(-4.0, p);
    for (double a = -3.5; a <= 4.0; a += 0.5) {
        const double v = g_function(a, p);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("g_cdf hand values for the (0, 1, 2) band") {
    const GNormalParams p(0.0, 1.0, 2.0);
    // At the mean the lower branch contributes 2*sigma_hi/(sigma_hi+sigma_lo)
    // times Phi(0) = 1/2, i.e. sigma_hi/(sigma_hi+sigma_lo) = 2/3.
    CHECK(std::fabs(g_cdf(0.0, p).value() - 2.0 / 3.0) <= 1e-15);
    CHECK(g_cdf(-60.0, p).value() <= 1e-10);
    CHECK(g_cdf(60.0, p).value() >= 1.0 - 1e-10);
}

TEST_CASE("g_cdf needs a strictly positive lower volatility") {
    const GNormalParams p(0.0, 0.0, 1.0);
    CHECK_THROWS_AS(g_cdf(0.0, p), DomainError);
}

TEST_CASE("g_cdf is continuous across the mean") {
    for (double mu : {0.0, -0.4, 1.7}) {
        const GNormalParams p(mu, 0.7, 1.9);
        const double left = g_cdf(std::nextafter(mu, -1e9), p).value();
        const double right = g_cdf(std::nextafter(mu, 1e9), p).value();
        const double at = g_cdf(mu, p).value();
        CHECK(std::fabs(left - at) <= 1e-12);
        CHECK(std::fabs(right - at) <= 1e-12);
    }
}

TEST_CASE("g_cdf collapses to the normal CDF when the band degenerates") {
    for (double sigma : {0.5, 1.0, 2.0}) {
        for (double mu : {0.0, 0.3}) {
            const GNormalParams p(mu, sigma, sigma);
            for (double x = -4.0; x <= 4.0; x += 0.37) {
                const double expected =
                    std_normal_cdf((x - mu) / sigma).value();
                CHECK(std::fabs(g_cdf(x, p).value() - expected) <= 1e-12);
            }
        }
    }
}

TEST_CASE("g_cdf dominates every constant-volatility member CDF") {
    // The worst-case CDF is a supremum over volatility scenarios, so it lies
    // at or above every constant-sigma normal CDF with sigma in the band.
    const GNormalParams p(0.2, 0.7, 1.8);
    for (double sigma = 0.7; sigma <= 1.8001; sigma += 0.1) {
        for (double x = -5.0; x <= 5.0; x += 0.31) {
            const double member = std_normal_cdf((x - p.mu) / sigma).value();
            CHECK(g_cdf(x, p).value() >= member - 1e-12);
        }
    }
}

TEST_CASE("g_cdf is nondecreasing") {
    const GNormalParams p(-0.3, 0.6, 1.4);
    double prev = 0.0;
    for (double x = -7.0; x <= 7.0; x += 0.05) {
        const double v = g_cdf(x, p).value();
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
}

TEST_CASE("g_quantile hand values") {
    const GNormalParams p(0.0, 1.0, 2.0);
    // Frozen from the closed form: mu + sigma_hi * Phi^-1(alpha * 3/4)
    // evaluated at alpha = 0.05.
    CHECK(std::fabs(g_quantile(Probability(0.05), p) -
                    (-3.560928683384051)) <= 1e-9);
    // At the branch point alpha* = sigma_hi/(sigma_hi+sigma_lo) both branch
    // formulas meet at the mean.
    const double alpha_star = 2.0 / 3.0;
    CHECK(std::fabs(g_quantile(Probability(alpha_star), p) - 0.0) <= 1e-12);
}

TEST_CASE("g_quantile inverts g_cdf") {
    const GNormalParams p(0.1, 0.8, 1.7);
    for (double alpha : {0.001, 0.01, 0.05, 0.3, 0.5, 0.68, 0.9, 0.999}) {
        const double x = g_quantile(Probability(alpha), p);
        CHECK(std::fabs(g_cdf(x, p).value() - alpha) <= 1e-9);
    }
}

TEST_CASE("g_quantile rejects endpoint probabilities") {
    const GNormalParams p(0.0, 1.0, 2.0);
    CHECK_THROWS_AS(g_quantile(Probability(0.0), p), DomainError);
    CHECK_THROWS_AS(g_quantile(Probability(1.0), p), DomainError);
}

TEST_CASE("g_quantile is translation equivariant") {
    const GNormalParams base(0.0, 0.9, 1.6);
    for (double mu : {-2.0, 0.25, 3.5}) {
        const GNormalParams shifted(mu, 0.9, 1.6);
        for (double alpha : {0.02, 0.2, 0.5, 0.8}) {
            CHECK(g_quantile(Probability(alpha), shifted) ==
                  g_quantile(Probability(alpha), base) + mu);
        }
    }
}

TEST_CASE("g_var hand values") {
    CHECK(std::fabs(g_var(Probability(0.05), GNormalParams(0.0, 1.0, 1.0)) -
                    1.6448536269514722) <= 1e-12);
    CHECK(std::fabs(g_var(Probability(0.05), GNormalParams(0.0, 1.0, 2.0)) -
                    3.560928683384051) <= 1e-9);
    // A positive expected return shifts the VaR down by exactly mu.
    CHECK(std::fabs(g_var(Probability(0.05), GNormalParams(0.1, 1.0, 1.0)) -
                    1.5448536269514722) <= 1e-12);
}

TEST_CASE("g_var is decreasing in alpha and nondecreasing in sigma_hi") {
    const GNormalParams p(0.0, 0.8, 1.5);
    double prev = g_var(Probability(0.01), p);
    for (double alpha = 0.02; alpha <= 0.2001; alpha += 0.01) {
        const double v = g_var(Probability(alpha), p);
        CHECK(v < prev);
        prev = v;
    }
    prev = -1e300;
    for (double hi = 0.8; hi <= 2.4001; hi += 0.2) {
        const double v = g_var(Probability(0.05), GNormalParams(0.0, 0.8, hi));
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_SUITE_END();
