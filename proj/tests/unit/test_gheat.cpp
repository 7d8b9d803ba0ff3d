#include "gvar/gheat.hpp"
#include "gvar/gnormal.hpp"
#include "gvar/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

using namespace gvar;

namespace {

// Interior-80% sup-norm distance between a solved step-data grid and a
// reference CDF evaluated at the grid nodes.
double interior_sup_error(const PDEGrid& grid, const GridSpec& spec,
                          const GNormalParams& p,
                          const std::function<double(double)>& reference) {
    const double trusted = 0.8 * spec.half_width_sigmas * p.sigma_hi;
    double worst = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x_min + i * grid.dx;
        if (std::fabs(x) > trusted) continue;
        worst = std::max(worst, std::fabs(grid.u[static_cast<std::size_t>(i)] -
                                          reference(x)));
    }
    return worst;
}

} // namespace

TEST_SUITE_BEGIN("gheat");

TEST_CASE("GridSpec defaults") {
    const GridSpec spec;
    CHECK(spec.half_width_sigmas == 8.0);
    CHECK(spec.nx == 1601);
    CHECK(spec.cfl == 0.9);
    CHECK_FALSE(spec.dt.has_value());
}

TEST_CASE("unit_step values") {
    CHECK(unit_step(0.0) == 0.5);
    CHECK(unit_step(-0.0) == 0.5);
    CHECK(unit_step(1e-300) == 1.0);
    CHECK(unit_step(-1e-300) == 0.0);
    CHECK(unit_step(5.0) == 1.0);
}

TEST_CASE("spec validation rejects degenerate grids and unstable steps") {
    const GNormalParams p(0.0, 1.0, 1.0);
    CHECK_THROWS_AS(solve_gheat(p, unit_step, 1.0, GridSpec{8.0, 2, 0.9, {}}),
                    ConfigError);
    CHECK_THROWS_AS(solve_gheat(p, unit_step, 1.0, GridSpec{8.0, 101, 0.0, {}}),
                    ConfigError);
    CHECK_THROWS_AS(solve_gheat(p, unit_step, 1.0, GridSpec{8.0, 101, 1.0, {}}),
                    ConfigError);
    CHECK_THROWS_AS(solve_gheat(p, unit_step, 1.0, GridSpec{-1.0, 101, 0.9, {}}),
                    ConfigError);
    // An explicit dt that violates dt * sigma_hi^2 / dx^2 <= 0.9.
    CHECK_THROWS_AS(solve_gheat(p, unit_step, 1.0, GridSpec{8.0, 101, 0.9, 1.0}),
                    ConfigError);
}

TEST_CASE("solve_gheat argument contracts") {
    const GridSpec spec{8.0, 101, 0.9, {}};
    CHECK_THROWS_AS(solve_gheat(GNormalParams(0.3, 1.0, 1.0), unit_step, 1.0, spec),
                    DomainError);
    CHECK_THROWS_AS(solve_gheat(GNormalParams(0.0, 1.0, 1.0), unit_step, 0.0, spec),
                    DomainError);
    CHECK_THROWS_AS(solve_gheat(GNormalParams(0.0, 1.0, 1.0), unit_step, -1.0, spec),
                    DomainError);
    CHECK_THROWS_AS(
        solve_gheat(GNormalParams(0.0, 1.0, 1.0),
                    std::function<double(double)>{}, 1.0, spec),
        ContractError);
    CHECK_THROWS_AS(
        solve_gheat(GNormalParams(0.0, 1.0, 1.0),
                    [](double) { return std::numeric_limits<double>::infinity(); },
                    1.0, spec),
        DomainError);
}

TEST_CASE("classical limit reproduces the normal CDF") {
    // With sigma_lo = sigma_hi the equation is the plain heat equation and
    // step data at t = 1 must flow to Phi(x).
    const GNormalParams p(0.0, 1.0, 1.0);
    const GridSpec spec{8.0, 801, 0.9, {}};
    const PDEGrid grid = solve_gheat(p, unit_step, 1.0, spec);
    const double err = interior_sup_error(
        grid, spec, p, [](double x) { return std_normal_cdf(x).value(); });
    CHECK(err <= 1e-2);
    CHECK(err <= 2e-3); // observed ~1e-4; fail loudly if the scheme regresses
}

TEST_CASE("uncertain band agrees with the closed-form worst-case CDF") {
    const GNormalParams p(0.0, 1.0, 2.0);
    const GridSpec spec{8.0, 801, 0.9, {}};
    const PDEGrid grid = solve_gheat(p, unit_step, 1.0, spec);
    const double err = interior_sup_error(
        grid, spec, p, [&p](double x) { return g_cdf(x, p).value(); });
    CHECK(err <= 1e-2);
}

TEST_CASE("numeric_g_cdf spot values") {
    const GridSpec spec{8.0, 801, 0.9, {}};
    // Degenerate band: Phi(0) and Phi(-2).
    CHECK(std::fabs(numeric_g_cdf(0.0, GNormalParams(0.0, 1.0, 1.0), spec).value() -
                    0.5) <= 1e-3);
    CHECK(std::fabs(numeric_g_cdf(-2.0, GNormalParams(0.0, 1.0, 1.0), spec).value() -
                    0.022750131948179207) <= 1e-3);
    // Genuine band: the CDF value at the mean is sigma_hi / (sigma_hi + sigma_lo).
    CHECK(std::fabs(numeric_g_cdf(0.0, GNormalParams(0.0, 1.0, 2.0), spec).value() -
                    2.0 / 3.0) <= 1e-2);
    // Centering: a shifted mean moves the evaluation point, not the PDE.
    CHECK(std::fabs(numeric_g_cdf(0.3, GNormalParams(0.3, 1.0, 2.0), spec).value() -
                    2.0 / 3.0) <= 1e-2);
}

TEST_CASE("numeric_g_cdf enforces the trusted interior") {
    const GNormalParams p(0.0, 1.0, 1.0);
    // Trust radius is 0.8 * 8 * sigma_hi = 6.4.
    CHECK_THROWS_AS(numeric_g_cdf(6.5, p), RangeError);
    CHECK_THROWS_AS(numeric_g_cdf(-6.5, p), RangeError);
    const GNormalParams shifted(10.0, 1.0, 1.0);
    CHECK_THROWS_AS(numeric_g_cdf(0.0, shifted), RangeError);
    CHECK_THROWS_AS(numeric_g_cdf(std::numeric_limits<double>::quiet_NaN(), p),
                    DomainError);
}

TEST_CASE("value_at interpolates linearly and polices its domain") {
    const GNormalParams p(0.0, 1.0, 1.0);
    const GridSpec spec{8.0, 201, 0.9, {}};
    const PDEGrid grid = solve_gheat(p, unit_step, 1.0, spec);
    const int i = 100;
    const double mid = grid.x_min + (i + 0.5) * grid.dx;
    const double expected = 0.5 * (grid.u[static_cast<std::size_t>(i)] +
                                   grid.u[static_cast<std::size_t>(i) + 1]);
    CHECK(std::fabs(grid.value_at(mid) - expected) <= 1e-12);
    CHECK(std::fabs(grid.value_at(grid.x_max) - grid.u.back()) <= 1e-12);
    CHECK(std::fabs(grid.value_at(grid.x_min) - grid.u.front()) <= 1e-12);
    CHECK_THROWS_AS(grid.value_at(grid.x_max + 1e-6), RangeError);
    CHECK_THROWS_AS(grid.value_at(grid.x_min - 1e-6), RangeError);
}

TEST_CASE("expectation_of recovers the first and second moments") {
    const GridSpec spec{8.0, 401, 0.9, {}};
    // Linear payoff: volatility uncertainty leaves the mean alone.
    CHECK(std::fabs(expectation_of([](double z) { return z; },
                                   GNormalParams(0.3, 1.0, 2.0), spec) -
                    0.3) <= 1e-3);
    // Convex payoff selects the upper variance, concave the lower.
    CHECK(std::fabs(expectation_of([](double z) { return z * z; },
                                   GNormalParams(0.0, 1.0, 2.0), spec) -
                    4.0) <= 0.02 * 4.0);
    CHECK(std::fabs(expectation_of([](double z) { return -z * z; },
                                   GNormalParams(0.0, 1.0, 2.0), spec) -
                    (-1.0)) <= 0.02 * 1.0);
    CHECK_THROWS_AS(expectation_of(std::function<double(double)>{},
                                   GNormalParams(0.0, 1.0, 2.0), spec),
                    ContractError);
}

TEST_CASE("the discrete scheme preserves ordering and bounds") {
    const GNormalParams p(0.0, 0.8, 1.6);
    const GridSpec spec{8.0, 201, 0.9, {}};
    const auto phi_low = [](double x) { return unit_step(x); };
    // A steep ramp reaching 1 already at x = 0 dominates the step pointwise:
    // it is 1 wherever the step is, and nonnegative on the step's zero side.
    const auto phi_high = [](double x) {
        return std::min(1.0, std::max(0.0, 10.0 * x + 1.0));
    };
    const PDEGrid lo = solve_gheat(p, phi_low, 0.5, spec);
    const PDEGrid hi = solve_gheat(p, phi_high, 0.5, spec);
    for (int i = 0; i < lo.nx; ++i) {
        const auto k = static_cast<std::size_t>(i);
        CHECK(lo.u[k] <= hi.u[k] + 1e-12);
        // Discrete maximum principle: values stay inside [min phi, max phi].
        CHECK(lo.u[k] >= -1e-12);
        CHECK(lo.u[k] <= 1.0 + 1e-12);
    }
}

TEST_CASE("the scheme converges under refinement") {
    const GNormalParams p(0.0, 1.0, 1.0);
    const GridSpec coarse{8.0, 201, 0.9, {}};
    const GridSpec fine{8.0, 401, 0.9, {}};
    const auto reference = [](double x) { return std_normal_cdf(x).value(); };
    const double err_coarse = interior_sup_error(
        solve_gheat(p, unit_step, 1.0, coarse), coarse, p, reference);
    const double err_fine = interior_sup_error(
        solve_gheat(p, unit_step, 1.0, fine), fine, p, reference);
    CHECK(err_fine < err_coarse);
    CHECK(err_coarse / err_fine >= 1.5);
}

TEST_CASE("expectations are sublinear in the payoff") {
    const GNormalParams p(0.0, 0.7, 1.5);
    const GridSpec spec{8.0, 401, 0.9, {}};
    const std::vector<std::pair<std::function<double(double)>,
                                std::function<double(double)>>> pairs{
        {[](double z) { return z; }, [](double z) { return -z; }},
        {[](double z) { return z * z; }, [](double z) { return -z * z; }},
        {[](double z) { return std::max(z, 0.0); },
         [](double z) { return std::min(z, 0.0); }},
        {[](double z) { return std::sin(z); }, [](double z) { return std::cos(z); }},
        {[](double z) { return std::fabs(z); }, [](double z) { return unit_step(z); }},
    };
    for (const auto& [f, g] : pairs) {
        const double sum = expectation_of(
            [&f, &g](double z) { return f(z) + g(z); }, p, spec);
        const double split = expectation_of(f, p, spec) + expectation_of(g, p, spec);
        CHECK(sum <= split + 1e-9);
    }
}

TEST_SUITE_END();
