// Explicit finite-difference solver for the G-heat equation.
//
// The scheme is deliberately the simplest monotone one: forward Euler in
// time, central second difference in space, G applied pointwise to the
// discrete curvature.  Monotone schemes converge to the viscosity solution
// of fully nonlinear parabolic equations, which is the solution concept the
// G-normal distribution is defined through — a fancier non-monotone scheme
// would be faster but would forfeit that guarantee.  Under the stability
// bound dt * sigma_hi^2 / dx^2 <= 0.9 each update is a convex-ish
// combination of neighbors, so solutions stay inside [min phi0, max phi0]
// and comparison holds discretely.

#include "gvar/gheat.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace gvar {

namespace {

constexpr double k_stability_limit = 0.9;

void validate_spec(const GridSpec& spec) {
    if (spec.nx < 3) {
        throw ConfigError("gheat: nx must be >= 3, got " +
                          std::to_string(spec.nx));
    }
    if (!(spec.half_width_sigmas > 0.0) || !std::isfinite(spec.half_width_sigmas)) {
        throw ConfigError("gheat: half_width_sigmas must be positive and finite");
    }
    if (!(spec.cfl > 0.0) || spec.cfl > k_stability_limit) {
        throw ConfigError("gheat: cfl must lie in (0, " +
                          std::to_string(k_stability_limit) + "], got " +
                          std::to_string(spec.cfl));
    }
    if (spec.dt && (!(*spec.dt > 0.0) || !std::isfinite(*spec.dt))) {
        throw ConfigError("gheat: explicit dt must be positive and finite");
    }
}

} // namespace

double PDEGrid::value_at(double x) const {
    if (!std::isfinite(x) || x < x_min || x > x_max) {
        throw RangeError("PDEGrid::value_at: x = " + std::to_string(x) +
                         " lies outside the solved domain [" +
                         std::to_string(x_min) + ", " + std::to_string(x_max) +
                         "]");
    }
    const double pos = (x - x_min) / dx;
    int i = static_cast<int>(pos);
    if (i >= nx - 1) i = nx - 2; // x == x_max
    const double w = pos - i;
    return (1.0 - w) * u[static_cast<std::size_t>(i)] +
           w * u[static_cast<std::size_t>(i) + 1];
}

double unit_step(double x) noexcept {
    if (x < 0.0) return 0.0;
    if (x > 0.0) return 1.0;
    return 0.5;
}

PDEGrid solve_gheat(const GNormalParams& p,
                    const std::function<double(double)>& phi0,
                    double t_final,
                    const GridSpec& spec) {
    validate_spec(spec);
    if (p.mu != 0.0) {
        throw DomainError("solve_gheat: expects centered parameters (mu = 0); "
                          "shift the initial data instead, as numeric_g_cdf "
                          "and expectation_of do");
    }
    if (!(t_final > 0.0) || !std::isfinite(t_final)) {
        throw DomainError("solve_gheat: t_final must be positive and finite");
    }
    if (!phi0) {
        throw ContractError("solve_gheat: initial condition is empty");
    }

    PDEGrid grid;
    grid.nx = spec.nx;
    grid.x_max = spec.half_width_sigmas * p.sigma_hi;
    grid.x_min = -grid.x_max;
    grid.dx = (grid.x_max - grid.x_min) / (spec.nx - 1);

    const double shi2 = p.sigma_hi * p.sigma_hi;
    const double slo2 = p.sigma_lo * p.sigma_lo;

    // Resolve the time step, then check stability *before* touching the grid.
    double dt = spec.dt ? *spec.dt : spec.cfl * grid.dx * grid.dx / shi2;
    if (dt * shi2 / (grid.dx * grid.dx) > k_stability_limit * (1.0 + 1e-12)) {
        throw ConfigError(
            "gheat: unstable step: dt * sigma_hi^2 / dx^2 = " +
            std::to_string(dt * shi2 / (grid.dx * grid.dx)) +
            " exceeds the explicit-scheme bound " +
            std::to_string(k_stability_limit));
    }
    // Land exactly on t_final; shrinking dt only widens the margin.
    const long n_steps = static_cast<long>(std::ceil(t_final / dt));
    dt = t_final / static_cast<double>(n_steps);
    grid.dt = dt;

    grid.u.resize(static_cast<std::size_t>(spec.nx));
    for (int i = 0; i < spec.nx; ++i) {
        const double v = phi0(grid.x_min + i * grid.dx);
        if (!std::isfinite(v)) {
            throw DomainError("solve_gheat: initial data is not finite at x = " +
                              std::to_string(grid.x_min + i * grid.dx));
        }
        grid.u[static_cast<std::size_t>(i)] = v;
    }

    std::vector<double> next(grid.u);
    const double inv_dx2 = 1.0 / (grid.dx * grid.dx);
    for (long step = 0; step < n_steps; ++step) {
        for (int i = 1; i + 1 < spec.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(i);
            const double d2 = (grid.u[k - 1] - 2.0 * grid.u[k] + grid.u[k + 1]) * inv_dx2;
            // G(a) = (sigma_hi^2 a+ - sigma_lo^2 a-) / 2, written branchwise.
            const double flow = d2 > 0.0 ? 0.5 * shi2 * d2 : 0.5 * slo2 * d2;
            next[k] = grid.u[k] + dt * flow;
        }
        grid.u.swap(next);
    }
    return grid;
}

Probability numeric_g_cdf(double x, const GNormalParams& p,
                          const GridSpec& spec) {
    if (!std::isfinite(x)) {
        throw DomainError("numeric_g_cdf: non-finite argument");
    }
    const double xi = x - p.mu;
    const double trusted = 0.8 * spec.half_width_sigmas * p.sigma_hi;
    if (std::fabs(xi) > trusted) {
        throw RangeError("numeric_g_cdf: x - mu = " + std::to_string(xi) +
                         " is outside the trusted interior 80% of the domain "
                         "(|x - mu| <= " + std::to_string(trusted) +
                         "); widen the grid or use the closed form");
    }
    const GNormalParams centered(0.0, p.sigma_lo, p.sigma_hi);
    const PDEGrid grid = solve_gheat(centered, unit_step, 1.0, spec);
    // E[1_{X <= xi}] = E[1_{-X >= -xi}] = E[1_{X >= -xi}] = u_step(1, xi),
    // by the symmetry of the centered G-normal law.
    const double v = grid.value_at(xi);
    return Probability(std::clamp(v, 0.0, 1.0));
}

double expectation_of(const std::function<double(double)>& phi,
                      const GNormalParams& p,
                      const GridSpec& spec) {
    if (!phi) {
        throw ContractError("expectation_of: payoff function is empty");
    }
    const GNormalParams centered(0.0, p.sigma_lo, p.sigma_hi);
    const double mu = p.mu;
    const PDEGrid grid = solve_gheat(
        centered, [&phi, mu](double y) { return phi(y + mu); }, 1.0, spec);
    return grid.value_at(0.0);
}

} // namespace gvar
