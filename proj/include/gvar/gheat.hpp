#pragma once

#include "gvar/gnormal.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace gvar {

/// Discretization parameters for the G-heat solver.  The spatial domain is
/// the symmetric interval [-half_width_sigmas * sigma_hi, +half_width_sigmas
/// * sigma_hi]; with an odd node count the origin falls exactly on a node,
/// which is where indicator initial data wants its 1/2 value.
struct GridSpec {
    double half_width_sigmas = 8.0; ///< domain half-width in units of sigma_hi
    int nx = 1601;                  ///< node count, >= 3
    double cfl = 0.9;               ///< dt = cfl * dx^2 / sigma_hi^2, in (0, 0.9]
    std::optional<double> dt;       ///< explicit step override (still stability-checked)
};

/// Solution snapshot of the G-heat equation on a uniform grid.
struct PDEGrid {
    double x_min = 0.0;
    double x_max = 0.0;
    int nx = 0;
    double dx = 0.0;
    double dt = 0.0;
    std::vector<double> u; ///< u(t_final, x_i), length nx

    /// Linear interpolation of the stored solution.  x outside
    /// [x_min, x_max] -> RangeError.
    double value_at(double x) const;
};

/// Indicator of [0, inf) with the symmetric value 1/2 at exactly 0 — the
/// canonical initial condition for CDF work.  Assigning the jump node its
/// midpoint keeps the scheme unbiased at the branch point.
double unit_step(double x) noexcept;

/// March the fully nonlinear G-heat equation
///
///     d_t u = G(d^2_xx u),   u(0, .) = phi0,
///
/// to t_final with the explicit monotone scheme u_i += dt * G(D2 u_i), where
/// D2 is the central second difference and G is g_function for p.  Boundary
/// nodes are held at phi0's values (Dirichlet); with the default 8-sigma
/// domain the truncation effect on indicator data is far below the scheme
/// error.  p.mu must be 0 — centering belongs to the callers below.
///
/// Stability: the explicit step requires dt * sigma_hi^2 / dx^2 <= 0.9; a
/// GridSpec that violates it is rejected with ConfigError before stepping.
PDEGrid solve_gheat(const GNormalParams& p,
                    const std::function<double(double)>& phi0,
                    double t_final,
                    const GridSpec& spec = {});

/// Worst-case CDF evaluated through the PDE instead of the closed form:
/// solves with unit_step data and reads u(1, x - mu), using the symmetry of
/// the centered G-normal law (X and -X share it) to turn E[1_{X <= x}] into
/// the solved E[1_{X >= -(x-mu)}] problem.  x must land in the interior 80%
/// of the spatial domain after centering; farther out the Dirichlet clamp is
/// the dominant error and the value is not certified -> RangeError.
Probability numeric_g_cdf(double x, const GNormalParams& p,
                          const GridSpec& spec = {});

/// Sublinear expectation E_G[phi(X)] for X ~ N(mu, [sigma_lo^2, sigma_hi^2]):
/// solves with initial data phi(mu + .) and reads the grid center, i.e.
/// u^phi(1, 0) after shifting phi by mu.  phi should be Lipschitz and bounded
/// on the spatial domain; expect O(dx) accuracy (the 8-sigma Dirichlet
/// boundary adds bias for payoffs that keep growing off-domain).
double expectation_of(const std::function<double(double)>& phi,
                      const GNormalParams& p,
                      const GridSpec& spec = {});

} // namespace gvar
