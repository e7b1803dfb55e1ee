#ifndef IPROBE_HEAT_HPP
#define IPROBE_HEAT_HPP

#include "iprobe/field.hpp"
#include "iprobe/grid.hpp"
#include "iprobe/problem.hpp"
#include "iprobe/profile.hpp"
#include "iprobe/signal.hpp"

#include <vector>

namespace iprobe {

// Eigenfunction expansion of the zero-input heat solution on (0,l):
// u(x,t) = sum c_n phi_n(x) e^{-lambda_n t}, phi_n = sqrt(2/l) sin(n pi x/l),
// lambda_n = n^2 pi^2 / l^2, c_n = (u0, phi_n)_l.
struct HeatSeriesSolution {
    double ell;
    std::vector<double> coefficients; // c_1 .. c_N
    std::vector<double> eigenvalues;  // lambda_1 .. lambda_N
};

// Coefficients (u0, phi_n)_l for n = 1..n_modes. Tagged sine modes bypass
// quadrature: sin(k pi x/l) hits a single coefficient amp*sqrt(l/2) exactly.
std::vector<double> fourier_coefficients(const SpatialProfile& u0, double ell,
                                         int n_modes, int n_quad = 4000);

HeatSeriesSolution heat_series_solution(const SpatialProfile& u0, double ell,
                                        int n_modes, int n_quad = 4000);

// Flux u_x(0,t) = sum c_n sqrt(2/l) (n pi/l) e^{-lambda_n t} on the given
// time grid. All times must be positive: the series of x-derivatives only
// converges for t bounded away from 0, and the tail is truncated where the
// bound sum_{n>N} |c_n| sqrt(2/l)(n pi/l) e^{-lambda_n t_min} drops below
// 1e-12.
Signal heat_series_flux(const HeatSeriesSolution& sol, const TimeGrid& times);

// Crank-Nicolson (theta = 1/2) with exact Dirichlet rows; unconditionally
// stable, second order in dx and dt. Tridiagonal systems by the Thomas
// algorithm with precomputed elimination coefficients.
SpaceTimeField heat_fd_solve(const HeatProblem& p, const Grid& g);

// Left boundary flux of heat_fd_solve computed with two rolling time levels
// instead of the full field: O(nx) memory, bit-identical samples to
// boundary_flux_left(heat_fd_solve(p, g)). Intended for fine-grid misfit
// evaluations where storing (nx+1)(nt+1) values is wasteful.
Signal heat_fd_flux(const HeatProblem& p, const Grid& g);

} // namespace iprobe

#endif
