#ifndef IPROBE_WAVE_HPP
#define IPROBE_WAVE_HPP

#include "iprobe/field.hpp"
#include "iprobe/grid.hpp"
#include "iprobe/problem.hpp"
#include "iprobe/profile.hpp"
#include "iprobe/signal.hpp"

#include <vector>

namespace iprobe {

// Modal expansion of the wave solution with zero boundary input:
//   u(x,t) = sum_n [a_n cos(w_n t) + (b_n / w_n) sin(w_n t)] phi_n(x),
// phi_n = sqrt(2/l) sin(n pi x/l), w_n = n pi / l.
struct WaveSeriesSolution {
    double ell = 0.0;
    std::vector<double> a;           // (u0, phi_n)_l
    std::vector<double> b;           // (u1, phi_n)_l
    std::vector<double> frequencies; // w_n = n pi / l, strictly increasing
    bool from_sampled = false;       // coefficients came from interpolated data
};

WaveSeriesSolution wave_series_solution(const SpatialProfile& u0,
                                        const SpatialProfile& u1, double ell,
                                        int n_modes, int n_quad = 4000);

// Truncated series for u_x(0,t): the first n_modes terms of
//   sum_n [a_n cos(w_n t) + (b_n / w_n) sin(w_n t)] sqrt(2/l) (n pi / l).
// No tail bound is claimed (oscillatory terms). Solutions built from sampled
// data are rejected when their weighted coefficients n^2 |c_n| grow along the
// sequence, since the truncation is then meaningless.
Signal wave_series_flux(const WaveSeriesSolution& sol, int n_modes,
                        const TimeGrid& times);

// Explicit leapfrog, central in t and x; Courant number dt/dx must be <= 1.
// First step by the Taylor expansion u^1 = u^0 + dt u1 + dt^2/2 u^0_xx.
// Dirichlet rows are set exactly: u(0,t_j) = eta(t_j), u(l,t_j) = 0.
SpaceTimeField wave_fd_solve(const WaveProblem& p, const Grid& g);

// Left boundary flux of wave_fd_solve computed with three rolling time
// levels instead of the full field: O(nx) memory, bit-identical samples to
// boundary_flux_left(wave_fd_solve(p, g)). Intended for fine-grid misfit
// evaluations where storing (nx+1)(nt+1) values is wasteful.
Signal wave_fd_flux(const WaveProblem& p, const Grid& g);

// Discrete E(t_j) = int_0^l (u_t^2 + u_x^2) dx: centered differences in the
// interior, one-sided second order at the boundaries, trapezoid in x.
struct EnergyTrace {
    std::vector<double> values; // all >= 0 (sums of squares)
    double dt = 0.0;
};

EnergyTrace wave_energy(const SpaceTimeField& f);

// Left boundary value recovered from the flux at x = l when u(l,.) = 0:
//   u(0,t) = -1/2 int_{t-l}^{t+l} u_x(l,s) ds.
// The flux signal must span [t-l, t+l].
double dalembert_left_value(const Signal& flux_at_ell, double ell, double t);

} // namespace iprobe

#endif
