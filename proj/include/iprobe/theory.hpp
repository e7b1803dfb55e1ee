#ifndef IPROBE_THEORY_HPP
#define IPROBE_THEORY_HPP

#include "iprobe/grid.hpp"
#include "iprobe/inverse.hpp"
#include "iprobe/profile.hpp"

#include <vector>

namespace iprobe {

// Lowest-terms fraction detected by a continued-fraction expansion.
struct Rational {
    long long num = 0;
    long long den = 1;
};

// Rational detection for a positive real: accepts a convergent only when the
// expansion terminates numerically (next partial quotient above 1e6 or the
// fractional part below 1e-12), caps the denominator at 1e6, and requires
// the result to match x within 1e-9 relative. Throws std::domain_error when
// no such fraction exists (irrational within working precision).
Rational to_rational(double x);

// Two interval lengths sharing a Dirichlet eigenfrequency: the profile
// sin(k_small pi x/ell) = sin(k_large pi x/L) is an eigenmode of both
// intervals, so boundary observations at x = 0 cannot tell them apart.
struct CommensuratePair {
    double ell;
    double L;
    long long n0; // L/ell = m0/n0 in lowest terms
    long long m0;
    int k_small;       // mode number on (0, ell): k1 * n0
    int k_large;       // mode number on (0, L):   k1 * m0
    SpatialProfile u0; // unit-amplitude shared eigenprofile
};

// Builds the shared eigenmode for lengths with rational ratio; k1 picks the
// k1-th common frequency. Throws std::domain_error when L/ell is not
// rational within tolerance.
CommensuratePair commensurate_initial_data(double ell, double L, int k1);

// Sup gap over [t_min, T] between the series boundary fluxes of the two
// intervals of a pair, both started from the shared profile. t_min must be
// positive for the heat equation (derivative series). velocity_data moves
// the profile to the initial velocity (wave equation only).
double verify_flux_equality(const CommensuratePair& pair, Equation eq, double T,
                            double t_min, bool velocity_data = false);

// All lengths L = N*ell/n0 <= L_max with integer N >= n0: the only lengths
// whose spectra can embed into the observation of (0, ell) with mode ratio
// denominator n0.
std::vector<double> admissible_lengths(double ell, int n0, double L_max);

// Extends u0_half antisymmetrically about x = ell onto (0, 2*ell), solves
// the undriven heat problem on both intervals by finite differences (same
// space and time steps), and returns the sup gap of the two left fluxes.
// Antisymmetric data keeps u(ell, t) = 0, so the gap vanishes up to
// rounding; scale != -1 deliberately breaks the extension (negative
// control).
double symmetric_data_check(double ell, const SpatialProfile& u0_half, double T,
                            const Grid& g = Grid(256, 2048), double scale = -1.0);

struct TraceRatio {
    double ell;
    double raw;    // |f'(0)| * ell^(3/2) / ||f||_{H2(0,ell)}
    double scaled; // |f'(0)| * ell / N, N^2 = ||f||^2/ell + ell ||f'||^2 + ell^3 ||f''||^2
};

// Boundary-derivative trace ratios across interval lengths. The scaled form
// weights each Sobolev term to be invariant under x -> x/ell, so a profile
// family that only rescales gives one constant for every ell; the raw form
// is the literal trace quotient. Requires a closed-form profile (first and
// second derivatives are integrated).
std::vector<TraceRatio> trace_constant_probe(const SpatialProfile& f,
                                             const std::vector<double>& ells,
                                             int n_quad = 4000);

// One term of w(x,t) = sum_k sin(k pi (x-ell)/(L-ell)) *
// [amp_cos cos(k pi (t-T0)/(L-ell)) + amp_sin sin(k pi (t-T0)/(L-ell))],
// a free vibration on (ell, L) pinned at both ends.
struct StandingMode {
    int k = 1;
    double amp_cos = 0.0;
    double amp_sin = 0.0;
};

struct InequalitySides {
    double lhs = 0.0; // int_T0^T1 w_x(ell, t)^2 dt (quadrature on the trace)
    double rhs = 0.0; // (T1-T0+2d)/d * (||w_t(.,T0)||^2 + ||w_x(.,T0)||^2), exact
};

// Boundary-trace energy inequality lhs <= rhs for eigenmode superpositions:
// the escaping flux over a time window is controlled by the initial energy.
// Mode numbers must be distinct so the right side's orthogonal sum is exact.
InequalitySides direct_inequality_check(const std::vector<StandingMode>& modes,
                                        double ell, double L, double T0, double T1,
                                        int n_quad = 20000);

// Length-gap bound (ell1/2) * (T + 2*ell1 - 4*ell0) * M / delta0^2 for
// lengths inside [ell0, ell1], energies bounded by M and boundary input at
// least delta0 on the observation window. Requires T > 4*ell1.
double asymptotic_bound(double ell0, double ell1, double T, double M, double delta0);

enum class BoundStatus { holds, vacuous, inapplicable, violated };

struct BoundCheck {
    BoundStatus status = BoundStatus::inapplicable;
    double length_gap = 0.0; // L - ell
    double bound = 0.0;      // evaluated bound, 0 unless status is holds/violated
    double delta0 = 0.0;     // sup |eta| over [2*ell, T - 2*ell]
    double energy_cap = 0.0; // max energy of either run over time
    double flux_gap = 0.0;   // sup |flux_ell - flux_L| on the shared time grid
};

// Measures whether two wave runs of the same template at lengths ell and L
// are consistent with the length-gap bound: solves both on a shared grid,
// compares fluxes, reads delta0 off the boundary input and the energy cap
// off the computed fields. Fluxes apart by more than flux_tol, T <= 4*ell1
// or zero energy make the bound inapplicable; delta0 = 0 makes it vacuous.
BoundCheck bound_consistency_experiment(const ProblemTemplate& tmpl, double ell,
                                        double L, const Grid& g,
                                        double flux_tol = 1e-3);

} // namespace iprobe

#endif
