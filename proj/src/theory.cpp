#include "iprobe/theory.hpp"

#include "iprobe/field.hpp"
#include "iprobe/heat.hpp"
#include "iprobe/quadrature.hpp"
#include "iprobe/wave.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace iprobe {

Rational to_rational(double x) {
    if (!std::isfinite(x) || !(x > 0.0))
        throw std::invalid_argument("to_rational: x must be positive and finite");
    constexpr long long den_cap = 1'000'000;
    constexpr double huge_quotient = 1e6;

    // Convergents h_i/k_i of the continued fraction of x.
    long long h0 = 0, k0 = 1; // h_{-2}/k_{-2}
    long long h1 = 1, k1 = 0; // h_{-1}/k_{-1}
    double y = x;
    for (int i = 0; i < 64; ++i) {
        const double af = std::floor(y);
        // Cheap overflow prechecks in double before the integer recurrence.
        if (af * static_cast<double>(k1) + static_cast<double>(k0) >
                static_cast<double>(den_cap) ||
            af * static_cast<double>(h1) + static_cast<double>(h0) > 9e18)
            break;
        const long long a = static_cast<long long>(af);
        const long long h2 = a * h1 + h0;
        const long long k2 = a * k1 + k0;
        const double frac = y - af;
        // The expansion terminates numerically: accept this convergent.
        if (frac < 1e-12 || 1.0 / frac > huge_quotient) {
            if (std::abs(x - static_cast<double>(h2) / static_cast<double>(k2)) <=
                1e-9 * std::abs(x))
                return {h2, k2};
            break;
        }
        h0 = h1;
        k0 = k1;
        h1 = h2;
        k1 = k2;
        y = 1.0 / frac;
    }
    throw std::domain_error("to_rational: " + std::to_string(x) +
                            " has no fraction with denominator <= 1e6 within "
                            "1e-9 relative tolerance");
}

CommensuratePair commensurate_initial_data(double ell, double L, int k1) {
    if (!(ell > 0.0) || !(L > ell))
        throw std::invalid_argument("commensurate_initial_data: need L > ell > 0");
    if (k1 < 1 || k1 > 1000)
        throw std::invalid_argument("commensurate_initial_data: k1 must be in [1, 1000]");
    Rational r{};
    try {
        r = to_rational(L / ell);
    } catch (const std::domain_error&) {
        throw std::domain_error("commensurate_initial_data: L/ell = " +
                                std::to_string(L / ell) +
                                " is not rational within tolerance; the "
                                "intervals share no eigenfrequency");
    }
    // Shared frequencies are k pi/ell = k' pi/L with k = k1*n0, k' = k1*m0.
    const long long ks = static_cast<long long>(k1) * r.den;
    const long long kl = static_cast<long long>(k1) * r.num;
    if (kl > 100000)
        throw std::invalid_argument(
            "commensurate_initial_data: shared mode number exceeds 1e5");
    CommensuratePair pair{ell,
                          L,
                          r.den,
                          r.num,
                          static_cast<int>(ks),
                          static_cast<int>(kl),
                          SpatialProfile::sine_abs(
                              1.0, static_cast<double>(ks) * M_PI / ell)};
    return pair;
}

double verify_flux_equality(const CommensuratePair& pair, Equation eq, double T,
                            double t_min, bool velocity_data) {
    if (!(T > t_min))
        throw std::invalid_argument("verify_flux_equality: need T > t_min");
    const int n_modes = pair.k_large + 4;
    const std::size_t n_samples = 2001;
    const TimeGrid grid{t_min, (T - t_min) / static_cast<double>(n_samples - 1),
                        n_samples};

    Signal a = [&] {
        if (eq == Equation::heat) {
            if (velocity_data)
                throw std::invalid_argument(
                    "verify_flux_equality: the heat flow has no initial velocity");
            if (!(t_min > 0.0))
                throw std::invalid_argument(
                    "verify_flux_equality: heat series needs t_min > 0");
            return heat_series_flux(heat_series_solution(pair.u0, pair.ell, n_modes),
                                    grid);
        }
        const SpatialProfile zero = SpatialProfile::zero();
        const SpatialProfile& u0 = velocity_data ? zero : pair.u0;
        const SpatialProfile& u1 = velocity_data ? pair.u0 : zero;
        return wave_series_flux(wave_series_solution(u0, u1, pair.ell, n_modes),
                                n_modes, grid);
    }();
    Signal b = [&] {
        if (eq == Equation::heat)
            return heat_series_flux(heat_series_solution(pair.u0, pair.L, n_modes),
                                    grid);
        const SpatialProfile zero = SpatialProfile::zero();
        const SpatialProfile& u0 = velocity_data ? zero : pair.u0;
        const SpatialProfile& u1 = velocity_data ? pair.u0 : zero;
        return wave_series_flux(wave_series_solution(u0, u1, pair.L, n_modes),
                                n_modes, grid);
    }();

    double gap = 0.0;
    for (std::size_t j = 0; j < n_samples; ++j)
        gap = std::max(gap, std::abs(a[j] - b[j]));
    return gap;
}

std::vector<double> admissible_lengths(double ell, int n0, double L_max) {
    if (!(ell > 0.0))
        throw std::invalid_argument("admissible_lengths: ell must be positive");
    if (n0 < 1)
        throw std::invalid_argument("admissible_lengths: n0 must be >= 1");
    std::vector<double> out;
    for (long long N = n0;; ++N) {
        const double L = static_cast<double>(N) * ell / static_cast<double>(n0);
        if (L > L_max * (1.0 + 1e-12))
            break;
        out.push_back(L);
    }
    return out;
}

double symmetric_data_check(double ell, const SpatialProfile& u0_half, double T,
                            const Grid& g, double scale) {
    if (!(ell > 0.0) || !(T > 0.0))
        throw std::invalid_argument("symmetric_data_check: need ell > 0 and T > 0");

    const HeatProblem half(ell, T, BoundaryInput::zero(), u0_half);
    const SpaceTimeField us = heat_fd_solve(half, g);

    // Same dx and dt on the doubled interval, so the two discrete solutions
    // coincide node by node whenever the extension really is antisymmetric.
    const SpatialProfile ext = SpatialProfile::reflected(u0_half, ell, scale);
    const HeatProblem doubled(2.0 * ell, T, BoundaryInput::zero(), ext);
    const SpaceTimeField ud = heat_fd_solve(doubled, Grid(2 * g.nx, g.nt));

    const Signal fs = boundary_flux_left(us);
    const Signal fd = boundary_flux_left(ud);
    double gap = 0.0;
    for (std::size_t j = 0; j < fs.size(); ++j)
        gap = std::max(gap, std::abs(fs[j] - fd[j]));
    return gap;
}

std::vector<TraceRatio> trace_constant_probe(const SpatialProfile& f,
                                             const std::vector<double>& ells,
                                             int n_quad) {
    if (!f.is_closed_form())
        throw std::invalid_argument(
            "trace_constant_probe: needs a profile with closed-form derivatives");
    if (n_quad < 16)
        throw std::invalid_argument("trace_constant_probe: n_quad too small");

    std::vector<TraceRatio> out;
    out.reserve(ells.size());
    for (const double ell : ells) {
        if (!(ell > 0.0))
            throw std::invalid_argument(
                "trace_constant_probe: lengths must be positive");
        const double i0 = trapezoid(
            [&](double x) { const double v = f.value(x, ell); return v * v; }, 0.0,
            ell, n_quad);
        const double i1 = trapezoid(
            [&](double x) { const double v = f.deriv(x, ell); return v * v; }, 0.0,
            ell, n_quad);
        const double i2 = trapezoid(
            [&](double x) { const double v = f.deriv2(x, ell); return v * v; }, 0.0,
            ell, n_quad);
        const double h2 = i0 + i1 + i2;
        const double n2 = i0 / ell + ell * i1 + ell * ell * ell * i2;
        if (!(h2 > 0.0))
            throw std::invalid_argument(
                "trace_constant_probe: profile vanishes identically on (0, ell)");
        const double slope = std::abs(f.deriv(0.0, ell));
        out.push_back({ell, slope * std::pow(ell, 1.5) / std::sqrt(h2),
                       slope * ell / std::sqrt(n2)});
    }
    return out;
}

InequalitySides direct_inequality_check(const std::vector<StandingMode>& modes,
                                        double ell, double L, double T0, double T1,
                                        int n_quad) {
    const double d = L - ell;
    if (!(ell >= 0.0) || !(d > 0.0))
        throw std::invalid_argument("direct_inequality_check: need L > ell >= 0");
    if (!(T1 > T0))
        throw std::invalid_argument("direct_inequality_check: need T1 > T0");
    if (n_quad < 100)
        throw std::invalid_argument("direct_inequality_check: n_quad too small");
    std::vector<int> ks;
    for (const StandingMode& m : modes) {
        if (m.k < 1)
            throw std::invalid_argument(
                "direct_inequality_check: mode numbers start at 1");
        ks.push_back(m.k);
    }
    std::sort(ks.begin(), ks.end());
    if (std::adjacent_find(ks.begin(), ks.end()) != ks.end())
        throw std::invalid_argument(
            "direct_inequality_check: duplicate mode numbers make the energy "
            "sum non-orthogonal");

    const double S = T1 - T0;
    // w_x at the left end x = ell, as a function of tau = t - T0.
    auto trace = [&](double tau) {
        double acc = 0.0;
        for (const StandingMode& m : modes) {
            const double w = static_cast<double>(m.k) * M_PI / d;
            acc += w * (m.amp_cos * std::cos(w * tau) + m.amp_sin * std::sin(w * tau));
        }
        return acc;
    };

    InequalitySides out;
    out.lhs = trapezoid(
        [&](double tau) { const double v = trace(tau); return v * v; }, 0.0, S,
        n_quad);
    double energy = 0.0; // ||w_t(.,T0)||^2 + ||w_x(.,T0)||^2, orthogonal modes
    for (const StandingMode& m : modes) {
        const double w = static_cast<double>(m.k) * M_PI / d;
        energy += 0.5 * d * w * w * (m.amp_cos * m.amp_cos + m.amp_sin * m.amp_sin);
    }
    out.rhs = (S + 2.0 * d) / d * energy;
    return out;
}

double asymptotic_bound(double ell0, double ell1, double T, double M, double delta0) {
    if (!(ell0 > 0.0) || !(ell1 >= ell0))
        throw std::invalid_argument("asymptotic_bound: need 0 < ell0 <= ell1");
    if (!(T > 4.0 * ell1))
        throw std::invalid_argument("asymptotic_bound: needs T > 4*ell1");
    if (!(M > 0.0))
        throw std::invalid_argument("asymptotic_bound: M must be positive");
    if (!(delta0 > 0.0))
        throw std::invalid_argument("asymptotic_bound: delta0 must be positive");
    return 0.5 * ell1 * (T + 2.0 * ell1 - 4.0 * ell0) * M / (delta0 * delta0);
}

BoundCheck bound_consistency_experiment(const ProblemTemplate& tmpl, double ell,
                                        double L, const Grid& g, double flux_tol) {
    if (tmpl.equation != Equation::wave)
        throw std::invalid_argument(
            "bound_consistency_experiment: wave equation runs only");
    if (!(ell > 0.0) || !(L >= ell))
        throw std::invalid_argument(
            "bound_consistency_experiment: need 0 < ell <= L");
    if (!(flux_tol > 0.0))
        throw std::invalid_argument(
            "bound_consistency_experiment: flux_tol must be positive");

    const Grid sg = effective_solver_grid(Equation::wave, g, tmpl.T, ell);
    const SpaceTimeField ua = wave_fd_solve(wave_at(tmpl, ell), sg);
    const SpaceTimeField ub = wave_fd_solve(wave_at(tmpl, L), sg);
    const Signal fa = boundary_flux_left(ua);
    const Signal fb = boundary_flux_left(ub);

    BoundCheck out;
    out.length_gap = L - ell;
    for (std::size_t j = 0; j < fa.size(); ++j)
        out.flux_gap = std::max(out.flux_gap, std::abs(fa[j] - fb[j]));

    // Boundary amplitude over the window where echoes from both ends arrive.
    const double w0 = 2.0 * ell;
    const double w1 = tmpl.T - 2.0 * ell;
    if (w1 > w0 && !tmpl.eta.is_zero()) {
        const int n = 4000;
        for (int i = 0; i <= n; ++i) {
            const double t = w0 + (w1 - w0) * static_cast<double>(i) / n;
            out.delta0 = std::max(out.delta0, std::abs(tmpl.eta.value(t)));
        }
    }

    const EnergyTrace ea = wave_energy(ua);
    const EnergyTrace eb = wave_energy(ub);
    for (const double e : ea.values)
        out.energy_cap = std::max(out.energy_cap, e);
    for (const double e : eb.values)
        out.energy_cap = std::max(out.energy_cap, e);

    if (out.flux_gap > flux_tol) {
        out.status = BoundStatus::inapplicable; // observations disagree
        return out;
    }
    if (!(tmpl.T > 4.0 * L) || !(out.energy_cap > 0.0)) {
        out.status = BoundStatus::inapplicable; // bound hypotheses fail
        return out;
    }
    if (out.delta0 == 0.0) {
        out.status = BoundStatus::vacuous; // no boundary input to compare against
        return out;
    }
    out.bound = asymptotic_bound(ell, L, tmpl.T, out.energy_cap, out.delta0);
    out.status = (out.length_gap <= out.bound + 1e-12) ? BoundStatus::holds
                                                       : BoundStatus::violated;
    return out;
}

} // namespace iprobe
