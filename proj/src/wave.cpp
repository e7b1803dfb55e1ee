#include "iprobe/wave.hpp"

#include "iprobe/heat.hpp" // fourier_coefficients

#include <cmath>
#include <stdexcept>
#include <string>

namespace iprobe {

namespace {

// Weighted-decay screen for coefficients obtained from interpolated data.
// Smooth data keeps n^2 |c_n| bounded; a jump makes it grow like n. Compare
// the first quarter of the sequence to the last: data whose weighted spectrum
// still grows near the truncation boundary cannot be summed reliably, and
// neither can data concentrated just below it.
void require_decay(const std::vector<double>& c, int n_modes, const char* name) {
    if (n_modes < 8)
        return;
    const int q = n_modes / 4;
    double head = 0.0, tail = 0.0;
    for (int n = 1; n <= n_modes; ++n) {
        const double w = static_cast<double>(n) * static_cast<double>(n) *
                         std::abs(c[static_cast<std::size_t>(n) - 1]);
        if (n <= q)
            head = std::max(head, w);
        else if (n > n_modes - q)
            tail = std::max(tail, w);
    }
    if (tail > 2.0 * head + 1e-12)
        throw std::invalid_argument(
            std::string("wave_series_flux: sampled ") + name +
            " has slowly decaying coefficients (n^2|c_n| grows from " +
            std::to_string(head) + " to " + std::to_string(tail) +
            "); the truncated series does not converge");
}

} // namespace

WaveSeriesSolution wave_series_solution(const SpatialProfile& u0,
                                        const SpatialProfile& u1, double ell,
                                        int n_modes, int n_quad) {
    if (n_modes < 1)
        throw std::invalid_argument("wave_series_solution: n_modes must be >= 1");
    if (!(ell > 0.0))
        throw std::invalid_argument("wave_series_solution: ell must be positive");
    WaveSeriesSolution sol;
    sol.ell = ell;
    sol.a = fourier_coefficients(u0, ell, n_modes, n_quad);
    sol.b = fourier_coefficients(u1, ell, n_modes, n_quad);
    sol.frequencies.resize(n_modes);
    for (int n = 1; n <= n_modes; ++n)
        sol.frequencies[n - 1] = static_cast<double>(n) * M_PI / ell;
    sol.from_sampled = !u0.is_closed_form() || !u1.is_closed_form();
    return sol;
}

Signal wave_series_flux(const WaveSeriesSolution& sol, int n_modes,
                        const TimeGrid& times) {
    if (times.n < 2)
        throw std::invalid_argument("wave_series_flux: need at least 2 times");
    const int have = static_cast<int>(sol.a.size());
    if (n_modes < 1 || n_modes > have)
        throw std::invalid_argument("wave_series_flux: n_modes out of range");
    if (sol.from_sampled) {
        require_decay(sol.a, n_modes, "u0");
        require_decay(sol.b, n_modes, "u1");
    }

    const double ell = sol.ell;
    const double norm = std::sqrt(2.0 / ell);
    std::vector<double> out(times.n, 0.0);
    for (std::size_t j = 0; j < times.n; ++j) {
        const double t = times.t0 + static_cast<double>(j) * times.dt;
        double acc = 0.0;
        for (int n = 1; n <= n_modes; ++n) {
            const double w = sol.frequencies[n - 1];
            acc += (sol.a[n - 1] * std::cos(w * t) +
                    sol.b[n - 1] / w * std::sin(w * t)) *
                   norm * w;
        }
        out[j] = acc;
    }
    return Signal(std::move(out), times.dt, times.t0);
}

SpaceTimeField wave_fd_solve(const WaveProblem& p, const Grid& g) {
    SpaceTimeField u(p.ell, p.T, g.nx, g.nt);
    const double dx = u.dx();
    const double dt = u.dt();
    const double courant = dt / dx;
    if (courant > 1.0 + 1e-12)
        throw std::invalid_argument("wave_fd_solve: Courant number dt/dx = " +
                                    std::to_string(courant) +
                                    " exceeds 1; increase nt or decrease nx");
    const double c2 = courant * courant;
    const int nx = g.nx;
    const int nt = g.nt;

    u(0, 0) = p.eta.value(0.0);
    for (int i = 1; i < nx; ++i)
        u(i, 0) = p.u0.value(u.x(i), p.ell);
    u(nx, 0) = 0.0;

    // Taylor start with the discrete Laplacian standing in for u0_xx.
    u(0, 1) = p.eta.value(u.t(1));
    for (int i = 1; i < nx; ++i) {
        const double lap = u(i + 1, 0) - 2.0 * u(i, 0) + u(i - 1, 0);
        u(i, 1) = u(i, 0) + dt * p.u1.value(u.x(i), p.ell) + 0.5 * c2 * lap;
    }
    u(nx, 1) = 0.0;

    for (int j = 1; j < nt; ++j) {
        u(0, j + 1) = p.eta.value(u.t(j + 1));
        for (int i = 1; i < nx; ++i)
            u(i, j + 1) = 2.0 * u(i, j) - u(i, j - 1) +
                          c2 * (u(i + 1, j) - 2.0 * u(i, j) + u(i - 1, j));
        u(nx, j + 1) = 0.0;
    }
    return u;
}

Signal wave_fd_flux(const WaveProblem& p, const Grid& g) {
    const int nx = g.nx;
    const int nt = g.nt;
    if (nx < 3)
        throw std::invalid_argument("wave_fd_flux: need nx >= 3");
    const double dx = p.ell / static_cast<double>(nx);
    const double dt = p.T / static_cast<double>(nt);
    const double courant = dt / dx;
    if (courant > 1.0 + 1e-12)
        throw std::invalid_argument("wave_fd_flux: Courant number dt/dx = " +
                                    std::to_string(courant) +
                                    " exceeds 1; increase nt or decrease nx");
    const double c2 = courant * courant;
    const double inv = 1.0 / (2.0 * dx);

    std::vector<double> prev(static_cast<std::size_t>(nx) + 1);
    std::vector<double> cur(static_cast<std::size_t>(nx) + 1);
    std::vector<double> nxt(static_cast<std::size_t>(nx) + 1);
    std::vector<double> flux(static_cast<std::size_t>(nt) + 1);

    prev[0] = p.eta.value(0.0);
    for (int i = 1; i < nx; ++i)
        prev[i] = p.u0.value(static_cast<double>(i) * dx, p.ell);
    prev[nx] = 0.0;
    flux[0] = (-3.0 * prev[0] + 4.0 * prev[1] - prev[2]) * inv;

    // Same leapfrog step as wave_fd_solve, expression for expression, so the
    // flux samples come out bit-identical.
    cur[0] = p.eta.value(dt);
    for (int i = 1; i < nx; ++i) {
        const double lap = prev[i + 1] - 2.0 * prev[i] + prev[i - 1];
        cur[i] = prev[i] + dt * p.u1.value(static_cast<double>(i) * dx, p.ell) +
                 0.5 * c2 * lap;
    }
    cur[nx] = 0.0;
    flux[1] = (-3.0 * cur[0] + 4.0 * cur[1] - cur[2]) * inv;

    for (int j = 1; j < nt; ++j) {
        nxt[0] = p.eta.value(static_cast<double>(j + 1) * dt);
        for (int i = 1; i < nx; ++i)
            nxt[i] = 2.0 * cur[i] - prev[i] +
                     c2 * (cur[i + 1] - 2.0 * cur[i] + cur[i - 1]);
        nxt[nx] = 0.0;
        flux[j + 1] = (-3.0 * nxt[0] + 4.0 * nxt[1] - nxt[2]) * inv;
        prev.swap(cur);
        cur.swap(nxt);
    }
    return Signal(std::move(flux), dt, 0.0);
}

EnergyTrace wave_energy(const SpaceTimeField& f) {
    const int nx = f.nx();
    const int nt = f.nt();
    const double dx = f.dx();
    const double dt = f.dt();
    if (nx < 2 || nt < 2)
        throw std::invalid_argument("wave_energy: need nx >= 2 and nt >= 2");

    auto ut = [&](int i, int j) {
        if (j == 0)
            return (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) / (2.0 * dt);
        if (j == nt)
            return (3.0 * f(i, nt) - 4.0 * f(i, nt - 1) + f(i, nt - 2)) / (2.0 * dt);
        return (f(i, j + 1) - f(i, j - 1)) / (2.0 * dt);
    };
    auto ux = [&](int i, int j) {
        if (i == 0)
            return (-3.0 * f(0, j) + 4.0 * f(1, j) - f(2, j)) / (2.0 * dx);
        if (i == nx)
            return (3.0 * f(nx, j) - 4.0 * f(nx - 1, j) + f(nx - 2, j)) / (2.0 * dx);
        return (f(i + 1, j) - f(i - 1, j)) / (2.0 * dx);
    };

    EnergyTrace trace;
    trace.dt = dt;
    trace.values.resize(static_cast<std::size_t>(nt) + 1);
    for (int j = 0; j <= nt; ++j) {
        double acc = 0.0;
        for (int i = 0; i <= nx; ++i) {
            const double t = ut(i, j);
            const double s = ux(i, j);
            const double density = t * t + s * s;
            acc += (i == 0 || i == nx) ? 0.5 * density : density;
        }
        trace.values[static_cast<std::size_t>(j)] = acc * dx;
    }
    return trace;
}

double dalembert_left_value(const Signal& flux_at_ell, double ell, double t) {
    if (!(ell > 0.0))
        throw std::invalid_argument("dalembert_left_value: ell must be positive");
    const double lo = t - ell;
    const double hi = t + ell;
    const double t_end = flux_at_ell.time(flux_at_ell.size() - 1);
    if (lo < flux_at_ell.t0() - 1e-12 || hi > t_end + 1e-12)
        throw std::invalid_argument(
            "dalembert_left_value: flux signal does not span [t-l, t+l]");
    return -0.5 * trapezoid_integral_between(flux_at_ell, lo, hi);
}

} // namespace iprobe
