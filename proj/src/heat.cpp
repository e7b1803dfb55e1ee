#include "iprobe/heat.hpp"

#include "iprobe/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace iprobe {

namespace {

// If u0 is a pure sine eigenmode of (0,ell), return its mode number k and
// amplitude; k = 0 means no exact match.
struct ModeMatch {
    int k = 0;
    double amp = 0.0;
};

ModeMatch match_sine_mode(const SpatialProfile& u0, double ell) {
    ModeMatch m;
    if (u0.kind() == SpatialProfile::Kind::sine_mode) {
        // amp*sin(k pi x/l) matches mode k on any interval length.
        m.k = u0.mode_number();
        m.amp = u0.amplitude();
        return m;
    }
    if (u0.kind() == SpatialProfile::Kind::sine_abs) {
        // amp*sin(w x) matches mode k exactly when w = k pi / l.
        const double kf = u0.omega() * ell / M_PI;
        const double k = std::round(kf);
        if (k >= 1.0 && std::abs(kf - k) < 1e-12 * std::max(1.0, kf)) {
            m.k = static_cast<int>(k);
            m.amp = u0.amplitude();
        }
        return m;
    }
    return m;
}

} // namespace

std::vector<double> fourier_coefficients(const SpatialProfile& u0, double ell,
                                         int n_modes, int n_quad) {
    if (n_modes < 1)
        throw std::invalid_argument("fourier_coefficients: n_modes must be >= 1");
    if (!(ell > 0.0))
        throw std::invalid_argument("fourier_coefficients: ell must be positive");
    std::vector<double> c(n_modes, 0.0);
    if (u0.is_zero())
        return c;

    const ModeMatch m = match_sine_mode(u0, ell);
    if (m.k >= 1) {
        // (amp sin(k pi x/l), sqrt(2/l) sin(n pi x/l))_l = amp sqrt(l/2) delta_nk
        if (m.k <= n_modes)
            c[m.k - 1] = m.amp * std::sqrt(ell / 2.0);
        return c;
    }

    const double norm = std::sqrt(2.0 / ell);
    for (int n = 1; n <= n_modes; ++n) {
        const double w = static_cast<double>(n) * M_PI / ell;
        c[n - 1] = norm * trapezoid(
                              [&](double x) { return u0.value(x, ell) * std::sin(w * x); },
                              0.0, ell, n_quad);
    }
    return c;
}

HeatSeriesSolution heat_series_solution(const SpatialProfile& u0, double ell,
                                        int n_modes, int n_quad) {
    HeatSeriesSolution sol;
    sol.ell = ell;
    sol.coefficients = fourier_coefficients(u0, ell, n_modes, n_quad);
    sol.eigenvalues.resize(n_modes);
    for (int n = 1; n <= n_modes; ++n) {
        const double w = static_cast<double>(n) * M_PI / ell;
        sol.eigenvalues[n - 1] = w * w;
    }
    return sol;
}

Signal heat_series_flux(const HeatSeriesSolution& sol, const TimeGrid& times) {
    if (times.n < 2)
        throw std::invalid_argument("heat_series_flux: need at least 2 times");
    const double t_min = times.t0;
    if (!(t_min > 0.0))
        throw std::invalid_argument(
            "heat_series_flux: times must start at t > 0 (derivative series "
            "only converges away from t = 0)");

    const double ell = sol.ell;
    const std::size_t total = sol.coefficients.size();
    // Flux term magnitude at the earliest (least damped) time.
    std::vector<double> bound(total);
    for (std::size_t n = 1; n <= total; ++n) {
        const double w = static_cast<double>(n) * M_PI / ell;
        bound[n - 1] = std::abs(sol.coefficients[n - 1]) * std::sqrt(2.0 / ell) * w *
                       std::exp(-sol.eigenvalues[n - 1] * t_min);
    }
    // Smallest N whose tail bound is below 1e-12.
    std::size_t keep = total;
    double tail = 0.0;
    while (keep > 0 && tail + bound[keep - 1] < 1e-12) {
        tail += bound[keep - 1];
        --keep;
    }

    std::vector<double> out(times.n, 0.0);
    for (std::size_t j = 0; j < times.n; ++j) {
        const double t = times.t0 + static_cast<double>(j) * times.dt;
        double acc = 0.0;
        for (std::size_t n = 1; n <= keep; ++n) {
            const double w = static_cast<double>(n) * M_PI / ell;
            acc += sol.coefficients[n - 1] * std::sqrt(2.0 / ell) * w *
                   std::exp(-sol.eigenvalues[n - 1] * t);
        }
        out[j] = acc;
    }
    return Signal(std::move(out), times.dt, times.t0);
}

SpaceTimeField heat_fd_solve(const HeatProblem& p, const Grid& g) {
    const int nx = g.nx;
    const int nt = g.nt;
    SpaceTimeField u(p.ell, p.T, nx, nt);
    const double dx = u.dx();
    const double dt = u.dt();
    const double r = dt / (2.0 * dx * dx);

    // Initial slice: interior from u0, boundary rows from eta and zero.
    u(0, 0) = p.eta.value(0.0);
    for (int i = 1; i < nx; ++i)
        u(i, 0) = p.u0.value(u.x(i), p.ell);
    u(nx, 0) = 0.0;

    // Interior system (I - r A) u^{n+1} = (I + r A) u^n with A the second
    // difference; constant tridiagonal, so the Thomas forward sweep is
    // precomputed once.
    const int m = nx - 1; // unknowns per step
    const double diag = 1.0 + 2.0 * r;
    const double off = -r;
    std::vector<double> cp(m); // modified upper-diagonal coefficients
    {
        double beta = diag;
        cp[0] = off / beta;
        for (int i = 1; i < m; ++i) {
            beta = diag - off * cp[i - 1];
            cp[i] = off / beta;
        }
    }

    std::vector<double> rhs(m), dp(m);
    for (int j = 0; j < nt; ++j) {
        const double eta_next = p.eta.value(u.t(j + 1));
        for (int i = 1; i <= m; ++i)
            rhs[i - 1] = r * u(i - 1, j) + (1.0 - 2.0 * r) * u(i, j) + r * u(i + 1, j);
        rhs[0] += r * eta_next;      // Dirichlet value at x = 0, new level
        // right end is 0 on both levels; nothing to add

        // Thomas solve with the precomputed sweep.
        double beta = diag;
        dp[0] = rhs[0] / beta;
        for (int i = 1; i < m; ++i) {
            beta = diag - off * cp[i - 1];
            dp[i] = (rhs[i] - off * dp[i - 1]) / beta;
        }
        u(m, j + 1) = dp[m - 1];
        for (int i = m - 2; i >= 0; --i)
            dp[i] -= cp[i] * dp[i + 1];
        for (int i = 1; i <= m; ++i)
            u(i, j + 1) = dp[i - 1];

        u(0, j + 1) = eta_next;
        u(nx, j + 1) = 0.0;
    }
    return u;
}

Signal heat_fd_flux(const HeatProblem& p, const Grid& g) {
    const int nx = g.nx;
    const int nt = g.nt;
    if (nx < 3)
        throw std::invalid_argument("heat_fd_flux: need nx >= 3");
    const double dx = p.ell / static_cast<double>(nx);
    const double dt = p.T / static_cast<double>(nt);
    const double r = dt / (2.0 * dx * dx);
    const double inv = 1.0 / (2.0 * dx);

    std::vector<double> cur(static_cast<std::size_t>(nx) + 1);
    std::vector<double> nxt(static_cast<std::size_t>(nx) + 1);
    cur[0] = p.eta.value(0.0);
    for (int i = 1; i < nx; ++i)
        cur[i] = p.u0.value(static_cast<double>(i) * dx, p.ell);
    cur[nx] = 0.0;

    std::vector<double> flux(static_cast<std::size_t>(nt) + 1);
    flux[0] = (-3.0 * cur[0] + 4.0 * cur[1] - cur[2]) * inv;

    // Same Crank-Nicolson step as heat_fd_solve, expression for expression,
    // so the flux samples come out bit-identical.
    const int m = nx - 1;
    const double diag = 1.0 + 2.0 * r;
    const double off = -r;
    std::vector<double> cp(m);
    {
        double beta = diag;
        cp[0] = off / beta;
        for (int i = 1; i < m; ++i) {
            beta = diag - off * cp[i - 1];
            cp[i] = off / beta;
        }
    }

    std::vector<double> rhs(m), dp(m);
    for (int j = 0; j < nt; ++j) {
        const double eta_next = p.eta.value(static_cast<double>(j + 1) * dt);
        for (int i = 1; i <= m; ++i)
            rhs[i - 1] = r * cur[i - 1] + (1.0 - 2.0 * r) * cur[i] + r * cur[i + 1];
        rhs[0] += r * eta_next;

        double beta = diag;
        dp[0] = rhs[0] / beta;
        for (int i = 1; i < m; ++i) {
            beta = diag - off * cp[i - 1];
            dp[i] = (rhs[i] - off * dp[i - 1]) / beta;
        }
        for (int i = m - 2; i >= 0; --i)
            dp[i] -= cp[i] * dp[i + 1];
        for (int i = 1; i <= m; ++i)
            nxt[i] = dp[i - 1];

        nxt[0] = eta_next;
        nxt[nx] = 0.0;
        flux[j + 1] = (-3.0 * nxt[0] + 4.0 * nxt[1] - nxt[2]) * inv;
        cur.swap(nxt);
    }
    return Signal(std::move(flux), dt, 0.0);
}

} // namespace iprobe
