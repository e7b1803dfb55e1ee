#include "iprobe/inverse.hpp"

#include "iprobe/field.hpp"
#include "iprobe/heat.hpp"
#include "iprobe/parallel.hpp"
#include "iprobe/rng.hpp"
#include "iprobe/wave.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace iprobe {

namespace {

Signal solve_flux(const ProblemTemplate& tmpl, double ell, const Grid& g) {
    if (tmpl.equation == Equation::heat)
        return heat_fd_flux(heat_at(tmpl, ell), g);
    return wave_fd_flux(wave_at(tmpl, ell), g);
}

} // namespace

HeatProblem heat_at(const ProblemTemplate& tmpl, double ell) {
    return HeatProblem(ell, tmpl.T, tmpl.eta, tmpl.u0);
}

WaveProblem wave_at(const ProblemTemplate& tmpl, double ell) {
    // Warnings off: candidate sweeps probe lengths with T <= l on purpose.
    return WaveProblem(ell, tmpl.T, tmpl.eta, tmpl.u0, tmpl.u1, false);
}

Grid effective_solver_grid(Equation eq, const Grid& g, double T, double ell_smallest) {
    if (!(ell_smallest > 0.0))
        throw std::invalid_argument(
            "effective_solver_grid: ell_smallest must be positive");
    if (!(T > 0.0))
        throw std::invalid_argument("effective_solver_grid: T must be positive");
    if (eq == Equation::heat)
        return g;
    const double steps = T * static_cast<double>(g.nx) / ell_smallest;
    if (steps > 1e8)
        throw std::invalid_argument(
            "effective_solver_grid: Courant-stable step count exceeds 1e8");
    const int nt = std::max(g.nt, static_cast<int>(std::ceil(steps)));
    return Grid(g.nx, nt);
}

InverseProblem::InverseProblem(ProblemTemplate tmpl, Signal target, double ell_lo,
                               double ell_hi, const Grid& grid)
    : tmpl_(std::move(tmpl)),
      target_(std::move(target)),
      lo_(ell_lo),
      hi_(ell_hi),
      requested_grid_(grid),
      solver_grid_(effective_solver_grid(tmpl_.equation, grid, tmpl_.T, ell_lo)) {
    if (!(lo_ > 0.0) || !(hi_ > lo_))
        throw std::invalid_argument("InverseProblem: need 0 < ell_lo < ell_hi");
    const double tol = 1e-9 * std::max(1.0, tmpl_.T);
    if (std::abs(target_.t0()) > tol || target_.end_time() > tmpl_.T + tol)
        throw std::invalid_argument("InverseProblem: target must be sampled on [0, T]");
}

double InverseProblem::cost(double ell) const {
    if (!(ell >= lo_ && ell <= hi_))
        throw std::invalid_argument("InverseProblem::cost: ell = " +
                                    std::to_string(ell) + " outside bracket");
    Signal flux = [&] {
        try {
            return solve_flux(tmpl_, ell, solver_grid_);
        } catch (const std::exception& e) {
            throw std::runtime_error("forward solve failed at ell = " +
                                     std::to_string(ell) + ": " + e.what());
        }
    }();
    const Signal fit =
        flux.resample(TimeGrid{target_.t0(), target_.dt(), target_.size()});
    const std::size_t n = target_.size();
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double r = target_[j] - fit[j];
        const double w = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
        acc += w * r * r;
    }
    return 0.5 * acc * target_.dt();
}

InverseProblem InverseProblem::with_target(Signal target) const {
    return InverseProblem(tmpl_, std::move(target), lo_, hi_, requested_grid_);
}

namespace {

constexpr double kGolden = 0.3819660112501051; // (3 - sqrt(5)) / 2

struct BrentOut {
    double x = 0.0;
    double fx = 0.0;
    Termination termination = Termination::max_iter;
};

// Bounded minimization on [lo, hi] seeded at start: golden-section steps with
// successive parabolic interpolation, every evaluation appended to trace.
template <class F>
BrentOut brent(F&& f, double lo, double hi, double start, const MinimizeOptions& opts,
               std::vector<Iterate>& trace) {
    const double tol = opts.tol_ell;
    double a = lo, b = hi;
    double x = start, w = start, v = start;
    double fx = f(x);
    trace.push_back({x, fx});
    double fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    BrentOut out;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        if (fx <= opts.tol_cost) {
            out.termination = Termination::converged;
            break;
        }
        const double m = 0.5 * (a + b);
        if (std::max(x - a, b - x) <= 2.0 * tol) {
            out.termination = Termination::converged;
            break;
        }
        double step = 0.0;
        bool parabolic = false;
        if (std::abs(e) > tol) {
            // Parabola through (v,fv), (x,fx), (w,fw); accept the vertex when
            // the step is shorter than half the one before last and interior.
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0)
                p = -p;
            else
                q = -q;
            if (std::abs(p) < std::abs(0.5 * q * e) && p > q * (a - x) &&
                p < q * (b - x)) {
                e = d;
                step = p / q;
                parabolic = true;
                const double u_try = x + step;
                if (u_try - a < 2.0 * tol || b - u_try < 2.0 * tol)
                    step = (x < m) ? tol : -tol;
            }
        }
        if (!parabolic) {
            e = (x < m) ? b - x : a - x;
            step = kGolden * e;
        }
        d = step;
        const double u = (std::abs(d) >= tol) ? x + d : x + (d > 0.0 ? tol : -tol);
        const double fu = f(u);
        trace.push_back({u, fu});
        if (fu <= fx) {
            if (u < x)
                b = x;
            else
                a = x;
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if (u < x)
                a = u;
            else
                b = u;
            if (fu <= fw || w == x) {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u;
                fv = fu;
            }
        }
    }
    out.x = x;
    out.fx = fx;
    // A minimizer pinned against the bracket wall is suspect: the true length
    // likely lies outside [lo, hi]. A genuine misfit-level hit is trusted.
    if (fx > opts.tol_cost && std::min(x - lo, hi - x) < 2.0 * tol)
        out.termination = Termination::bracket_edge;
    return out;
}

void check_options(const MinimizeOptions& opts) {
    if (opts.max_iter < 1 || opts.multistart_count < 1 || !(opts.tol_ell > 0.0) ||
        !(opts.tol_cost >= 0.0))
        throw std::invalid_argument("MinimizeOptions: bad values");
}

} // namespace

ReconstructionResult minimize_length(const InverseProblem& ip, double ell_init,
                                     const MinimizeOptions& opts) {
    const double lo = ip.ell_lo();
    const double hi = ip.ell_hi();
    if (!(ell_init > lo && ell_init < hi))
        throw std::invalid_argument(
            "minimize_length: ell_init must lie inside (ell_lo, ell_hi)");
    check_options(opts);

    std::vector<double> seeds{ell_init};
    for (int k = 1; k < opts.multistart_count; ++k)
        seeds.push_back(lo + (hi - lo) * static_cast<double>(k) /
                                static_cast<double>(opts.multistart_count));

    auto f = [&ip](double ell) { return ip.cost(ell); };
    ReconstructionResult best;
    std::vector<Iterate> all;
    bool have = false;
    for (double s : seeds) {
        std::vector<Iterate> trace;
        const BrentOut r = brent(f, lo, hi, s, opts, trace);
        all.insert(all.end(), trace.begin(), trace.end());
        if (!have || r.fx < best.final_cost) {
            have = true;
            best.L_c = r.x;
            best.final_cost = r.fx;
            best.termination = r.termination;
        }
    }
    best.iterates = std::move(all);
    best.evaluations = static_cast<int>(best.iterates.size());
    return best;
}

CostLandscape scan_cost(const InverseProblem& ip, int n_samples,
                        const MinimizeOptions& opts) {
    if (n_samples < 10)
        throw std::invalid_argument("scan_cost: need at least 10 samples");
    check_options(opts);
    const double lo = ip.ell_lo();
    const double hi = ip.ell_hi();

    CostLandscape out;
    out.samples.resize(static_cast<std::size_t>(n_samples));
    parallel_for(n_samples, [&](int i) {
        const double ell = std::min(
            hi, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_samples - 1));
        out.samples[static_cast<std::size_t>(i)] = {ell, ip.cost(ell)};
    });

    auto f = [&ip](double ell) { return ip.cost(ell); };
    std::vector<LocalMinimum> mins;
    for (int i = 1; i + 1 < n_samples; ++i) {
        const double c = out.samples[i].cost;
        if (c < out.samples[i - 1].cost && c < out.samples[i + 1].cost) {
            const double a = out.samples[i - 1].ell;
            const double b = out.samples[i + 1].ell;
            std::vector<Iterate> trace;
            const BrentOut r = brent(f, a, b, out.samples[i].ell, opts, trace);
            mins.push_back({a, r.x, b, r.fx});
        }
    }

    // Adjacent dips can refine to the same point; keep the deeper one.
    const double merge_tol = 1e-6 * (hi - lo);
    for (const LocalMinimum& m : mins) {
        bool merged = false;
        for (LocalMinimum& kept : out.local_minima) {
            if (std::abs(kept.ell - m.ell) <= merge_tol) {
                if (m.cost < kept.cost)
                    kept = m;
                merged = true;
                break;
            }
        }
        if (!merged)
            out.local_minima.push_back(m);
    }
    return out;
}

Signal add_noise(const Signal& beta, double percent, std::uint64_t seed) {
    if (!std::isfinite(percent) || percent < 0.0)
        throw std::invalid_argument("add_noise: percent must be finite and >= 0");
    if (percent == 0.0)
        return beta;
    SeededRng rng(seed);
    const double amp = percent / 100.0;
    std::vector<double> s(beta.size());
    for (std::size_t j = 0; j < beta.size(); ++j)
        s[j] = beta[j] * (1.0 + amp * rng.uniform_pm1());
    return Signal(std::move(s), beta.dt(), beta.t0());
}

std::vector<SweepRow> noise_sweep(const InverseProblem& ip, double ell_init,
                                  const std::vector<double>& levels,
                                  std::uint64_t seed, const MinimizeOptions& opts) {
    std::vector<SweepRow> rows(levels.size());
    parallel_for(static_cast<int>(levels.size()), [&](int i) {
        SweepRow& row = rows[static_cast<std::size_t>(i)];
        row.level = levels[static_cast<std::size_t>(i)];
        try {
            const InverseProblem noisy = ip.with_target(
                add_noise(ip.target(), row.level, sub_seed(seed, static_cast<std::uint64_t>(i))));
            const ReconstructionResult r = minimize_length(noisy, ell_init, opts);
            row.final_cost = r.final_cost;
            row.iterates = r.evaluations;
            row.L_c = r.L_c;
            row.termination = r.termination;
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
    });
    return rows;
}

Signal make_target(const ProblemTemplate& tmpl, double ell_true, const Grid& recon_grid,
                   std::size_t n_obs, int refine, double ell_smallest) {
    if (!(ell_true > 0.0))
        throw std::invalid_argument("make_target: ell_true must be positive");
    if (refine < 1)
        throw std::invalid_argument("make_target: refine must be >= 1");
    if (n_obs < 2)
        throw std::invalid_argument("make_target: need at least 2 observation times");
    const double policy = ell_smallest > 0.0 ? ell_smallest : ell_true;
    const Grid fine = effective_solver_grid(
        tmpl.equation, Grid(recon_grid.nx * refine, recon_grid.nt * refine), tmpl.T,
        policy);
    const Signal flux = solve_flux(tmpl, ell_true, fine);
    const double dt = tmpl.T / static_cast<double>(n_obs - 1);
    return flux.resample(TimeGrid{0.0, dt, n_obs});
}

} // namespace iprobe
