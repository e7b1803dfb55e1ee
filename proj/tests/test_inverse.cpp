#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "iprobe/inverse.hpp"
#include "iprobe/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

using namespace iprobe;

namespace {

// Heat run driven only through the boundary: eta(t) = 5 sin(t)^3, zero data.
ProblemTemplate pulse_heat() {
    ProblemTemplate t;
    t.T = 5.0;
    t.eta = BoundaryInput::sin_cubed(5.0);
    return t;
}

// Heat run with a quadratic ramp input and a parabolic initial profile.
ProblemTemplate ramp_heat() {
    ProblemTemplate t;
    t.T = 5.0;
    t.eta = BoundaryInput::ramp_quad(0.2, 2.0);
    t.u0 = SpatialProfile::quad_bump(5.0, 2.0);
    return t;
}

// Undriven heat run whose initial profile sin(pi x/2) is an eigenmode of
// every interval with even integer length.
ProblemTemplate eigenmode_heat() {
    ProblemTemplate t;
    t.T = 5.0;
    t.u0 = SpatialProfile::sine_abs(1.0, M_PI / 2.0);
    return t;
}

// Wave run driven only through the boundary: eta(t) = 3 sin(t)^3.
ProblemTemplate pulse_wave() {
    ProblemTemplate t;
    t.equation = Equation::wave;
    t.T = 4.0;
    t.eta = BoundaryInput::sin_cubed(3.0);
    return t;
}

InverseProblem eigenmode_ip(const Grid& g) {
    const auto tmpl = eigenmode_heat();
    Signal target = make_target(tmpl, 6.0, g, static_cast<std::size_t>(g.nt) + 1, 2);
    return InverseProblem(tmpl, std::move(target), 3.0, 7.0, g);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool bit_equal(const Signal& a, const Signal& b) {
    if (a.size() != b.size() || a.dt() != b.dt() || a.t0() != b.t0())
        return false;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != b[j])
            return false;
    return true;
}

} // namespace

TEST_CASE("solver grid policy keeps heat grids and stabilizes wave grids") {
    const Grid g(100, 200);
    const Grid h = effective_solver_grid(Equation::heat, g, 4.0, 0.5);
    CHECK(h.nx == 100);
    CHECK(h.nt == 200);

    // dt = T/nt must not exceed dx = l/nx at the smallest candidate length
    const Grid w = effective_solver_grid(Equation::wave, g, 4.0, 0.5);
    CHECK(w.nx == 100);
    CHECK(w.nt == 800); // ceil(4 * 100 / 0.5)

    const Grid w2 = effective_solver_grid(Equation::wave, Grid(100, 2000), 4.0, 0.5);
    CHECK(w2.nt == 2000); // already fine enough

    const Grid w3 = effective_solver_grid(Equation::wave, Grid(200, 8), 4.0, 0.5);
    CHECK(w3.nt == 1600);

    CHECK_THROWS_AS(effective_solver_grid(Equation::wave, g, 4.0, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(effective_solver_grid(Equation::wave, g, 0.0, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(effective_solver_grid(Equation::wave, g, 4.0, 1e-9),
                    std::invalid_argument); // absurd step count
}

TEST_CASE("matched-grid data is reproduced exactly at the true length") {
    const Grid g(60, 300);

    // heat: observation grid equal to the solver grid makes J(l*) exactly 0
    const auto ht = pulse_heat();
    Signal hb = make_target(ht, 2.0, g, 301, 1, 0.5);
    const InverseProblem hip(ht, hb, 0.5, 4.0, g);
    CHECK(hip.cost(2.0) == 0.0);
    CHECK(hip.cost(2.6) > 0.0);

    // evaluating twice at the same candidate gives the identical bits
    CHECK(hip.cost(1.7) == hip.cost(1.7));

    // wave: same property on the Courant-stabilized grid
    const auto wt = pulse_wave();
    const Grid wg = effective_solver_grid(Equation::wave, g, wt.T, 0.5);
    Signal wb = make_target(wt, 2.0, g, static_cast<std::size_t>(wg.nt) + 1, 1, 0.5);
    const InverseProblem wip(wt, wb, 0.5, 4.0, g);
    CHECK(wip.solver_grid().nt == wg.nt);
    CHECK(wip.cost(2.0) == 0.0);
    CHECK(wip.cost(3.1) > 0.0);
}

TEST_CASE("inverse problem rejects bad brackets and mismatched targets") {
    const Grid g(60, 300);
    const auto tmpl = pulse_heat();
    Signal beta = make_target(tmpl, 2.0, g, 301, 1);

    CHECK_THROWS_AS(InverseProblem(tmpl, beta, 0.0, 4.0, g), std::invalid_argument);
    CHECK_THROWS_AS(InverseProblem(tmpl, beta, -1.0, 4.0, g), std::invalid_argument);
    CHECK_THROWS_AS(InverseProblem(tmpl, beta, 2.0, 2.0, g), std::invalid_argument);
    CHECK_THROWS_AS(InverseProblem(tmpl, beta, 3.0, 1.0, g), std::invalid_argument);

    // target must start at t = 0 and stay inside [0, T]
    std::vector<double> s(301, 1.0);
    CHECK_THROWS_AS(InverseProblem(tmpl, Signal(s, 5.0 / 300.0, 0.5), 0.5, 4.0, g),
                    std::invalid_argument);
    CHECK_THROWS_AS(InverseProblem(tmpl, Signal(s, 6.0 / 300.0, 0.0), 0.5, 4.0, g),
                    std::invalid_argument);

    const InverseProblem ip(tmpl, beta, 0.5, 4.0, g);
    CHECK_THROWS_AS(ip.cost(0.4), std::invalid_argument);
    CHECK_THROWS_AS(ip.cost(4.1), std::invalid_argument);

    const InverseProblem ip2 = ip.with_target(beta);
    CHECK(ip2.solver_grid().nx == ip.solver_grid().nx);
    CHECK(ip2.solver_grid().nt == ip.solver_grid().nt);
    CHECK(ip2.ell_lo() == ip.ell_lo());
    CHECK(ip2.ell_hi() == ip.ell_hi());
}

TEST_CASE("forward-solver failures carry the offending candidate length") {
    // Initial data sampled on [0,2] cannot be stretched to other candidates,
    // so every cost evaluation away from l = 2 fails.
    std::vector<double> v(65);
    for (int i = 0; i <= 64; ++i)
        v[i] = std::sin(M_PI * static_cast<double>(i) / 64.0);
    ProblemTemplate tmpl;
    tmpl.T = 5.0;
    tmpl.u0 = SpatialProfile::sampled(v, 2.0);

    const Grid g(60, 300);
    Signal beta = make_target(tmpl, 2.0, g, 301, 1);
    const InverseProblem ip(tmpl, beta, 0.5, 4.0, g);
    CHECK(std::isfinite(ip.cost(2.0)));

    bool threw = false;
    try {
        ip.cost(2.5);
    } catch (const std::runtime_error& e) {
        threw = true;
        CHECK(std::string(e.what()).find("2.5") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("zero data yields an identically flat landscape") {
    ProblemTemplate tmpl;
    tmpl.T = 5.0;
    const Grid g(60, 300);
    Signal beta(std::vector<double>(301, 0.0), 5.0 / 300.0, 0.0);
    const InverseProblem ip(tmpl, beta, 0.5, 4.0, g);

    CHECK(ip.cost(1.0) == 0.0);
    CHECK(ip.cost(3.3) == 0.0);

    const CostLandscape scan = scan_cost(ip, 21);
    CHECK(scan.samples.size() == 21);
    CHECK(scan.local_minima.empty()); // no strict dip anywhere
    CHECK(scan.samples.front().ell == 0.5);
    CHECK(scan.samples.back().ell == doctest::Approx(4.0).epsilon(1e-14));
    for (std::size_t i = 0; i + 1 < scan.samples.size(); ++i)
        CHECK(scan.samples[i].ell < scan.samples[i + 1].ell);
    for (const Iterate& s : scan.samples)
        CHECK(s.cost == 0.0);
}

TEST_CASE("boundary-driven heat data pins the interval length") {
    const auto tmpl = pulse_heat();
    const Grid g(100, 500);
    Signal beta = make_target(tmpl, 2.0, g, 501, 1);
    const InverseProblem ip(tmpl, beta, 0.5, 4.0, g);

    MinimizeOptions opts;
    opts.tol_ell = 1e-5;
    const ReconstructionResult res = minimize_length(ip, 3.0, opts);

    CHECK(std::abs(res.L_c - 2.0) <= 1e-3);
    CHECK(res.final_cost < 1e-8);
    CHECK(res.termination == Termination::converged);

    // the trace is the full evaluation history
    CHECK(res.evaluations == static_cast<int>(res.iterates.size()));
    CHECK(res.evaluations <= opts.max_iter + 1);
    CHECK(res.iterates.front().ell == 3.0);
    double best = res.iterates.front().cost;
    for (const Iterate& it : res.iterates) {
        CHECK(it.ell >= 0.5);
        CHECK(it.ell <= 4.0);
        best = std::min(best, it.cost);
    }
    CHECK(best == res.final_cost);
}

TEST_CASE("ramp input with parabolic initial data reconstructs the length") {
    const auto tmpl = ramp_heat();
    const Grid g(100, 500);
    Signal beta = make_target(tmpl, 2.0, g, 501, 1);
    const InverseProblem ip(tmpl, beta, 0.2, 4.0, g);

    MinimizeOptions opts;
    opts.tol_ell = 1e-5;
    const ReconstructionResult res = minimize_length(ip, 0.5, opts);
    CHECK(std::abs(res.L_c - 2.0) <= 1e-3);
    CHECK(res.final_cost < 1e-8);
}

TEST_CASE("seeding at the true length converges in one evaluation") {
    const auto tmpl = pulse_heat();
    const Grid g(60, 300);
    Signal beta = make_target(tmpl, 2.0, g, 301, 1);
    const InverseProblem ip(tmpl, beta, 0.5, 4.0, g);

    const ReconstructionResult res = minimize_length(ip, 2.0);
    CHECK(res.L_c == 2.0);
    CHECK(res.final_cost == 0.0);
    CHECK(res.evaluations == 1);
    CHECK(res.termination == Termination::converged);
}

TEST_CASE("wave reconstruction runs on the stabilized grid") {
    const auto tmpl = pulse_wave();
    const Grid g(100, 200);
    const Grid wg = effective_solver_grid(Equation::wave, g, tmpl.T, 0.5);
    Signal beta = make_target(tmpl, 2.0, g, static_cast<std::size_t>(wg.nt) + 1, 1, 0.5);
    const InverseProblem ip(tmpl, beta, 0.5, 4.0, g);
    CHECK(ip.solver_grid().nt == 800);

    MinimizeOptions opts;
    opts.tol_ell = 1e-5;
    const ReconstructionResult res = minimize_length(ip, 1.5, opts);
    CHECK(std::abs(res.L_c - 2.0) <= 1e-3);
    CHECK(res.final_cost < 1e-8);
    CHECK(res.termination == Termination::converged);
}

TEST_CASE("eigenmode data produces two basins at even lengths") {
    const InverseProblem ip = eigenmode_ip(Grid(300, 1500));

    MinimizeOptions opts;
    opts.tol_ell = 1e-5;
    const CostLandscape scan = scan_cost(ip, 101, opts);

    REQUIRE(scan.local_minima.size() == 2);
    const LocalMinimum& m4 = scan.local_minima[0];
    const LocalMinimum& m6 = scan.local_minima[1];
    CHECK(std::abs(m4.ell - 4.0) < 0.05);
    CHECK(std::abs(m6.ell - 6.0) < 0.05);
    CHECK(m4.cost < 1e-6);
    CHECK(m6.cost < 1e-6);
    CHECK(m4.left < m4.ell);
    CHECK(m4.ell < m4.right);

    // between the basins the misfit is orders of magnitude larger
    CHECK(ip.cost(5.0) > 1e-4);
}

TEST_CASE("a narrow bracket isolates a single basin") {
    const auto tmpl = pulse_heat();
    const Grid g(100, 500);
    Signal beta = make_target(tmpl, 2.0, g, 501, 2);
    const InverseProblem ip(tmpl, beta, 1.7, 2.6, g);

    const CostLandscape scan = scan_cost(ip, 41);
    REQUIRE(scan.local_minima.size() == 1);
    CHECK(std::abs(scan.local_minima[0].ell - 2.0) < 0.01);
    CHECK(scan.local_minima[0].cost < 1e-6);
}

TEST_CASE("multistart dominates a single start") {
    const InverseProblem ip = eigenmode_ip(Grid(300, 1500));

    MinimizeOptions single;
    single.tol_ell = 1e-5;
    MinimizeOptions multi = single;
    multi.multistart_count = 4;

    const ReconstructionResult rs = minimize_length(ip, 5.5, single);
    const ReconstructionResult rm = minimize_length(ip, 5.5, multi);

    CHECK(rm.final_cost <= rs.final_cost); // seed list includes the single seed
    CHECK(rm.evaluations > rs.evaluations);
    CHECK(rm.evaluations == static_cast<int>(rm.iterates.size()));
    CHECK(rm.iterates.front().ell == 5.5);

    const double dist = std::min(std::abs(rm.L_c - 4.0), std::abs(rm.L_c - 6.0));
    CHECK(dist < 5e-3);
    CHECK(rm.final_cost < 1e-6);
}

TEST_CASE("relative noise is reproducible and scales with percent") {
    std::vector<double> s(101, 1.0);
    s[17] = 0.0; // zero samples stay exactly zero under relative noise
    const Signal beta(s, 0.05, 0.0);

    const Signal same = add_noise(beta, 0.0, 123);
    CHECK(bit_equal(same, beta));

    const Signal a = add_noise(beta, 100.0, 42);
    const Signal b = add_noise(beta, 100.0, 42);
    CHECK(bit_equal(a, b));
    CHECK(a[17] == 0.0);
    bool all_in_range = true;
    bool any_moved = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == 17)
            continue;
        all_in_range = all_in_range && a[j] >= 0.0 && a[j] <= 2.0;
        any_moved = any_moved || a[j] != beta[j];
    }
    CHECK(all_in_range);
    CHECK(any_moved);

    const Signal c = add_noise(beta, 100.0, 43);
    CHECK_FALSE(bit_equal(a, c));

    CHECK_THROWS_AS(add_noise(beta, -0.5, 1), std::invalid_argument);

    // smaller percent stays closer to the data
    const Signal fine = add_noise(beta, 0.1, 42);
    double big = 0.0, small = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        big = std::max(big, std::abs(a[j] - beta[j]));
        small = std::max(small, std::abs(fine[j] - beta[j]));
    }
    CHECK(small < 0.01 * big + 1e-12);
}

TEST_CASE("reconstruction error grows with the noise level") {
    const auto tmpl = pulse_heat();
    const Grid g(60, 300);
    Signal beta = make_target(tmpl, 2.0, g, 301, 1);
    const InverseProblem ip(tmpl, beta, 0.5, 4.0, g);

    MinimizeOptions opts;
    opts.tol_ell = 1e-6;
    opts.max_iter = 80;

    auto run_level = [&](double percent) {
        std::vector<double> errs;
        for (int s = 0; s < 10; ++s) {
            const InverseProblem noisy =
                ip.with_target(add_noise(beta, percent, sub_seed(777, s)));
            const ReconstructionResult r = minimize_length(noisy, 3.0, opts);
            errs.push_back(std::abs(r.L_c - 2.0));
        }
        return median(errs);
    };

    const double coarse = run_level(1.0);
    const double fine = run_level(0.01);
    CHECK(fine < coarse);
    CHECK(fine < 5e-3);
    CHECK(coarse < 0.2);
}

TEST_CASE("noise sweep reproduces the clean run at level zero and flags failures") {
    const auto tmpl = pulse_heat();
    const Grid g(60, 300);
    Signal beta = make_target(tmpl, 2.0, g, 301, 1);
    const InverseProblem ip(tmpl, beta, 0.5, 4.0, g);

    CHECK(noise_sweep(ip, 3.0, {}, 5).empty());

    MinimizeOptions opts;
    opts.tol_ell = 1e-5;
    const ReconstructionResult clean = minimize_length(ip, 3.0, opts);
    const std::vector<SweepRow> rows = noise_sweep(ip, 3.0, {0.0}, 5, opts);
    REQUIRE(rows.size() == 1);
    CHECK_FALSE(rows[0].failed);
    CHECK(rows[0].level == 0.0);
    CHECK(rows[0].L_c == clean.L_c);
    CHECK(rows[0].final_cost == clean.final_cost);
    CHECK(rows[0].iterates == clean.evaluations);
    CHECK(rows[0].termination == clean.termination);

    // a template that cannot be solved away from l = 2 fails row by row
    std::vector<double> v(65);
    for (int i = 0; i <= 64; ++i)
        v[i] = std::sin(M_PI * static_cast<double>(i) / 64.0);
    ProblemTemplate bad;
    bad.T = 5.0;
    bad.u0 = SpatialProfile::sampled(v, 2.0);
    Signal bb = make_target(bad, 2.0, g, 301, 1);
    const InverseProblem bip(bad, bb, 0.5, 4.0, g);
    const std::vector<SweepRow> bad_rows = noise_sweep(bip, 3.0, {0.0, 1.0}, 5, opts);
    REQUIRE(bad_rows.size() == 2);
    for (const SweepRow& r : bad_rows) {
        CHECK(r.failed);
        CHECK(r.error.find("ell") != std::string::npos);
    }
}

TEST_CASE("scan results do not depend on the worker count") {
    const auto tmpl = pulse_heat();
    const Grid g(60, 300);
    Signal beta = make_target(tmpl, 2.0, g, 301, 2);
    const InverseProblem ip(tmpl, beta, 0.5, 4.0, g);

    const char* old = std::getenv("INTERVAL_PROBE_THREADS");
    const std::string saved = old ? old : "";
    const bool had = old != nullptr;

    setenv("INTERVAL_PROBE_THREADS", "1", 1);
    const CostLandscape a = scan_cost(ip, 21);
    setenv("INTERVAL_PROBE_THREADS", "3", 1);
    const CostLandscape b = scan_cost(ip, 21);
    if (had)
        setenv("INTERVAL_PROBE_THREADS", saved.c_str(), 1);
    else
        unsetenv("INTERVAL_PROBE_THREADS");

    REQUIRE(a.samples.size() == b.samples.size());
    bool identical = true;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        identical = identical && a.samples[i].ell == b.samples[i].ell &&
                    a.samples[i].cost == b.samples[i].cost;
    CHECK(identical);

    REQUIRE(a.local_minima.size() == b.local_minima.size());
    for (std::size_t i = 0; i < a.local_minima.size(); ++i) {
        CHECK(a.local_minima[i].ell == b.local_minima[i].ell);
        CHECK(a.local_minima[i].cost == b.local_minima[i].cost);
    }
}

TEST_CASE("a true length outside the bracket is reported as an edge hit") {
    const auto tmpl = pulse_heat();
    const Grid g(60, 300);
    Signal beta = make_target(tmpl, 2.0, g, 301, 2);
    const InverseProblem ip(tmpl, beta, 2.5, 3.5, g);

    MinimizeOptions opts;
    opts.tol_ell = 1e-4;
    const ReconstructionResult res = minimize_length(ip, 3.0, opts);
    CHECK(res.termination == Termination::bracket_edge);
    CHECK(res.L_c - 2.5 < 2e-3); // pinned against the lower wall
    CHECK(res.final_cost > 1e-6);
}

TEST_CASE("option validation rejects nonsensical values") {
    const auto tmpl = pulse_heat();
    const Grid g(60, 300);
    Signal beta = make_target(tmpl, 2.0, g, 301, 1);
    const InverseProblem ip(tmpl, beta, 0.5, 4.0, g);

    CHECK_THROWS_AS(minimize_length(ip, 0.5, {}), std::invalid_argument);
    CHECK_THROWS_AS(minimize_length(ip, 4.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(minimize_length(ip, 5.0, {}), std::invalid_argument);

    MinimizeOptions bad;
    bad.max_iter = 0;
    CHECK_THROWS_AS(minimize_length(ip, 3.0, bad), std::invalid_argument);
    bad = MinimizeOptions{};
    bad.multistart_count = 0;
    CHECK_THROWS_AS(minimize_length(ip, 3.0, bad), std::invalid_argument);
    bad = MinimizeOptions{};
    bad.tol_ell = 0.0;
    CHECK_THROWS_AS(minimize_length(ip, 3.0, bad), std::invalid_argument);

    CHECK_THROWS_AS(scan_cost(ip, 9), std::invalid_argument);

    CHECK_THROWS_AS(make_target(tmpl, 0.0, g, 301, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_target(tmpl, 2.0, g, 301, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_target(tmpl, 2.0, g, 1, 1), std::invalid_argument);
}
