#ifndef IPROBE_INVERSE_HPP
#define IPROBE_INVERSE_HPP

#include "iprobe/grid.hpp"
#include "iprobe/problem.hpp"
#include "iprobe/profile.hpp"
#include "iprobe/signal.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace iprobe {

enum class Equation { heat, wave };

// A forward problem with the interval length left unbound; u1 is ignored for
// the heat equation.
struct ProblemTemplate {
    Equation equation = Equation::heat;
    double T = 1.0;
    BoundaryInput eta = BoundaryInput::zero();
    SpatialProfile u0 = SpatialProfile::zero();
    SpatialProfile u1 = SpatialProfile::zero();
};

HeatProblem heat_at(const ProblemTemplate& tmpl, double ell);
WaveProblem wave_at(const ProblemTemplate& tmpl, double ell);

// Node counts actually used by the forward solves. The node counts stay
// fixed while dx = l/nx scales with the candidate, so for the wave equation
// nt is raised once to ceil(T*nx/ell_smallest), keeping the Courant number
// dt/dx <= 1 at every candidate down to ell_smallest.
Grid effective_solver_grid(Equation eq, const Grid& g, double T, double ell_smallest);

// Misfit between a measured flux target and candidate interval lengths:
// J(l) = 1/2 int_0^T |beta(t) - u_x^l(0,t)|^2 dt. The forward grid policy is
// fixed at construction so J is a continuous function of l.
class InverseProblem {
  public:
    InverseProblem(ProblemTemplate tmpl, Signal target, double ell_lo, double ell_hi,
                   const Grid& grid);

    // Forward-solves at l, interpolates the flux onto the target's time grid
    // (bit-identical passthrough when the grids coincide), and returns the
    // misfit. Deterministic: equal l gives bit-equal cost.
    double cost(double ell) const;

    double ell_lo() const { return lo_; }
    double ell_hi() const { return hi_; }
    const Signal& target() const { return target_; }
    const ProblemTemplate& problem_template() const { return tmpl_; }
    const Grid& solver_grid() const { return solver_grid_; }

    // Same problem and grid policy with a different target (noise studies).
    InverseProblem with_target(Signal target) const;

  private:
    ProblemTemplate tmpl_;
    Signal target_;
    double lo_;
    double hi_;
    Grid requested_grid_;
    Grid solver_grid_;
};

struct Iterate {
    double ell = 0.0;
    double cost = 0.0;
};

struct MinimizeOptions {
    int max_iter = 60;
    double tol_ell = 1e-4;   // bracket half-width target
    double tol_cost = 1e-13; // stop early below this misfit
    int multistart_count = 1;
};

enum class Termination { converged, max_iter, bracket_edge };

struct ReconstructionResult {
    double L_c = 0.0;
    std::vector<Iterate> iterates; // every evaluation, in order
    double final_cost = 0.0;
    int evaluations = 0;
    Termination termination = Termination::converged;
};

// Bounded scalar minimization of the misfit: golden-section steps with
// successive parabolic interpolation, seeded at ell_init. Multistart (count
// >= 2) adds equispaced interior seeds and keeps the best result; the seed
// list always includes ell_init, so multistart can never do worse.
ReconstructionResult minimize_length(const InverseProblem& ip, double ell_init,
                                     const MinimizeOptions& opts = {});

// Local minimum refined inside [left, right].
struct LocalMinimum {
    double left = 0.0;
    double ell = 0.0;
    double right = 0.0;
    double cost = 0.0;
};

struct CostLandscape {
    std::vector<Iterate> samples; // strictly increasing in ell
    std::vector<LocalMinimum> local_minima;
};

// Equispaced misfit samples over the bracket; every strict interior dip is
// refined between its neighbors. Samples are evaluated in parallel.
CostLandscape scan_cost(const InverseProblem& ip, int n_samples,
                        const MinimizeOptions& opts = {});

// Multiplicative relative noise: beta_j * (1 + (percent/100) * xi_j) with
// xi_j i.i.d. uniform on [-1, 1]. percent = 0 returns the input bit-identical.
Signal add_noise(const Signal& beta, double percent, std::uint64_t seed);

struct SweepRow {
    double level = 0.0;
    double final_cost = 0.0;
    int iterates = 0;
    double L_c = 0.0;
    Termination termination = Termination::converged;
    bool failed = false;
    std::string error;
};

// One reconstruction per noise level, each with an independent sub-seed of
// `seed`. Failures are flagged per row; the sweep itself never aborts.
std::vector<SweepRow> noise_sweep(const InverseProblem& ip, double ell_init,
                                  const std::vector<double>& levels,
                                  std::uint64_t seed,
                                  const MinimizeOptions& opts = {});

// Synthetic observation: forward-solve the template at ell_true on a grid
// `refine` times finer than the reconstruction grid, then sample the left
// flux onto n_obs uniform times over [0, T]. The solver-grid policy (wave
// time-step bump) is applied with bracket minimum ell_smallest so the fine
// grid is a refinement of the reconstruction one; ell_smallest <= 0 uses
// ell_true. refine = 1 with ell_smallest equal to the bracket minimum
// reproduces the reconstruction discretization exactly (matched-grid
// identity setups).
Signal make_target(const ProblemTemplate& tmpl, double ell_true, const Grid& recon_grid,
                   std::size_t n_obs, int refine = 2, double ell_smallest = 0.0);

} // namespace iprobe

#endif
