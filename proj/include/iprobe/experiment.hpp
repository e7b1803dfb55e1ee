#ifndef IPROBE_EXPERIMENT_HPP
#define IPROBE_EXPERIMENT_HPP

#include "iprobe/inverse.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace iprobe {

// One reconstruction experiment: equation and data specs, the synthetic
// truth (or a measured observation file), the search bracket and seed point,
// noise levels, RNG seed, grid and output directory. Input specs are the
// textual forms accepted by parse_input_spec / parse_profile_spec so that a
// config is printable and reloadable as written.
struct ExperimentConfig {
    std::string name = "custom";
    Equation equation = Equation::heat;
    double T = 1.0;
    std::string eta_spec = "zero";
    std::string u0_spec = "zero";
    std::string u1_spec = "zero";
    double ell_d = 0.0;          // synthetic truth; used when target_file is empty
    std::string target_file;     // measured observation CSV (t,flux); overrides ell_d
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double ell_init = 0.0;
    std::vector<double> noise_levels;
    std::uint64_t seed = 1;
    int nx = 200;
    int nt = 1000;
    int landscape_samples = 101;
    std::string out_dir;         // empty: "out/<name>" ("out/<name>-scan" for scans)
};

// Shortest decimal form that parses back to exactly v; '.' separator
// regardless of locale. All CSV and summary numbers go through this.
std::string to_decimal_string(double v);

// Boundary input from "kind" or "kind:args":
//   zero | constant:c | sine:amp,omega | sin_cubed:amp | ramp_quad:a,b
BoundaryInput parse_input_spec(const std::string& spec);

// Spatial profile from "kind" or "kind:args":
//   zero | constant:c | linear:slope | quad_bump:amp,c | sine_mode:amp,k |
//   sine_abs:amp,omega
SpatialProfile parse_profile_spec(const std::string& spec);

// Forward-problem template built from the config's specs.
ProblemTemplate make_template(const ExperimentConfig& cfg);

// Built-in cases, in stable order:
//   heat-1.1  driven heat, zero initial data
//   heat-1.2  driven heat, nonzero initial data
//   heat-1.3  undriven heat, two-basin eigenmode data
//   wave-2.1  driven wave, zero initial data
//   wave-2.2  driven wave, nonzero initial position
//   wave-2.3  undriven wave, two-basin eigenmode data
const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);
ExperimentConfig preset_config(const std::string& name); // throws on unknown name

// Flat "key = value" file; '#' starts a comment, blank lines are skipped,
// unknown keys are errors. A relative target_file is resolved against the
// config file's directory.
ExperimentConfig load_config(const std::string& path);

// Observation CSV: optional "t,flux" header, then uniformly spaced rows
// starting at t = 0.
Signal load_observation_csv(const std::string& path);

// Precondition check for every field; throws std::invalid_argument with the
// offending key in the message. for_scan skips the ell_init containment test
// (scans do not descend from a seed point).
void validate_config(const ExperimentConfig& cfg, bool for_scan = false);

struct CaseOutcome {
    double L_c = 0.0;
    double final_cost = 0.0;
    int evaluations = 0;
    Termination termination = Termination::converged;
    std::vector<SweepRow> sweep;
    CostLandscape landscape;
    std::filesystem::path out_dir;
};

// Full pipeline: reconstruct without noise, sweep the configured noise
// levels, scan the landscape, and write table.csv, landscape.csv,
// observation.csv, field.csv (best fit) and summary.txt. Validates before
// creating the output directory; every file is written to a temporary name
// and renamed, so partially written artifacts never appear.
CaseOutcome run_case(const ExperimentConfig& cfg);

// Landscape-only pipeline: writes landscape.csv and summary.txt.
CaseOutcome run_scan(const ExperimentConfig& cfg);

} // namespace iprobe

#endif
