#include "iprobe/experiment.hpp"

#include "iprobe/field.hpp"
#include "iprobe/heat.hpp"
#include "iprobe/wave.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#ifndef IPROBE_VERSION
#define IPROBE_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace iprobe {

std::string to_decimal_string(double v) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace {

std::string trim(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_scalar(const std::string& s) {
    const std::string t = trim(s);
    double v = 0.0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (r.ec != std::errc{} || r.ptr != t.data() + t.size())
        throw std::invalid_argument("not a number: '" + s + "'");
    return v;
}

long long parse_integer(const std::string& s) {
    const std::string t = trim(s);
    long long v = 0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (r.ec != std::errc{} || r.ptr != t.data() + t.size())
        throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s) {
    const std::string t = trim(s);
    std::uint64_t v = 0;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (r.ec != std::errc{} || r.ptr != t.data() + t.size())
        throw std::invalid_argument("not a nonnegative integer: '" + s + "'");
    return v;
}

// "kind" or "kind:a,b" -> (kind, numeric args)
std::pair<std::string, std::vector<double>> split_spec(const std::string& spec) {
    const std::string s = trim(spec);
    const std::size_t colon = s.find(':');
    std::pair<std::string, std::vector<double>> out;
    out.first = trim(s.substr(0, colon));
    if (colon != std::string::npos) {
        std::string rest = s.substr(colon + 1);
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = rest.find(',', pos);
            out.second.push_back(parse_scalar(rest.substr(pos, comma - pos)));
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
    }
    return out;
}

void need_args(const std::string& spec, const std::vector<double>& args, std::size_t n) {
    if (args.size() != n)
        throw std::invalid_argument("spec '" + spec + "' expects " + std::to_string(n) +
                                    " argument(s)");
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    const std::string t = trim(s);
    if (t.empty())
        return out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = t.find(',', pos);
        out.push_back(parse_scalar(t.substr(pos, comma - pos)));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += to_decimal_string(v[i]);
    }
    return s;
}

const char* equation_name(Equation eq) {
    return eq == Equation::heat ? "heat" : "wave";
}

const char* termination_name(Termination t) {
    switch (t) {
    case Termination::converged:
        return "converged";
    case Termination::max_iter:
        return "max_iter";
    default:
        return "bracket_edge";
    }
}

void write_atomic(const fs::path& path, const std::string& body) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        out.flush();
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string table_csv(const std::vector<SweepRow>& rows) {
    std::string s = "noise_percent,cost,iterates,computed_L\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const SweepRow& r : rows) {
        s += to_decimal_string(r.level);
        s += ',';
        s += to_decimal_string(r.failed ? nan : r.final_cost);
        s += ',';
        s += std::to_string(r.iterates);
        s += ',';
        s += to_decimal_string(r.failed ? nan : r.L_c);
        s += '\n';
    }
    return s;
}

std::string landscape_csv(const std::vector<Iterate>& samples) {
    std::string s = "ell,cost\n";
    for (const Iterate& it : samples) {
        s += to_decimal_string(it.ell);
        s += ',';
        s += to_decimal_string(it.cost);
        s += '\n';
    }
    return s;
}

std::string observation_csv(const Signal& beta) {
    std::string s = "t,flux\n";
    for (std::size_t j = 0; j < beta.size(); ++j) {
        s += to_decimal_string(beta.time(j));
        s += ',';
        s += to_decimal_string(beta[j]);
        s += '\n';
    }
    return s;
}

std::string field_csv(const SpaceTimeField& f) {
    std::string s = "x,t,u\n";
    s.reserve(static_cast<std::size_t>(f.nx() + 1) * (f.nt() + 1) * 24 + 8);
    for (int j = 0; j <= f.nt(); ++j) {
        const std::string tj = to_decimal_string(f.t(j));
        for (int i = 0; i <= f.nx(); ++i) {
            s += to_decimal_string(f.x(i));
            s += ',';
            s += tj;
            s += ',';
            s += to_decimal_string(f(i, j));
            s += '\n';
        }
    }
    return s;
}

std::string summary_text(const ExperimentConfig& cfg, const InverseProblem& ip,
                         const ReconstructionResult* recon,
                         const std::vector<SweepRow>* sweep,
                         const CostLandscape& scan) {
    std::string s;
    s += "name=" + cfg.name + '\n';
    s += std::string("equation=") + equation_name(cfg.equation) + '\n';
    s += "T=" + to_decimal_string(cfg.T) + '\n';
    s += "eta=" + cfg.eta_spec + '\n';
    s += "u0=" + cfg.u0_spec + '\n';
    s += "u1=" + cfg.u1_spec + '\n';
    if (cfg.target_file.empty()) {
        s += "target=synthetic\n";
        s += "ell_d=" + to_decimal_string(cfg.ell_d) + '\n';
    } else {
        s += "target=file:" + cfg.target_file + '\n';
    }
    s += "bracket_lo=" + to_decimal_string(cfg.bracket_lo) + '\n';
    s += "bracket_hi=" + to_decimal_string(cfg.bracket_hi) + '\n';
    if (recon != nullptr) {
        s += "ell_init=" + to_decimal_string(cfg.ell_init) + '\n';
        s += "noise_levels=" + join(cfg.noise_levels) + '\n';
        s += "seed=" + std::to_string(cfg.seed) + '\n';
    }
    s += "nx=" + std::to_string(cfg.nx) + '\n';
    s += "nt=" + std::to_string(cfg.nt) + '\n';
    s += "solver_nx=" + std::to_string(ip.solver_grid().nx) + '\n';
    s += "solver_nt=" + std::to_string(ip.solver_grid().nt) + '\n';
    s += "observations=" + std::to_string(ip.target().size()) + '\n';
    s += "landscape_samples=" + std::to_string(cfg.landscape_samples) + '\n';
    if (recon != nullptr) {
        s += "L_c=" + to_decimal_string(recon->L_c) + '\n';
        s += "final_cost=" + to_decimal_string(recon->final_cost) + '\n';
        s += "evaluations=" + std::to_string(recon->evaluations) + '\n';
        s += std::string("termination=") + termination_name(recon->termination) + '\n';
    }
    if (sweep != nullptr) {
        int failures = 0;
        for (const SweepRow& r : *sweep)
            failures += r.failed ? 1 : 0;
        s += "sweep_failures=" + std::to_string(failures) + '\n';
    }
    s += "minima_count=" + std::to_string(scan.local_minima.size()) + '\n';
    for (std::size_t i = 0; i < scan.local_minima.size(); ++i) {
        const std::string tag = "minimum_" + std::to_string(i + 1);
        s += tag + "_ell=" + to_decimal_string(scan.local_minima[i].ell) + '\n';
        s += tag + "_cost=" + to_decimal_string(scan.local_minima[i].cost) + '\n';
    }
    s += std::string("version=") + IPROBE_VERSION + '\n';
    return s;
}

// Shared run/scan front end: validated config to a ready inverse problem.
InverseProblem build_problem(const ExperimentConfig& cfg) {
    const ProblemTemplate tmpl = make_template(cfg);
    const Grid grid(cfg.nx, cfg.nt);
    Signal target = cfg.target_file.empty()
                        ? make_target(tmpl, cfg.ell_d, grid,
                                      static_cast<std::size_t>(cfg.nt) + 1, 2,
                                      cfg.bracket_lo)
                        : load_observation_csv(cfg.target_file);
    return InverseProblem(tmpl, std::move(target), cfg.bracket_lo, cfg.bracket_hi, grid);
}

fs::path resolve_out_dir(const ExperimentConfig& cfg, const char* suffix) {
    if (!cfg.out_dir.empty())
        return fs::path(cfg.out_dir);
    return fs::path("out") / (cfg.name + suffix);
}

} // namespace

BoundaryInput parse_input_spec(const std::string& spec) {
    const auto [kind, args] = split_spec(spec);
    if (kind == "zero") {
        need_args(spec, args, 0);
        return BoundaryInput::zero();
    }
    if (kind == "constant") {
        need_args(spec, args, 1);
        return BoundaryInput::constant(args[0]);
    }
    if (kind == "sine") {
        need_args(spec, args, 2);
        return BoundaryInput::sine(args[0], args[1]);
    }
    if (kind == "sin_cubed") {
        need_args(spec, args, 1);
        return BoundaryInput::sin_cubed(args[0]);
    }
    if (kind == "ramp_quad") {
        need_args(spec, args, 2);
        return BoundaryInput::ramp_quad(args[0], args[1]);
    }
    throw std::invalid_argument("unknown boundary input kind in '" + spec + "'");
}

SpatialProfile parse_profile_spec(const std::string& spec) {
    const auto [kind, args] = split_spec(spec);
    if (kind == "zero") {
        need_args(spec, args, 0);
        return SpatialProfile::zero();
    }
    if (kind == "constant") {
        need_args(spec, args, 1);
        return SpatialProfile::constant(args[0]);
    }
    if (kind == "linear") {
        need_args(spec, args, 1);
        return SpatialProfile::linear(args[0]);
    }
    if (kind == "quad_bump") {
        need_args(spec, args, 2);
        return SpatialProfile::quad_bump(args[0], args[1]);
    }
    if (kind == "sine_mode") {
        need_args(spec, args, 2);
        const double k = args[1];
        if (!(k >= 1.0) || k != std::floor(k) || k > 1e6)
            throw std::invalid_argument("sine_mode index must be a positive integer in '" +
                                        spec + "'");
        return SpatialProfile::sine_mode(args[0], static_cast<int>(k));
    }
    if (kind == "sine_abs") {
        need_args(spec, args, 2);
        return SpatialProfile::sine_abs(args[0], args[1]);
    }
    throw std::invalid_argument("unknown profile kind in '" + spec + "'");
}

ProblemTemplate make_template(const ExperimentConfig& cfg) {
    ProblemTemplate tmpl;
    tmpl.equation = cfg.equation;
    tmpl.T = cfg.T;
    tmpl.eta = parse_input_spec(cfg.eta_spec);
    tmpl.u0 = parse_profile_spec(cfg.u0_spec);
    tmpl.u1 = parse_profile_spec(cfg.u1_spec);
    return tmpl;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"heat-1.1", "heat-1.2", "heat-1.3",
                                                "wave-2.1", "wave-2.2", "wave-2.3"};
    return names;
}

bool is_preset(const std::string& name) {
    for (const std::string& p : preset_names())
        if (p == name)
            return true;
    return false;
}

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig c;
    c.name = name;
    c.noise_levels = {1.0, 0.1, 0.01, 0.001, 0.0};
    if (name == "heat-1.1") {
        c.equation = Equation::heat;
        c.T = 5.0;
        c.eta_spec = "sin_cubed:5";
        c.ell_d = 2.0;
        c.bracket_lo = 0.5;
        c.bracket_hi = 4.0;
        c.ell_init = 3.0;
    } else if (name == "heat-1.2") {
        c.equation = Equation::heat;
        c.T = 5.0;
        c.eta_spec = "ramp_quad:0.2,2";
        c.u0_spec = "quad_bump:5,2";
        c.ell_d = 2.0;
        c.bracket_lo = 0.2;
        c.bracket_hi = 4.0;
        c.ell_init = 0.5;
    } else if (name == "heat-1.3") {
        c.equation = Equation::heat;
        c.T = 5.0;
        c.u0_spec = "sine_abs:1,1.5707963267948966"; // sin(pi x / 2)
        c.ell_d = 6.0;
        c.bracket_lo = 3.0;
        c.bracket_hi = 7.0;
        c.ell_init = 5.5;
    } else if (name == "wave-2.1") {
        c.equation = Equation::wave;
        c.T = 4.0;
        c.eta_spec = "sin_cubed:3";
        c.ell_d = 2.0;
        c.bracket_lo = 0.5;
        c.bracket_hi = 4.0;
        c.ell_init = 1.5;
    } else if (name == "wave-2.2") {
        c.equation = Equation::wave;
        c.T = 4.0;
        c.eta_spec = "sin_cubed:3";
        c.u0_spec = "sine_abs:0.4,3.141592653589793"; // 0.4 sin(pi x)
        c.ell_d = 2.0;
        c.bracket_lo = 0.5;
        c.bracket_hi = 4.0;
        c.ell_init = 1.5;
    } else if (name == "wave-2.3") {
        c.equation = Equation::wave;
        c.T = 4.0;
        c.u0_spec = "sine_abs:1,1.5707963267948966"; // sin(pi x / 2)
        c.ell_d = 6.0;
        c.bracket_lo = 3.0;
        c.bracket_hi = 7.0;
        c.ell_init = 5.5;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file: " + path);
    ExperimentConfig cfg;
    cfg.name = fs::path(path).stem().string();
    const fs::path dir = fs::path(path).parent_path();

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = path + ":" + std::to_string(lineno) + ": ";
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(where + "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "name") {
                cfg.name = value;
            } else if (key == "equation") {
                if (value == "heat")
                    cfg.equation = Equation::heat;
                else if (value == "wave")
                    cfg.equation = Equation::wave;
                else
                    throw std::invalid_argument("equation must be heat or wave");
            } else if (key == "T") {
                cfg.T = parse_scalar(value);
            } else if (key == "eta") {
                cfg.eta_spec = value;
            } else if (key == "u0") {
                cfg.u0_spec = value;
            } else if (key == "u1") {
                cfg.u1_spec = value;
            } else if (key == "ell_d") {
                cfg.ell_d = parse_scalar(value);
            } else if (key == "target_file") {
                const fs::path p(value);
                cfg.target_file = p.is_absolute() ? p.string() : (dir / p).string();
            } else if (key == "bracket_lo") {
                cfg.bracket_lo = parse_scalar(value);
            } else if (key == "bracket_hi") {
                cfg.bracket_hi = parse_scalar(value);
            } else if (key == "ell_init") {
                cfg.ell_init = parse_scalar(value);
            } else if (key == "noise") {
                cfg.noise_levels = parse_list(value);
            } else if (key == "seed") {
                cfg.seed = parse_u64(value);
            } else if (key == "nx") {
                cfg.nx = static_cast<int>(parse_integer(value));
            } else if (key == "nt") {
                cfg.nt = static_cast<int>(parse_integer(value));
            } else if (key == "samples") {
                cfg.landscape_samples = static_cast<int>(parse_integer(value));
            } else if (key == "out") {
                cfg.out_dir = value;
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + e.what());
        }
    }
    return cfg;
}

Signal load_observation_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open observation file: " + path);
    std::vector<double> ts;
    std::vector<double> vals;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty())
            continue;
        if (lineno == 1 && line.find_first_not_of("0123456789+-.eE, \t") != std::string::npos)
            continue; // header row
        const std::size_t comma = line.find(',');
        const std::string where = path + ":" + std::to_string(lineno) + ": ";
        if (comma == std::string::npos)
            throw std::invalid_argument(where + "expected t,flux");
        try {
            ts.push_back(parse_scalar(line.substr(0, comma)));
            vals.push_back(parse_scalar(line.substr(comma + 1)));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + e.what());
        }
    }
    if (ts.size() < 2)
        throw std::invalid_argument(path + ": need at least two observation rows");
    const double span = ts.back() - ts.front();
    if (!(span > 0.0))
        throw std::invalid_argument(path + ": times must increase");
    const double tol = 1e-9 * std::max(1.0, std::abs(ts.back()));
    if (std::abs(ts.front()) > tol)
        throw std::invalid_argument(path + ": observations must start at t = 0");
    const double dt = span / static_cast<double>(ts.size() - 1);
    for (std::size_t j = 0; j < ts.size(); ++j)
        if (std::abs(ts[j] - static_cast<double>(j) * dt) > tol)
            throw std::invalid_argument(path + ": times must be uniformly spaced");
    return Signal(std::move(vals), dt, 0.0);
}

void validate_config(const ExperimentConfig& cfg, bool for_scan) {
    if (cfg.name.empty())
        throw std::invalid_argument("name must not be empty");
    auto check_spec = [](const char* key, auto&& parse) {
        try {
            parse();
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(std::string(key) + ": " + e.what());
        }
    };
    check_spec("eta", [&] { parse_input_spec(cfg.eta_spec); });
    check_spec("u0", [&] { parse_profile_spec(cfg.u0_spec); });
    // u1 is ignored by the heat equation but still has to parse
    check_spec("u1", [&] { parse_profile_spec(cfg.u1_spec); });
    if (!(cfg.T > 0.0))
        throw std::invalid_argument("T must be positive");
    if (!(cfg.bracket_lo > 0.0) || !(cfg.bracket_lo < cfg.bracket_hi))
        throw std::invalid_argument("bracket must satisfy 0 < bracket_lo < bracket_hi");
    if (!for_scan &&
        (!(cfg.ell_init > cfg.bracket_lo) || !(cfg.ell_init < cfg.bracket_hi)))
        throw std::invalid_argument("ell_init must lie strictly inside the bracket");
    if (cfg.target_file.empty() && !(cfg.ell_d > 0.0))
        throw std::invalid_argument("ell_d must be positive when no target_file is given");
    for (double level : cfg.noise_levels)
        if (!std::isfinite(level) || level < 0.0)
            throw std::invalid_argument("noise levels must be finite and nonnegative");
    if (cfg.nx < 8 || cfg.nt < 8)
        throw std::invalid_argument("nx and nt must be at least 8");
    if (cfg.landscape_samples < 10)
        throw std::invalid_argument("samples must be at least 10");
}

CaseOutcome run_case(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const InverseProblem ip = build_problem(cfg);

    const ReconstructionResult recon = minimize_length(ip, cfg.ell_init);
    std::vector<SweepRow> sweep = noise_sweep(ip, cfg.ell_init, cfg.noise_levels, cfg.seed);
    CostLandscape scan = scan_cost(ip, cfg.landscape_samples);

    const ProblemTemplate& tmpl = ip.problem_template();
    const SpaceTimeField best =
        tmpl.equation == Equation::heat
            ? heat_fd_solve(heat_at(tmpl, recon.L_c), ip.solver_grid())
            : wave_fd_solve(wave_at(tmpl, recon.L_c), ip.solver_grid());

    const fs::path out = resolve_out_dir(cfg, "");
    fs::create_directories(out);
    write_atomic(out / "table.csv", table_csv(sweep));
    write_atomic(out / "landscape.csv", landscape_csv(scan.samples));
    write_atomic(out / "observation.csv", observation_csv(ip.target()));
    write_atomic(out / "field.csv", field_csv(best));
    write_atomic(out / "summary.txt", summary_text(cfg, ip, &recon, &sweep, scan));

    CaseOutcome outcome;
    outcome.L_c = recon.L_c;
    outcome.final_cost = recon.final_cost;
    outcome.evaluations = recon.evaluations;
    outcome.termination = recon.termination;
    outcome.sweep = std::move(sweep);
    outcome.landscape = std::move(scan);
    outcome.out_dir = out;
    return outcome;
}

CaseOutcome run_scan(const ExperimentConfig& cfg) {
    validate_config(cfg, /*for_scan=*/true);
    const InverseProblem ip = build_problem(cfg);

    CostLandscape scan = scan_cost(ip, cfg.landscape_samples);

    const fs::path out = resolve_out_dir(cfg, "-scan");
    fs::create_directories(out);
    write_atomic(out / "landscape.csv", landscape_csv(scan.samples));
    write_atomic(out / "summary.txt", summary_text(cfg, ip, nullptr, nullptr, scan));

    CaseOutcome outcome;
    outcome.landscape = std::move(scan);
    outcome.out_dir = out;
    return outcome;
}

} // namespace iprobe
