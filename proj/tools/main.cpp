#include "CLI11.hpp"

#include "iprobe/experiment.hpp"

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

namespace {

using iprobe::to_decimal_string;

// Failure record a script can parse off stderr.
void print_error(const char* category, const std::string& message) {
    std::fprintf(stderr, "error=%s\nmessage=%s\n", category, message.c_str());
}

iprobe::ExperimentConfig resolve_case(const std::string& arg) {
    if (iprobe::is_preset(arg))
        return iprobe::preset_config(arg);
    if (std::filesystem::exists(arg))
        return iprobe::load_config(arg);
    std::string names;
    for (const std::string& p : iprobe::preset_names())
        names += " " + p;
    throw std::invalid_argument("'" + arg +
                                "' is neither a preset nor a config file; presets:" + names);
}

void print_presets_text() {
    for (const std::string& name : iprobe::preset_names()) {
        const iprobe::ExperimentConfig c = iprobe::preset_config(name);
        std::printf("%s\n", c.name.c_str());
        std::printf("  equation  %s\n", c.equation == iprobe::Equation::heat ? "heat" : "wave");
        std::printf("  T         %s\n", to_decimal_string(c.T).c_str());
        std::printf("  eta       %s\n", c.eta_spec.c_str());
        std::printf("  u0        %s\n", c.u0_spec.c_str());
        std::printf("  u1        %s\n", c.u1_spec.c_str());
        std::printf("  ell_d     %s\n", to_decimal_string(c.ell_d).c_str());
        std::printf("  bracket   (%s, %s)\n", to_decimal_string(c.bracket_lo).c_str(),
                    to_decimal_string(c.bracket_hi).c_str());
        std::printf("  ell_init  %s\n", to_decimal_string(c.ell_init).c_str());
        std::string noise;
        for (std::size_t i = 0; i < c.noise_levels.size(); ++i)
            noise += (i ? "," : "") + to_decimal_string(c.noise_levels[i]);
        std::printf("  noise     %s\n", noise.c_str());
        std::printf("  seed      %llu\n", static_cast<unsigned long long>(c.seed));
        std::printf("  grid      %d x %d\n", c.nx, c.nt);
        std::printf("  samples   %d\n", c.landscape_samples);
    }
}

void print_presets_json() {
    std::string s = "[\n";
    bool first_preset = true;
    for (const std::string& name : iprobe::preset_names()) {
        const iprobe::ExperimentConfig c = iprobe::preset_config(name);
        if (!first_preset)
            s += ",\n";
        first_preset = false;
        s += "  {";
        s += "\"name\":\"" + c.name + "\",";
        s += std::string("\"equation\":\"") +
             (c.equation == iprobe::Equation::heat ? "heat" : "wave") + "\",";
        s += "\"T\":" + to_decimal_string(c.T) + ",";
        s += "\"eta\":\"" + c.eta_spec + "\",";
        s += "\"u0\":\"" + c.u0_spec + "\",";
        s += "\"u1\":\"" + c.u1_spec + "\",";
        s += "\"ell_d\":" + to_decimal_string(c.ell_d) + ",";
        s += "\"bracket_lo\":" + to_decimal_string(c.bracket_lo) + ",";
        s += "\"bracket_hi\":" + to_decimal_string(c.bracket_hi) + ",";
        s += "\"ell_init\":" + to_decimal_string(c.ell_init) + ",";
        s += "\"noise\":[";
        for (std::size_t i = 0; i < c.noise_levels.size(); ++i)
            s += (i ? "," : "") + to_decimal_string(c.noise_levels[i]);
        s += "],";
        s += "\"seed\":" + std::to_string(c.seed) + ",";
        s += "\"nx\":" + std::to_string(c.nx) + ",";
        s += "\"nt\":" + std::to_string(c.nt) + ",";
        s += "\"samples\":" + std::to_string(c.landscape_samples);
        s += "}";
    }
    s += "\n]\n";
    std::fputs(s.c_str(), stdout);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interval length reconstruction from boundary flux observations"};
    app.require_subcommand(1);

    // run <preset|config> [--noise ...] [--seed N] [--out DIR] [--nx N] [--nt N]
    CLI::App* run = app.add_subcommand("run", "Run a full case: reconstruction, "
                                              "noise sweep, landscape, artifacts");
    std::string run_case_arg;
    std::vector<double> noise_override;
    std::uint64_t seed_override = 0;
    std::string out_override;
    int nx_override = 0;
    int nt_override = 0;
    run->add_option("case", run_case_arg, "Preset name or config file path")->required();
    CLI::Option* noise_opt =
        run->add_option("--noise", noise_override, "Noise percent levels (comma separated)")
            ->delimiter(',');
    CLI::Option* seed_opt = run->add_option("--seed", seed_override, "RNG seed");
    CLI::Option* out_opt = run->add_option("--out", out_override, "Output directory");
    CLI::Option* nx_opt = run->add_option("--nx", nx_override, "Space cells");
    CLI::Option* nt_opt = run->add_option("--nt", nt_override, "Time steps");

    run->callback([&]() {
        iprobe::ExperimentConfig cfg = resolve_case(run_case_arg);
        if (noise_opt->count())
            cfg.noise_levels = noise_override;
        if (seed_opt->count())
            cfg.seed = seed_override;
        if (out_opt->count())
            cfg.out_dir = out_override;
        if (nx_opt->count())
            cfg.nx = nx_override;
        if (nt_opt->count())
            cfg.nt = nt_override;
        const iprobe::CaseOutcome res = iprobe::run_case(cfg);
        std::printf("out_dir=%s\n", res.out_dir.string().c_str());
        std::printf("L_c=%s\n", to_decimal_string(res.L_c).c_str());
        std::printf("final_cost=%s\n", to_decimal_string(res.final_cost).c_str());
        std::printf("evaluations=%d\n", res.evaluations);
        std::printf("minima_count=%zu\n", res.landscape.local_minima.size());
    });

    // scan <preset> --bracket A B --samples N [--out DIR] [--nx N] [--nt N]
    CLI::App* scan = app.add_subcommand("scan", "Sample the misfit landscape over a bracket");
    std::string scan_preset;
    std::vector<double> scan_bracket;
    int scan_samples = 0;
    scan->add_option("preset", scan_preset, "Preset name")->required();
    scan->add_option("--bracket", scan_bracket, "Bracket lo hi")
        ->expected(2)
        ->required();
    scan->add_option("--samples", scan_samples, "Landscape sample count")->required();
    CLI::Option* scan_out_opt = scan->add_option("--out", out_override, "Output directory");
    CLI::Option* scan_nx_opt = scan->add_option("--nx", nx_override, "Space cells");
    CLI::Option* scan_nt_opt = scan->add_option("--nt", nt_override, "Time steps");

    scan->callback([&]() {
        if (!iprobe::is_preset(scan_preset)) {
            std::string names;
            for (const std::string& p : iprobe::preset_names())
                names += " " + p;
            throw std::invalid_argument("unknown preset '" + scan_preset + "'; presets:" + names);
        }
        iprobe::ExperimentConfig cfg = iprobe::preset_config(scan_preset);
        cfg.bracket_lo = scan_bracket[0];
        cfg.bracket_hi = scan_bracket[1];
        cfg.landscape_samples = scan_samples;
        if (scan_out_opt->count())
            cfg.out_dir = out_override;
        if (scan_nx_opt->count())
            cfg.nx = nx_override;
        if (scan_nt_opt->count())
            cfg.nt = nt_override;
        const iprobe::CaseOutcome res = iprobe::run_scan(cfg);
        std::printf("out_dir=%s\n", res.out_dir.string().c_str());
        std::printf("minima_count=%zu\n", res.landscape.local_minima.size());
        for (std::size_t i = 0; i < res.landscape.local_minima.size(); ++i) {
            const iprobe::LocalMinimum& m = res.landscape.local_minima[i];
            std::printf("minimum_%zu_ell=%s\n", i + 1, to_decimal_string(m.ell).c_str());
            std::printf("minimum_%zu_cost=%s\n", i + 1, to_decimal_string(m.cost).c_str());
        }
    });

    // presets [--json]
    CLI::App* presets = app.add_subcommand("presets", "List the built-in cases");
    bool as_json = false;
    presets->add_flag("--json", as_json, "Machine-readable listing");
    presets->callback([&]() {
        if (as_json)
            print_presets_json();
        else
            print_presets_text();
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::invalid_argument& e) {
        print_error("validation", e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error("runtime", e.what());
        return 1;
    }
    return 0;
}
