#include "commands.hpp"

#include "gndline/impedance.hpp"
#include "gndline/linalg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>

namespace {

struct CommonArgs {
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> grid_text;
    bool quiet = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--scenario", args.scenario_path, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", args.seed, "override the scenario seed");
    sub->add_option("--grid", args.grid_text,
                    "frequency grid override: start,stop,points,log|lin");
    sub->add_flag("--quiet", args.quiet, "suppress status output");
}

gndline::ScenarioConfig load(const CommonArgs& args) {
    gndline::ScenarioConfig cfg = gndline::parse_scenario(args.scenario_path);
    if (args.seed) {
        cfg.seed = *args.seed;
        if (cfg.pipeline.adc) cfg.pipeline.adc->seed = *args.seed;
    }
    return cfg;
}

std::optional<gndline::FrequencyGrid> grid_of(const CommonArgs& args) {
    if (!args.grid_text) return std::nullopt;
    return gndline::cli::parse_grid_flag(*args.grid_text);
}

void note(const CommonArgs& args, const std::string& path) {
    if (!args.quiet) std::printf("wrote %s\n", path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gndline: ground-wire injection attack chain simulator"};
    app.require_subcommand(1);

    CommonArgs frc_args, attack_args, sweep_args, guard_args;

    CLI::App* frc = app.add_subcommand("frc", "frequency response table for one stage");
    std::string frc_which = "endtoend";
    std::string frc_out;
    add_common(frc, frc_args);
    frc->add_option("--which", frc_which, "coupling, conversion or endtoend")
        ->check(CLI::IsMember({"coupling", "conversion", "endtoend"}));
    frc->add_option("--out", frc_out, "output CSV path")->required();

    CLI::App* attack = app.add_subcommand("attack", "design an attack waveform and metrics");
    std::string attack_method;
    std::string attack_out;
    std::optional<std::string> attack_metrics, attack_pcm;
    add_common(attack, attack_args);
    attack->add_option("--method", attack_method, "ac, pulse or dc")
        ->required()
        ->check(CLI::IsMember({"ac", "pulse", "dc"}));
    attack->add_option("--out", attack_out, "waveform CSV path")->required();
    attack->add_option("--metrics", attack_metrics,
                       "metrics CSV path (default: <out>.metrics.csv)");
    attack->add_option("--pcm", attack_pcm, "optional 16-bit PCM export path");

    CLI::App* sweep = app.add_subcommand("sweep", "frequency or amplitude deviation sweep");
    std::string sweep_out;
    add_common(sweep, sweep_args);
    sweep->add_option("--out", sweep_out, "output CSV path")->required();

    CLI::App* guard = app.add_subcommand("guard", "detection and defense evaluation");
    std::string guard_check = "detect";
    std::string guard_out;
    add_common(guard, guard_args);
    guard->add_option("--check", guard_check, "detect, defense or whatif")
        ->check(CLI::IsMember({"detect", "defense", "whatif"}));
    guard->add_option("--out", guard_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (frc->parsed()) {
            gndline::cli::cmd_frc(load(frc_args), frc_which, frc_out, grid_of(frc_args));
            note(frc_args, frc_out);
        } else if (attack->parsed()) {
            const std::string metrics = attack_metrics.value_or(attack_out + ".metrics.csv");
            gndline::cli::cmd_attack(load(attack_args), attack_method, attack_out, metrics,
                                     attack_pcm);
            note(attack_args, attack_out);
            note(attack_args, metrics);
            if (attack_pcm) note(attack_args, *attack_pcm);
        } else if (sweep->parsed()) {
            gndline::cli::cmd_sweep(load(sweep_args), sweep_out, grid_of(sweep_args));
            note(sweep_args, sweep_out);
        } else if (guard->parsed()) {
            gndline::cli::cmd_guard(load(guard_args), guard_check, guard_out,
                                    grid_of(guard_args));
            note(guard_args, guard_out);
        }
    } catch (const gndline::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const gndline::InfeasibleError& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
