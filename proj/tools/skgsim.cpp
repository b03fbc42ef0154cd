// skgsim: RIS-assisted secret key generation simulator.
//
//   skgsim simulate capacity --preset fig5b --out sweep.csv
//   skgsim simulate keys --snr 18 --trials 100000 --out keys.csv
//   skgsim test randomness keys_Ours_snr18.txt --out report.csv

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skg/harness.hpp"
#include "skg/keys.hpp"
#include "skg/nist.hpp"

namespace {

struct SimulateFlags {
    std::string preset;
    std::string config_file;
    std::vector<double> snr;
    std::vector<double> rho;
    int units = 0;
    double ratio = 0.0;
    long long trials = 0;
    std::vector<std::string> modes;
    std::string variant;
    std::uint64_t seed = 0;
    std::string out;
};

void add_simulate_flags(CLI::App* cmd, SimulateFlags& flags) {
    CLI::Option* preset = cmd->add_option(
        "--preset", flags.preset, "named preset: fig5a, fig5b, fig5c, fig5d, fig5e, fig5f");
    CLI::Option* config = cmd->add_option("--config", flags.config_file,
                                          "key-value config file mirroring these flags");
    preset->excludes(config);
    cmd->add_option("--snr", flags.snr, "SNR grid in dB")->delimiter(',');
    cmd->add_option("--rho", flags.rho, "eavesdropper correlation values")->delimiter(',');
    cmd->add_option("--units", flags.units, "number of RIS units N");
    cmd->add_option("--ratio", flags.ratio, "turn-on ratio r = M/N in (0, 1]");
    cmd->add_option("--trials", flags.trials, "Monte Carlo trials per cell");
    cmd->add_option("--modes", flags.modes, "modes: ours, random, noris")->delimiter(',');
    cmd->add_option("--variant", flags.variant, "closed form: composed or printed13");
    cmd->add_option("--seed", flags.seed, "master seed");
    cmd->add_option("--out", flags.out, "output CSV path");
}

skg::harness::ExperimentConfig build_config(const CLI::App* cmd, const SimulateFlags& flags) {
    skg::harness::ExperimentConfig config;
    if (!flags.config_file.empty()) {
        config = skg::harness::load_config_file(flags.config_file);
    } else if (!flags.preset.empty()) {
        config = skg::harness::preset_config(flags.preset);
    }
    if (cmd->count("--snr") > 0) config.snr_grid_db = flags.snr;
    if (cmd->count("--rho") > 0) config.rho_values = flags.rho;
    if (cmd->count("--units") > 0) config.n_units = flags.units;
    if (cmd->count("--ratio") > 0) config.turn_on_ratio = flags.ratio;
    if (cmd->count("--trials") > 0) config.trials = flags.trials;
    if (cmd->count("--modes") > 0) {
        config.modes.clear();
        for (const std::string& m : flags.modes) {
            config.modes.push_back(skg::harness::mode_from_string(m));
        }
    }
    if (cmd->count("--variant") > 0) {
        config.formula_variant = skg::harness::variant_from_string(flags.variant);
    }
    if (cmd->count("--seed") > 0) config.master_seed = flags.seed;
    if (cmd->count("--out") > 0) config.output_path = flags.out;
    config.validate();
    return config;
}

int run_randomness(const std::vector<std::string>& key_files, const std::string& out) {
    std::string all_csv;
    for (const std::string& file : key_files) {
        const skg::BitSequence seq = skg::read_key_file(file);
        const skg::nist::TestReport report = skg::nist::run_all_tests(seq);
        std::printf("%s (%zu bits)\n", file.c_str(), seq.bits.size());
        for (const auto& entry : report.entries) {
            std::printf("  %-16s p=%.6f %s%s%s\n", skg::nist::test_kind_name(entry.kind),
                        entry.p_value, entry.pass ? "pass" : "FAIL",
                        entry.warning.empty() ? "" : "  warning: ",
                        entry.warning.c_str());
        }
        all_csv += skg::nist::report_csv(report, seq.bits.size());
    }
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) {
            throw std::runtime_error("cannot open " + out);
        }
        f << all_csv;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted secret key generation simulator"};
    app.failure_message(CLI::FailureMessage::simple);
    app.require_subcommand(1);

    CLI::App* simulate = app.add_subcommand("simulate", "run a seeded experiment sweep");
    simulate->require_subcommand(1);
    SimulateFlags cap_flags;
    CLI::App* capacity = simulate->add_subcommand(
        "capacity", "secret key capacity sweep over (snr, rho, mode) cells");
    add_simulate_flags(capacity, cap_flags);
    SimulateFlags key_flags;
    CLI::App* keys = simulate->add_subcommand(
        "keys", "quantized key generation sweep; writes key files and unmatched key rates");
    add_simulate_flags(keys, key_flags);

    CLI::App* test = app.add_subcommand("test", "evaluate generated artifacts");
    std::vector<std::string> key_files;
    std::string report_out;
    CLI::App* randomness =
        test->add_subcommand("randomness", "run the NIST test battery on key files");
    randomness->add_option("files", key_files, "key files of ASCII '0'/'1'")
        ->required()
        ->check(CLI::ExistingFile);
    randomness->add_option("--out", report_out, "per-test CSV report path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (capacity->parsed()) {
            const auto config = build_config(capacity, cap_flags);
            const auto rows = skg::harness::run_capacity_sweep(config);
            skg::harness::write_sweep_csv(config, rows);
            std::printf("wrote %zu rows to %s\n", rows.size(), config.output_path.c_str());
        } else if (keys->parsed()) {
            const auto config = build_config(keys, key_flags);
            const auto result = skg::harness::run_key_experiment(config);
            skg::harness::write_sweep_csv(config, result.rows);
            std::printf("wrote %zu rows to %s\n", result.rows.size(),
                        config.output_path.c_str());
            for (const std::string& f : result.key_files) {
                std::printf("key file: %s\n", f.c_str());
            }
        } else if (randomness->parsed()) {
            return run_randomness(key_files, report_out);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "skgsim: %s\n", e.what());
        return 1;
    }
    return 0;
}
