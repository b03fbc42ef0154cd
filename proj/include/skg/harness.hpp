#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skg/capacity.hpp"
#include "skg/channel.hpp"

namespace skg::harness {

enum class Mode { Ours, Random, NoRis };

/// One batch run over a (snr, rho, mode) grid. Every cell derives its own
/// random streams from (master_seed, cell indices, trial index), so results
/// are byte-identical regardless of worker count, and all modes of a cell
/// share channel, phase and noise draws (paired comparison).
struct ExperimentConfig {
    std::vector<double> snr_grid_db{0, 2, 4, 6, 8, 10, 12, 14, 16, 18};
    long long trials = 100000;
    std::vector<double> rho_values{0.3};
    int n_units = 80;
    double turn_on_ratio = 0.8;
    std::vector<Mode> modes{Mode::Ours, Mode::Random, Mode::NoRis};
    FormulaVariant formula_variant = FormulaVariant::Composed;
    EveScenario eve_scenario = EveScenario::NearNode;
    std::uint64_t master_seed = 20250807;
    std::string output_path = "sweep.csv";

    int budget() const;
    void validate() const;
};

struct SweepRow {
    double snr_db = 0.0;
    double rho = 0.0;
    Mode mode = Mode::Ours;
    int n = 0;
    int m = 0;
    long long trials = 0;
    double mean_csk = 0.0;
    double std_csk = 0.0;
    double ukr = 0.0;
    std::uint64_t seed = 0;
};

struct KeyExperimentResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> key_files;
};

const char* mode_name(Mode mode);
Mode mode_from_string(const std::string& name);
const char* variant_name(FormulaVariant variant);
FormulaVariant variant_from_string(const std::string& name);

/// Named figure presets (fig5a .. fig5f). Parameters the source experiments
/// leave open default to rho = 0.3, N = 80, r = 0.8 and are echoed in the
/// CSV metadata header.
ExperimentConfig preset_config(const std::string& name);

/// Plain key-value config files ("key = value" lines, '#' comments). Keys
/// mirror the CLI flags: preset, snr, rho, units, ratio, trials, modes,
/// variant, seed, out, scenario. A "preset" key is applied first, the
/// remaining keys override it. Unknown keys are an error.
ExperimentConfig load_config_file(const std::string& path);

/// Capacity sweep: one row per (snr, rho, mode) cell. mean_csk and std_csk
/// are the mean and standard deviation of per-batch empirical Gaussian CMI
/// estimates (the cell's trials split into up to 10 batches of >= 1000
/// samples); the ukr column is 0 here.
std::vector<SweepRow> run_capacity_sweep(const ExperimentConfig& config);

/// Key experiment: additionally quantizes both parties' observations,
/// records the unmatched key rate per cell and writes one Alice-side key
/// file per (mode, snr) next to output_path.
KeyExperimentResult run_key_experiment(const ExperimentConfig& config);

/// CSV with '#' metadata lines, then the header
/// snr_db,rho,mode,n,m,trials,mean_csk,std_csk,ukr,seed and sorted rows.
std::string sweep_csv(const ExperimentConfig& config, const std::vector<SweepRow>& rows);
void write_sweep_csv(const ExperimentConfig& config, const std::vector<SweepRow>& rows);

}  // namespace skg::harness
