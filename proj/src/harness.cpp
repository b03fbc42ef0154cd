#include "skg/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "skg/keys.hpp"
#include "skg/optimizer.hpp"
#include "skg/parallel.hpp"

namespace skg::harness {

namespace {

// Purpose tags for stream derivation; part of the output stability contract.
enum StreamTag : std::uint64_t {
    kTagVariances = 1,
    kTagSelection = 2,
    kTagTrial = 3,
    kTagNoise = 4,
    kTagCellId = 5,
};

struct BatchStats {
    double mean = 0.0;
    double stddev = 0.0;
};

/// Splits samples into up to 10 contiguous batches of >= 1000 and returns
/// mean/std of the per-batch Gaussian CMI estimates.
BatchStats batched_cmi(std::span<const ObsTriple> samples) {
    const std::size_t n = samples.size();
    const std::size_t batches = std::clamp<std::size_t>(n / 1000, 1, 10);
    const std::size_t step = n / batches;
    std::vector<double> values;
    values.reserve(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        const std::size_t begin = b * step;
        const std::size_t len = b + 1 == batches ? n - begin : step;
        values.push_back(gaussian_cmi_from_samples(samples.subspan(begin, len)));
    }
    BatchStats stats;
    for (double v : values) {
        stats.mean += v;
    }
    stats.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - stats.mean) * (v - stats.mean);
        }
        stats.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return stats;
}

struct CellOutput {
    std::vector<ObsTriple> samples;
    std::vector<double> feat_alice;
    std::vector<double> feat_bob;
};

/// Simulates every trial of one (snr, rho) point for all requested modes at
/// once, sharing channel, phase and noise draws across modes.
std::map<Mode, CellOutput> simulate_point(const ExperimentConfig& config,
                                          std::size_t snr_idx, std::size_t rho_idx,
                                          const SystemParams& base_params,
                                          const std::map<Mode, std::vector<std::uint8_t>>& switches,
                                          bool collect_features) {
    const std::size_t trials = static_cast<std::size_t>(config.trials);
    std::map<Mode, CellOutput> out;
    for (const auto& [mode, sw] : switches) {
        CellOutput& cell = out[mode];
        cell.samples.resize(trials);
        if (collect_features) {
            cell.feat_alice.resize(trials);
            cell.feat_bob.resize(trials);
        }
    }
    struct ModeJob {
        Mode mode;
        const std::vector<std::uint8_t>* switches;
        CellOutput* cell;
    };
    std::vector<ModeJob> jobs;
    for (auto& [mode, cell] : out) {
        jobs.push_back({mode, &switches.at(mode), &cell});
    }
    parallel_for(trials, [&](std::size_t t) {
        RngStream trial_stream = RngStream::derive(
            config.master_seed, {kTagTrial, snr_idx, rho_idx, t});
        ChannelRealization realization = sample_channel_set(base_params, trial_stream);
        realization = correlate_eve_channels(realization, base_params, trial_stream);
        const std::vector<double> phases = draw_phases(base_params.n_units, trial_stream);
        const RngStream noise_base = RngStream::derive(
            config.master_seed, {kTagNoise, snr_idx, rho_idx, t});
        for (const ModeJob& job : jobs) {
            RisState ris{*job.switches, phases};
            RngStream noise = noise_base;  // identical noise in every mode
            const CsiObservation obs =
                observe_csi(realization, ris, base_params, noise);
            job.cell->samples[t] = ObsTriple{obs.h_a, obs.h_b, obs.h_be_obs};
            if (collect_features) {
                job.cell->feat_alice[t] = obs.h_a.real();
                job.cell->feat_bob[t] = obs.h_b.real();
            }
        }
    });
    return out;
}

struct PreparedSnr {
    SystemParams params;  // rho filled in per point
    std::map<Mode, std::vector<std::uint8_t>> switches;
};

PreparedSnr prepare_snr(const ExperimentConfig& config, std::size_t snr_idx) {
    PreparedSnr prep;
    const double snr = config.snr_grid_db[snr_idx];
    RngStream var_stream =
        RngStream::derive(config.master_seed, {kTagVariances, snr_idx});
    prep.params.n_units = config.n_units;
    prep.params.budget = config.budget();
    prep.params.snr_db = snr;
    prep.params.sigma2_ab = snr_to_direct_variance(snr);
    prep.params.sigma2_ra = draw_unit_variances(config.n_units, snr, var_stream);
    prep.params.sigma2_rb = draw_unit_variances(config.n_units, snr, var_stream);
    prep.params.eve_scenario = config.eve_scenario;

    for (Mode mode : config.modes) {
        switch (mode) {
            case Mode::Ours: {
                prep.switches[mode] =
                    select_units(prep.params, Strategy::TopM, nullptr,
                                 config.formula_variant)
                        .switches;
                break;
            }
            case Mode::Random: {
                RngStream sel_stream = RngStream::derive(
                    config.master_seed, {kTagSelection, snr_idx});
                prep.switches[mode] =
                    random_selection(config.n_units, config.budget(), sel_stream);
                break;
            }
            case Mode::NoRis:
                prep.switches[mode].assign(
                    static_cast<std::size_t>(config.n_units), 0);
                break;
        }
    }
    return prep;
}

SweepRow make_row(const ExperimentConfig& config, std::size_t snr_idx,
                  std::size_t rho_idx, Mode mode,
                  const std::vector<std::uint8_t>& switches,
                  const CellOutput& cell) {
    SweepRow row;
    row.snr_db = config.snr_grid_db[snr_idx];
    row.rho = config.rho_values[rho_idx];
    row.mode = mode;
    row.n = config.n_units;
    int on = 0;
    for (auto s : switches) {
        on += s ? 1 : 0;
    }
    row.m = on;
    row.trials = config.trials;
    const BatchStats stats = batched_cmi(cell.samples);
    row.mean_csk = std::max(0.0, stats.mean);
    row.std_csk = stats.stddev;
    row.seed = RngStream::derive(config.master_seed,
                                 {kTagCellId, snr_idx, rho_idx,
                                  static_cast<std::uint64_t>(mode)})
                   .raw();
    return row;
}

void sort_rows(std::vector<SweepRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.snr_db != b.snr_db) return a.snr_db < b.snr_db;
        if (a.rho != b.rho) return a.rho < b.rho;
        return static_cast<int>(a.mode) < static_cast<int>(b.mode);
    });
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

}  // namespace

int ExperimentConfig::budget() const {
    const int m = static_cast<int>(std::llround(turn_on_ratio * n_units));
    return std::clamp(m, 1, n_units);
}

void ExperimentConfig::validate() const {
    if (snr_grid_db.empty() || rho_values.empty() || modes.empty()) {
        throw std::invalid_argument("ExperimentConfig: grids and modes must be non-empty");
    }
    if (trials < 1000) {
        throw std::invalid_argument(
            "ExperimentConfig: need at least 1000 trials (empirical CMI estimation)");
    }
    if (n_units < 1) {
        throw std::invalid_argument("ExperimentConfig: n_units must be positive");
    }
    if (!(turn_on_ratio > 0.0 && turn_on_ratio <= 1.0)) {
        throw std::invalid_argument("ExperimentConfig: turn_on_ratio must lie in (0, 1]");
    }
    for (double rho : rho_values) {
        if (!(rho >= 0.0 && rho <= 1.0)) {
            throw std::invalid_argument("ExperimentConfig: rho values must lie in [0, 1]");
        }
    }
}

const char* mode_name(Mode mode) {
    switch (mode) {
        case Mode::Ours: return "Ours";
        case Mode::Random: return "Random";
        case Mode::NoRis: return "NoRis";
    }
    return "Unknown";
}

Mode mode_from_string(const std::string& name) {
    std::string lower;
    for (char c : name) {
        lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (lower == "ours") return Mode::Ours;
    if (lower == "random") return Mode::Random;
    if (lower == "noris") return Mode::NoRis;
    throw std::invalid_argument("unknown mode: " + name);
}

const char* variant_name(FormulaVariant variant) {
    return variant == FormulaVariant::Printed13 ? "printed13" : "composed";
}

FormulaVariant variant_from_string(const std::string& name) {
    std::string lower;
    for (char c : name) {
        lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (lower == "printed13") return FormulaVariant::Printed13;
    if (lower == "composed") return FormulaVariant::Composed;
    throw std::invalid_argument("unknown formula variant: " + name);
}

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig config;
    if (name == "fig5a") {
        config.snr_grid_db = {18.0};
        config.rho_values.clear();
        for (int i = 0; i <= 20; ++i) {
            config.rho_values.push_back(0.05 * i);
        }
        config.modes = {Mode::Ours};
    } else if (name == "fig5b" || name == "fig5f") {
        // full mode comparison over the SNR grid
    } else if (name == "fig5c") {
        config.rho_values = {0.1, 0.3, 0.7};
    } else if (name == "fig5d") {
        // ratio comparison: run once per --ratio value (0.4 / 0.6 / 0.8)
        config.modes = {Mode::Ours, Mode::Random};
    } else if (name == "fig5e") {
        // unit-count comparison: run once per --units value (60 / 80 / 100)
        config.modes = {Mode::Ours, Mode::Random};
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return config;
}

namespace {

std::vector<double> parse_double_list(const std::string& value, const std::string& key) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= value.size()) {
        const std::size_t next = value.find(',', pos);
        const std::string token = value.substr(pos, next - pos);
        try {
            out.push_back(std::stod(token));
        } catch (const std::exception&) {
            throw std::invalid_argument("config: bad number '" + token + "' for " + key);
        }
        if (next == std::string::npos) {
            break;
        }
        pos = next + 1;
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file " + path);
    }
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: expected key=value, got '" + line + "'");
        }
        entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }

    ExperimentConfig config;
    for (const auto& [key, value] : entries) {
        if (key == "preset") {
            config = preset_config(value);
        }
    }
    for (const auto& [key, value] : entries) {
        if (key == "preset") {
            continue;
        } else if (key == "snr") {
            config.snr_grid_db = parse_double_list(value, key);
        } else if (key == "rho") {
            config.rho_values = parse_double_list(value, key);
        } else if (key == "units") {
            config.n_units = static_cast<int>(std::stol(value));
        } else if (key == "ratio") {
            config.turn_on_ratio = std::stod(value);
        } else if (key == "trials") {
            config.trials = std::stoll(value);
        } else if (key == "modes") {
            config.modes.clear();
            std::size_t pos = 0;
            while (pos <= value.size()) {
                const std::size_t next = value.find(',', pos);
                config.modes.push_back(mode_from_string(trim(value.substr(pos, next - pos))));
                if (next == std::string::npos) {
                    break;
                }
                pos = next + 1;
            }
        } else if (key == "variant") {
            config.formula_variant = variant_from_string(value);
        } else if (key == "seed") {
            config.master_seed = std::stoull(value);
        } else if (key == "out") {
            config.output_path = value;
        } else if (key == "scenario") {
            std::string lower;
            for (char c : value) {
                lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            }
            if (lower == "nearnode") {
                config.eve_scenario = EveScenario::NearNode;
            } else if (lower == "nearris") {
                config.eve_scenario = EveScenario::NearRis;
            } else {
                throw std::invalid_argument("config: unknown scenario '" + value + "'");
            }
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    return config;
}

std::vector<SweepRow> run_capacity_sweep(const ExperimentConfig& config) {
    config.validate();
    std::vector<SweepRow> rows;
    for (std::size_t s = 0; s < config.snr_grid_db.size(); ++s) {
        PreparedSnr prep = prepare_snr(config, s);
        for (std::size_t r = 0; r < config.rho_values.size(); ++r) {
            prep.params.rho = config.rho_values[r];
            auto cells = simulate_point(config, s, r, prep.params, prep.switches, false);
            for (const auto& [mode, cell] : cells) {
                rows.push_back(make_row(config, s, r, mode, prep.switches.at(mode), cell));
            }
        }
    }
    sort_rows(rows);
    return rows;
}

KeyExperimentResult run_key_experiment(const ExperimentConfig& config) {
    config.validate();
    KeyExperimentResult result;
    const std::filesystem::path out_dir =
        std::filesystem::path(config.output_path).parent_path();
    std::map<std::pair<int, std::size_t>, BitSequence> key_streams;  // (mode, snr_idx)

    for (std::size_t s = 0; s < config.snr_grid_db.size(); ++s) {
        PreparedSnr prep = prepare_snr(config, s);
        for (std::size_t r = 0; r < config.rho_values.size(); ++r) {
            prep.params.rho = config.rho_values[r];
            auto cells = simulate_point(config, s, r, prep.params, prep.switches, true);
            for (const auto& [mode, cell] : cells) {
                SweepRow row = make_row(config, s, r, mode, prep.switches.at(mode), cell);
                const QuantizerSpec spec_alice = fit_quantizer(cell.feat_alice);
                const QuantizerSpec spec_bob = fit_quantizer(cell.feat_bob);
                const BitSequence alice =
                    gray_quantize(cell.feat_alice, spec_alice, Party::Alice);
                const BitSequence bob =
                    gray_quantize(cell.feat_bob, spec_bob, Party::Bob);
                row.ukr = unmatched_key_rate(alice, bob);
                result.rows.push_back(row);
                BitSequence& merged = key_streams[{static_cast<int>(mode), s}];
                merged.bits.insert(merged.bits.end(), alice.bits.begin(), alice.bits.end());
            }
        }
    }
    for (const auto& [key, seq] : key_streams) {
        const Mode mode = static_cast<Mode>(key.first);
        char name[64];
        std::snprintf(name, sizeof(name), "keys_%s_snr%s.txt", mode_name(mode),
                      format_double(config.snr_grid_db[key.second]).c_str());
        const std::filesystem::path path = out_dir / name;
        write_key_file(path.string(), seq);
        result.key_files.push_back(path.string());
    }
    sort_rows(result.rows);
    return result;
}

std::string sweep_csv(const ExperimentConfig& config, const std::vector<SweepRow>& rows) {
    std::string csv;
    csv += "# n_units=" + std::to_string(config.n_units) +
           " budget=" + std::to_string(config.budget()) +
           " ratio=" + format_double(config.turn_on_ratio) +
           " trials=" + std::to_string(config.trials) +
           " variant=" + variant_name(config.formula_variant) +
           " scenario=" + (config.eve_scenario == EveScenario::NearNode ? "nearnode" : "nearris") +
           " seed=" + std::to_string(config.master_seed) + "\n";
    csv += "# rho_values=";
    for (std::size_t i = 0; i < config.rho_values.size(); ++i) {
        csv += (i ? "," : "") + format_double(config.rho_values[i]);
    }
    csv += "\n";
    csv += "# mean_csk/std_csk: mean and stddev of per-batch empirical Gaussian CMI"
           " (up to 10 batches of >= 1000 trials)\n";
    csv += "snr_db,rho,mode,n,m,trials,mean_csk,std_csk,ukr,seed\n";
    char line[256];
    for (const SweepRow& row : rows) {
        std::snprintf(line, sizeof(line), "%g,%g,%s,%d,%d,%lld,%.6f,%.6f,%.6f,%llu\n",
                      row.snr_db, row.rho, mode_name(row.mode), row.n, row.m, row.trials,
                      row.mean_csk, row.std_csk, row.ukr,
                      static_cast<unsigned long long>(row.seed));
        csv += line;
    }
    return csv;
}

void write_sweep_csv(const ExperimentConfig& config, const std::vector<SweepRow>& rows) {
    std::ofstream out(config.output_path);
    if (!out) {
        throw std::runtime_error("write_sweep_csv: cannot open " + config.output_path);
    }
    out << sweep_csv(config, rows);
    if (!out) {
        throw std::runtime_error("write_sweep_csv: write failed for " + config.output_path);
    }
}

}  // namespace skg::harness
