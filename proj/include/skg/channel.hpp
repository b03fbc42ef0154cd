#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "skg/rng.hpp"

namespace skg {

enum class EveScenario { NearNode, NearRis };

/// Scenario constants. noise_power is fixed at 1.0; SNR enters through the
/// sub-channel variances instead (direct path 10^(snr_db/10), per-unit
/// variances drawn once per experiment, see draw_unit_variances).
struct SystemParams {
    int n_units = 0;
    int budget = 0;
    double rho = 0.0;
    double snr_db = 0.0;
    double noise_power = 1.0;
    double sigma2_ab = 1.0;
    std::vector<double> sigma2_ra;
    std::vector<double> sigma2_rb;
    double wavelength = 0.125;
    EveScenario eve_scenario = EveScenario::NearNode;

    void validate() const;
    SystemParams validated() const {
        validate();
        return *this;
    }
};

/// Per-unit on/off switches and the random phase shifts of one coherent block.
struct RisState {
    std::vector<std::uint8_t> switches;
    std::vector<double> phases;
};

/// One coherent-block draw of every sub-channel coefficient. Reciprocal
/// directions share the stored value (h_ab serves both A->B and B->A, h_ar
/// doubles as h_ra, h_rb as h_br).
struct ChannelRealization {
    std::complex<double> h_ab;
    std::vector<std::complex<double>> h_ar;
    std::vector<std::complex<double>> h_rb;
    std::complex<double> h_ae;
    std::complex<double> h_be;
    std::vector<std::complex<double>> h_re;
};

/// Noisy CSI estimates at the four observers.
struct CsiObservation {
    std::complex<double> h_a;
    std::complex<double> h_b;
    std::complex<double> h_ae_obs;
    std::complex<double> h_be_obs;
};

/// Eavesdropper correlation from distance, rho = max(J0(2 pi l / lambda), 0).
double correlation_from_distance(double l, double lambda);

/// Direct-path variance implied by an SNR in dB at unit noise power.
double snr_to_direct_variance(double snr_db);

/// Per-unit sub-channel variances for one experiment: i.i.d. exponential
/// with mean 10^(snr_db/10)/2. Heterogeneous by design so that unit
/// selection is meaningful.
std::vector<double> draw_unit_variances(int n_units, double snr_db, RngStream& stream);

/// Random phase shifts, uniform on [0, 2 pi), one per unit.
std::vector<double> draw_phases(int n_units, RngStream& stream);

RisState make_ris_state(const SystemParams& params,
                        std::vector<std::uint8_t> switches,
                        RngStream& stream);

/// Draws all legitimate coefficients i.i.d. CN(0, sigma^2); Eve coefficients
/// are independent placeholders until correlate_eve_channels runs.
ChannelRealization sample_channel_set(const SystemParams& params, RngStream& stream);

/// Imposes the scenario's eavesdropper correlation. NearNode mixes Eve's
/// direct and RIS-side coefficients with the Alice-side ones at correlation
/// rho; NearRis redraws Eve's direct coefficients independently.
ChannelRealization correlate_eve_channels(const ChannelRealization& realization,
                                          const SystemParams& params,
                                          RngStream& stream);

/// Forms the four noisy CSI observations of one block. noise_override
/// replaces the configured noise power (test hook; pass 0.0 for noiseless).
CsiObservation observe_csi(const ChannelRealization& realization,
                           const RisState& ris,
                           const SystemParams& params,
                           RngStream& stream,
                           std::optional<double> noise_override = std::nullopt);

}  // namespace skg
