#include "skg/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "skg/bessel.hpp"

namespace skg {

void SystemParams::validate() const {
    if (n_units < 1) {
        throw std::invalid_argument("SystemParams: n_units must be positive");
    }
    if (budget < 1 || budget > n_units) {
        throw std::invalid_argument("SystemParams: budget must satisfy 1 <= M <= N");
    }
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw std::invalid_argument("SystemParams: rho must lie in [0, 1]");
    }
    if (noise_power != 1.0) {
        throw std::invalid_argument("SystemParams: noise_power is fixed at 1.0");
    }
    if (!(sigma2_ab > 0.0)) {
        throw std::invalid_argument("SystemParams: sigma2_ab must be positive");
    }
    if (sigma2_ra.size() != static_cast<std::size_t>(n_units) ||
        sigma2_rb.size() != static_cast<std::size_t>(n_units)) {
        throw std::invalid_argument("SystemParams: variance lists must have n_units entries");
    }
    for (double v : sigma2_ra) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("SystemParams: sigma2_ra entries must be positive");
        }
    }
    for (double v : sigma2_rb) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("SystemParams: sigma2_rb entries must be positive");
        }
    }
    if (!(wavelength > 0.0)) {
        throw std::invalid_argument("SystemParams: wavelength must be positive");
    }
}

double correlation_from_distance(double l, double lambda) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("correlation_from_distance: wavelength must be positive");
    }
    if (l < 0.0) {
        throw std::invalid_argument("correlation_from_distance: distance must be non-negative");
    }
    return std::max(bessel_j0(2.0 * M_PI * l / lambda), 0.0);
}

double snr_to_direct_variance(double snr_db) {
    return std::pow(10.0, snr_db / 10.0);
}

std::vector<double> draw_unit_variances(int n_units, double snr_db, RngStream& stream) {
    const double mean = snr_to_direct_variance(snr_db) / 2.0;
    std::vector<double> out(static_cast<std::size_t>(n_units));
    for (double& v : out) {
        v = stream.exponential(mean);
    }
    return out;
}

std::vector<double> draw_phases(int n_units, RngStream& stream) {
    std::vector<double> out(static_cast<std::size_t>(n_units));
    for (double& p : out) {
        p = 2.0 * M_PI * stream.uniform();
    }
    return out;
}

RisState make_ris_state(const SystemParams& params,
                        std::vector<std::uint8_t> switches,
                        RngStream& stream) {
    if (switches.size() != static_cast<std::size_t>(params.n_units)) {
        throw std::invalid_argument("make_ris_state: switch count must equal n_units");
    }
    int on = 0;
    for (auto s : switches) {
        on += s ? 1 : 0;
    }
    if (on > params.budget) {
        throw std::invalid_argument("make_ris_state: active units exceed the budget");
    }
    return RisState{std::move(switches), draw_phases(params.n_units, stream)};
}

ChannelRealization sample_channel_set(const SystemParams& params, RngStream& stream) {
    params.validate();
    const std::size_t n = static_cast<std::size_t>(params.n_units);
    ChannelRealization real;
    real.h_ab = stream.complex_gaussian(params.sigma2_ab);
    real.h_ar.resize(n);
    real.h_rb.resize(n);
    real.h_re.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        real.h_ar[i] = stream.complex_gaussian(params.sigma2_ra[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        real.h_rb[i] = stream.complex_gaussian(params.sigma2_rb[i]);
    }
    // Eve placeholders; correlate_eve_channels overwrites them per scenario.
    real.h_ae = stream.complex_gaussian(params.sigma2_ab);
    real.h_be = stream.complex_gaussian(params.sigma2_ab);
    for (std::size_t i = 0; i < n; ++i) {
        real.h_re[i] = stream.complex_gaussian(params.sigma2_ra[i]);
    }
    return real;
}

ChannelRealization correlate_eve_channels(const ChannelRealization& realization,
                                          const SystemParams& params,
                                          RngStream& stream) {
    if (!(params.rho >= 0.0 && params.rho <= 1.0)) {
        throw std::invalid_argument("correlate_eve_channels: rho must lie in [0, 1]");
    }
    if (realization.h_ar.size() != static_cast<std::size_t>(params.n_units)) {
        throw std::invalid_argument("correlate_eve_channels: realization does not match params");
    }
    ChannelRealization out = realization;
    const double rho = params.rho;
    const double mix = std::sqrt(1.0 - rho * rho);
    if (params.eve_scenario == EveScenario::NearNode) {
        // Eve adjacent to Alice: her Bob-side and RIS-side coefficients track
        // the Alice-side ones; the Alice-Eve direct path stays independent.
        out.h_be = rho * realization.h_ab + mix * stream.complex_gaussian(params.sigma2_ab);
        for (std::size_t i = 0; i < out.h_re.size(); ++i) {
            out.h_re[i] = rho * realization.h_ar[i] +
                          mix * stream.complex_gaussian(params.sigma2_ra[i]);
        }
        out.h_ae = stream.complex_gaussian(params.sigma2_ab);
    } else {
        // Eve adjacent to the RIS: her observations stay independent of the
        // legitimate coefficients.
        out.h_ae = stream.complex_gaussian(params.sigma2_ab);
        out.h_be = stream.complex_gaussian(params.sigma2_ab);
    }
    return out;
}

CsiObservation observe_csi(const ChannelRealization& realization,
                           const RisState& ris,
                           const SystemParams& params,
                           RngStream& stream,
                           std::optional<double> noise_override) {
    const std::size_t n = static_cast<std::size_t>(params.n_units);
    if (realization.h_ar.size() != n || ris.switches.size() != n ||
        ris.phases.size() != n) {
        throw std::invalid_argument("observe_csi: dimension mismatch");
    }
    std::complex<double> cascade_legit{0.0, 0.0};
    std::complex<double> cascade_ae{0.0, 0.0};
    std::complex<double> cascade_be{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        if (!ris.switches[i]) {
            continue;
        }
        const std::complex<double> phase{std::cos(ris.phases[i]), std::sin(ris.phases[i])};
        cascade_legit += phase * realization.h_rb[i] * realization.h_ar[i];
        cascade_ae += phase * realization.h_ar[i] * realization.h_re[i];
        cascade_be += phase * realization.h_rb[i] * realization.h_re[i];
    }
    const double noise = noise_override.value_or(params.noise_power);
    CsiObservation obs;
    const std::complex<double> shared = realization.h_ab + cascade_legit;
    obs.h_a = shared;
    obs.h_b = shared;
    obs.h_ae_obs = realization.h_ae + cascade_ae;
    obs.h_be_obs = realization.h_be + cascade_be;
    if (noise > 0.0) {
        obs.h_a += stream.complex_gaussian(noise);
        obs.h_b += stream.complex_gaussian(noise);
        obs.h_ae_obs += stream.complex_gaussian(noise);
        obs.h_be_obs += stream.complex_gaussian(noise);
    }
    return obs;
}

}  // namespace skg
