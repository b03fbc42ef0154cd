#include "skg/capacity.hpp"

#include <cmath>
#include <stdexcept>

namespace skg {

namespace {

constexpr double kDetFloor = 1e-12;

double floored(double det) { return det < kDetFloor ? kDetFloor : det; }

}  // namespace

double effective_variance(const SystemParams& params,
                          std::span<const std::uint8_t> switches) {
    if (switches.size() != params.sigma2_ra.size()) {
        throw std::invalid_argument("effective_variance: switch count must equal n_units");
    }
    double x = params.sigma2_ab;
    for (std::size_t i = 0; i < switches.size(); ++i) {
        if (switches[i]) {
            const double a = params.sigma2_ra[i];
            const double b = params.sigma2_rb[i];
            x += a * b / (a + b);
        }
    }
    return x;
}

CovarianceDeterminants covariance_determinants(double x, double rho) {
    CovarianceDeterminants d;
    d.det_e = rho * x + 1.0;
    d.det_joint3 = (rho * rho + 2.0) * x + 1.0;
    d.det_pair = (rho * rho + 1.0) * x + 1.0;
    return d;
}

double csk_closed_form(double x, double rho, FormulaVariant variant) {
    double bits = 0.0;
    if (variant == FormulaVariant::Printed13) {
        const double r2 = rho * rho;
        const double num = (r2 * r2 + 2.0 * r2 + 1.0) * x * x +
                           (2.0 * r2 + 4.0 * rho + 2.0) * x + 1.0;
        const double den = (r2 * rho + 2.0 * rho) * x * x +
                           (r2 + rho + 2.0) * x + 1.0;
        bits = std::log2(num / den);
    } else {
        const CovarianceDeterminants d = covariance_determinants(x, rho);
        bits = std::log2(d.det_pair * d.det_pair / (d.det_e * d.det_joint3));
    }
    return bits < 0.0 ? 0.0 : bits;
}

double csk_independent_eve(double x) {
    const double v = (x + 1.0) * (x + 1.0) / (2.0 * x + 1.0);
    const double bits = std::log2(v);
    return bits < 0.0 ? 0.0 : bits;
}

CapacityReport analyze_capacity(const SystemParams& params,
                                std::span<const std::uint8_t> switches,
                                FormulaVariant variant) {
    CapacityReport report;
    report.x = effective_variance(params, switches);
    const CovarianceDeterminants d = covariance_determinants(report.x, params.rho);
    report.det_e = d.det_e;
    report.det_joint3 = d.det_joint3;
    report.det_pair = d.det_pair;
    report.csk_bits = csk_closed_form(report.x, params.rho, variant);
    report.variant = variant;
    return report;
}

double gaussian_cmi_from_samples(std::span<const ObsTriple> samples) {
    if (samples.size() < 1000) {
        throw std::invalid_argument("gaussian_cmi_from_samples: need at least 1000 samples");
    }
    // Second moments of (H_A, H_B, H_BE); the model is zero-mean, so no
    // centering is applied.
    double raa = 0.0, rbb = 0.0, ree = 0.0;
    std::complex<double> rab{0.0, 0.0}, rae{0.0, 0.0}, rbe{0.0, 0.0};
    for (const ObsTriple& s : samples) {
        raa += std::norm(s.h_a);
        rbb += std::norm(s.h_b);
        ree += std::norm(s.h_be);
        rab += s.h_a * std::conj(s.h_b);
        rae += s.h_a * std::conj(s.h_be);
        rbe += s.h_b * std::conj(s.h_be);
    }
    const double inv = 1.0 / static_cast<double>(samples.size());
    raa *= inv;
    rbb *= inv;
    ree *= inv;
    rab *= inv;
    rae *= inv;
    rbe *= inv;

    const double det_e = ree;
    const double det_ae = raa * ree - std::norm(rae);
    const double det_be = rbb * ree - std::norm(rbe);
    // Hermitian 3x3 determinant (real by symmetry).
    const double det_abe = raa * (rbb * ree - std::norm(rbe)) -
                           std::real(rab * (std::conj(rab) * ree -
                                            rbe * std::conj(rae))) +
                           std::real(rae * (std::conj(rab) * std::conj(rbe) -
                                            rbb * std::conj(rae)));
    const double num = floored(det_ae) * floored(det_be);
    const double den = floored(det_e) * floored(det_abe);
    return std::log2(num / den);
}

}  // namespace skg
