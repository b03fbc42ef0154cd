#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "skg/channel.hpp"

namespace skg {

/// The closed-form secret key capacity exists in two flavours that disagree
/// for 0 < rho < 1: the expression as printed (numerator linear coefficient
/// 2 rho^2 + 4 rho + 2) and the one composed from the covariance-determinant
/// identities (coefficient 2 rho^2 + 2). Composed is the default.
enum class FormulaVariant { Printed13, Composed };

struct CovarianceDeterminants {
    double det_e = 0.0;       // det R(H_BE)
    double det_joint3 = 0.0;  // det R(H_A, H_B, H_BE)
    double det_pair = 0.0;    // det R(H_A, H_BE) = det R(H_B, H_BE)
};

struct CapacityReport {
    double x = 0.0;
    double csk_bits = 0.0;
    double det_e = 0.0;
    double det_joint3 = 0.0;
    double det_pair = 0.0;
    FormulaVariant variant = FormulaVariant::Composed;
};

/// One observation triple fed to the empirical estimator.
struct ObsTriple {
    std::complex<double> h_a;
    std::complex<double> h_b;
    std::complex<double> h_be;
};

/// Effective signal variance x = sigma2_ab + sum_i w_i^2 * s2ra_i s2rb_i / (s2ra_i + s2rb_i).
double effective_variance(const SystemParams& params, std::span<const std::uint8_t> switches);

CovarianceDeterminants covariance_determinants(double x, double rho);

/// Closed-form secret key capacity in bits per channel use, clamped at 0.
double csk_closed_form(double x, double rho, FormulaVariant variant);

/// Capacity against an independent eavesdropper: log2((x+1)^2 / (2x+1)).
double csk_independent_eve(double x);

CapacityReport analyze_capacity(const SystemParams& params,
                                std::span<const std::uint8_t> switches,
                                FormulaVariant variant);

/// Empirical Gaussian conditional mutual information I(H_A; H_B | H_BE) from
/// sample covariances (averaged outer products, zero-mean model).
/// Determinants are floored at 1e-12 before the ratio is formed. Requires at
/// least 1000 samples. Unlike the closed forms the estimate is not clamped,
/// so values slightly below zero are possible under sampling noise.
double gaussian_cmi_from_samples(std::span<const ObsTriple> samples);

}  // namespace skg
