#pragma once

#include <cstdint>
#include <vector>

#include "skg/capacity.hpp"
#include "skg/channel.hpp"
#include "skg/rng.hpp"

namespace skg {

enum class Strategy { TopM, BestPrefix, Random };

struct SelectionResult {
    std::vector<std::uint8_t> switches;
    double achieved_x = 0.0;
    double achieved_csk = 0.0;
    Strategy strategy = Strategy::TopM;
};

/// Cascade variance contribution of one unit, s2ra * s2rb / (s2ra + s2rb).
double unit_gain(double sigma2_ra_i, double sigma2_rb_i);

/// Uniformly random M-subset as a switch vector, deterministic per stream.
std::vector<std::uint8_t> random_selection(int n, int m, RngStream& stream);

/// Chooses which units to switch on under the budget. TopM turns on the M
/// largest-gain units (ties to the lowest index). BestPrefix additionally
/// evaluates every prefix cardinality 0..M of the gain-sorted order and
/// keeps the capacity-maximizing one, guarding against the closed form's
/// non-monotonicity in x at large rho. Random draws from `stream`.
SelectionResult select_units(const SystemParams& params,
                             Strategy strategy,
                             RngStream* stream = nullptr,
                             FormulaVariant variant = FormulaVariant::Composed);

}  // namespace skg
