#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace skg {

enum class Party { Alice, Bob };

struct BitSequence {
    std::vector<std::uint8_t> bits;
    Party source = Party::Alice;
};

/// 2-bit gray-code quantizer: three ascending thresholds at the empirical
/// quartiles, codebook 00 / 01 / 11 / 10 from lowest to highest bin so that
/// adjacent bins differ in exactly one bit.
struct QuantizerSpec {
    std::array<double, 3> thresholds{};
    std::array<std::array<std::uint8_t, 2>, 4> codebook{
        {{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
};

/// Fits thresholds at the 25th/50th/75th percentiles (linear interpolation
/// between order statistics, midpoint convention). Throws on fewer than 4
/// samples or a degenerate corpus whose quartiles coincide.
QuantizerSpec fit_quantizer(std::span<const double> features);

BitSequence gray_quantize(std::span<const double> features,
                          const QuantizerSpec& spec,
                          Party source);

/// Fraction of positions where the two sequences disagree.
double unmatched_key_rate(const BitSequence& a, const BitSequence& b);

/// Key files are a single line of ASCII '0'/'1'.
void write_key_file(const std::string& path, const BitSequence& seq);
BitSequence read_key_file(const std::string& path);

}  // namespace skg
