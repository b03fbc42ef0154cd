#include "skg/keys.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace skg {

namespace {

// Percentile with interpolation knots at the midpoints of the order
// statistics (h = n*p + 1/2), so that {-3,-1,1,3} yields quartiles -2, 0, 2.
double percentile(const std::vector<double>& sorted, double p) {
    const double n = static_cast<double>(sorted.size());
    const double h = n * p + 0.5;
    if (h <= 1.0) {
        return sorted.front();
    }
    if (h >= n) {
        return sorted.back();
    }
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(lo);
    return sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1]);
}

std::size_t bin_of(double value, const std::array<double, 3>& thresholds) {
    std::size_t bin = 0;
    while (bin < 3 && value > thresholds[bin]) {
        ++bin;
    }
    return bin;
}

}  // namespace

QuantizerSpec fit_quantizer(std::span<const double> features) {
    if (features.size() < 4) {
        throw std::invalid_argument("fit_quantizer: need at least 4 samples");
    }
    std::vector<double> sorted(features.begin(), features.end());
    std::sort(sorted.begin(), sorted.end());
    QuantizerSpec spec;
    spec.thresholds = {percentile(sorted, 0.25), percentile(sorted, 0.50),
                       percentile(sorted, 0.75)};
    if (!(spec.thresholds[0] < spec.thresholds[1] &&
          spec.thresholds[1] < spec.thresholds[2])) {
        throw std::domain_error("fit_quantizer: degenerate corpus, quartiles coincide");
    }
    return spec;
}

BitSequence gray_quantize(std::span<const double> features,
                          const QuantizerSpec& spec,
                          Party source) {
    BitSequence seq;
    seq.source = source;
    seq.bits.reserve(features.size() * 2);
    for (double f : features) {
        const auto& word = spec.codebook[bin_of(f, spec.thresholds)];
        seq.bits.push_back(word[0]);
        seq.bits.push_back(word[1]);
    }
    return seq;
}

double unmatched_key_rate(const BitSequence& a, const BitSequence& b) {
    if (a.bits.size() != b.bits.size()) {
        throw std::invalid_argument("unmatched_key_rate: sequence lengths differ");
    }
    if (a.bits.empty()) {
        return 0.0;
    }
    std::size_t mismatched = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
        mismatched += a.bits[i] != b.bits[i] ? 1 : 0;
    }
    return static_cast<double>(mismatched) / static_cast<double>(a.bits.size());
}

void write_key_file(const std::string& path, const BitSequence& seq) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_key_file: cannot open " + path);
    }
    for (std::uint8_t b : seq.bits) {
        out.put(b ? '1' : '0');
    }
    out.put('\n');
    if (!out) {
        throw std::runtime_error("write_key_file: write failed for " + path);
    }
}

BitSequence read_key_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_key_file: cannot open " + path);
    }
    BitSequence seq;
    char c = 0;
    while (in.get(c)) {
        if (c == '0') {
            seq.bits.push_back(0);
        } else if (c == '1') {
            seq.bits.push_back(1);
        } else if (c == '\n' || c == '\r' || c == ' ') {
            continue;
        } else {
            throw std::runtime_error("read_key_file: unexpected character in " + path);
        }
    }
    return seq;
}

}  // namespace skg
