#include "skg/nist.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "skg/special.hpp"

namespace skg::nist {

namespace {

constexpr double kAlpha = 0.01;

struct LongestRunsTable {
    int block_len;
    int k;  // degrees of freedom; k+1 categories
    std::array<int, 7> edges;
    std::array<double, 7> pi;
};

// SP 800-22 category tables for the longest-run-of-ones test.
const LongestRunsTable kLongestRuns8{8, 3, {1, 2, 3, 4}, {0.2148, 0.3672, 0.2305, 0.1875}};
const LongestRunsTable kLongestRuns128{
    128, 5, {4, 5, 6, 7, 8, 9}, {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124}};
const LongestRunsTable kLongestRuns10000{
    10000, 6, {10, 11, 12, 13, 14, 15, 16},
    {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727}};

// Linear complexity deviation categories and probabilities.
constexpr std::array<double, 7> kLinearComplexityPi{
    0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833};

void require_length(std::span<const std::uint8_t> bits, std::size_t minimum,
                    const char* test) {
    if (bits.size() < minimum) {
        throw std::invalid_argument(std::string(test) + ": sequence too short, needs at least " +
                                    std::to_string(minimum) + " bits");
    }
}

double psi_squared(std::span<const std::uint8_t> bits, int m) {
    if (m <= 0) {
        return 0.0;
    }
    const std::size_t n = bits.size();
    std::vector<std::size_t> counts(static_cast<std::size_t>(1) << m, 0);
    const std::size_t mask = (static_cast<std::size_t>(1) << m) - 1;
    // Seed the window with the first m-1 bits, then slide with wraparound.
    std::size_t window = 0;
    for (int i = 0; i < m - 1; ++i) {
        window = (window << 1) | bits[static_cast<std::size_t>(i) % n];
    }
    for (std::size_t i = 0; i < n; ++i) {
        window = ((window << 1) | bits[(i + static_cast<std::size_t>(m) - 1) % n]) & mask;
        ++counts[window];
    }
    double sum = 0.0;
    for (std::size_t c : counts) {
        sum += static_cast<double>(c) * static_cast<double>(c);
    }
    return std::pow(2.0, m) / static_cast<double>(n) * sum - static_cast<double>(n);
}

}  // namespace

const char* test_kind_name(TestKind kind) {
    switch (kind) {
        case TestKind::Frequency: return "Frequency";
        case TestKind::BlockFrequency: return "BlockFrequency";
        case TestKind::Runs: return "Runs";
        case TestKind::LongestRuns: return "LongestRuns";
        case TestKind::Serial: return "Serial";
        case TestKind::LinearComplexity: return "LinearComplexity";
    }
    return "Unknown";
}

double frequency_p_value(std::span<const std::uint8_t> bits) {
    const double n = static_cast<double>(bits.size());
    long long s = 0;
    for (std::uint8_t b : bits) {
        s += b ? 1 : -1;
    }
    return std::erfc(std::abs(static_cast<double>(s)) / std::sqrt(n) / std::sqrt(2.0));
}

double block_frequency_p_value(std::span<const std::uint8_t> bits, int block_len) {
    if (block_len <= 0) {
        throw std::invalid_argument("block_frequency: block length must be positive");
    }
    const std::size_t nblocks = bits.size() / static_cast<std::size_t>(block_len);
    if (nblocks == 0) {
        throw std::invalid_argument("block_frequency: sequence shorter than one block");
    }
    double chi2 = 0.0;
    for (std::size_t i = 0; i < nblocks; ++i) {
        std::size_t ones = 0;
        for (int j = 0; j < block_len; ++j) {
            ones += bits[i * static_cast<std::size_t>(block_len) + static_cast<std::size_t>(j)];
        }
        const double pi = static_cast<double>(ones) / block_len;
        chi2 += (pi - 0.5) * (pi - 0.5);
    }
    chi2 *= 4.0 * block_len;
    return igamc(static_cast<double>(nblocks) / 2.0, chi2 / 2.0);
}

double runs_p_value(std::span<const std::uint8_t> bits) {
    const std::size_t n = bits.size();
    std::size_t ones = 0;
    for (std::uint8_t b : bits) {
        ones += b;
    }
    const double pi = static_cast<double>(ones) / static_cast<double>(n);
    // Prerequisite frequency check; grossly biased sequences score 0.
    if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(static_cast<double>(n))) {
        return 0.0;
    }
    std::size_t v = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        v += bits[k] != bits[k + 1] ? 1 : 0;
    }
    const double nn = static_cast<double>(n);
    const double num = std::abs(static_cast<double>(v) - 2.0 * nn * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * nn) * pi * (1.0 - pi);
    return std::erfc(num / den);
}

double longest_runs_p_value(std::span<const std::uint8_t> bits) {
    const std::size_t n = bits.size();
    const LongestRunsTable& table =
        n < 6272 ? kLongestRuns8 : (n < 750000 ? kLongestRuns128 : kLongestRuns10000);
    const std::size_t m = static_cast<std::size_t>(table.block_len);
    const std::size_t nblocks = n / m;
    if (nblocks == 0) {
        throw std::invalid_argument("longest_runs: sequence shorter than one block");
    }
    std::array<std::size_t, 7> counts{};
    for (std::size_t i = 0; i < nblocks; ++i) {
        int longest = 0;
        int run = 0;
        for (std::size_t j = 0; j < m; ++j) {
            run = bits[i * m + j] ? run + 1 : 0;
            longest = std::max(longest, run);
        }
        int cat = 0;
        while (cat < table.k && longest > table.edges[static_cast<std::size_t>(cat)]) {
            ++cat;
        }
        ++counts[static_cast<std::size_t>(cat)];
    }
    double chi2 = 0.0;
    for (int i = 0; i <= table.k; ++i) {
        const double expected = static_cast<double>(nblocks) * table.pi[static_cast<std::size_t>(i)];
        const double diff = static_cast<double>(counts[static_cast<std::size_t>(i)]) - expected;
        chi2 += diff * diff / expected;
    }
    return igamc(static_cast<double>(table.k) / 2.0, chi2 / 2.0);
}

std::pair<double, double> serial_p_values(std::span<const std::uint8_t> bits, int pattern_len) {
    if (pattern_len < 2) {
        throw std::invalid_argument("serial: pattern length must be at least 2");
    }
    const double psi_m = psi_squared(bits, pattern_len);
    const double psi_m1 = psi_squared(bits, pattern_len - 1);
    const double psi_m2 = psi_squared(bits, pattern_len - 2);
    const double d1 = psi_m - psi_m1;
    const double d2 = psi_m - 2.0 * psi_m1 + psi_m2;
    const double p1 = igamc(std::pow(2.0, pattern_len - 2), d1 / 2.0);
    const double p2 = igamc(std::pow(2.0, pattern_len - 3), d2 / 2.0);
    return {p1, p2};
}

std::size_t berlekamp_massey(std::span<const std::uint8_t> bits) {
    const std::size_t n = bits.size();
    std::vector<std::uint8_t> c(n + 1, 0);
    std::vector<std::uint8_t> b(n + 1, 0);
    c[0] = b[0] = 1;
    std::size_t l = 0;
    std::ptrdiff_t m = -1;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t d = bits[i];
        for (std::size_t j = 1; j <= l; ++j) {
            d ^= c[j] & bits[i - j];
        }
        if (d) {
            const std::vector<std::uint8_t> t = c;
            const std::size_t shift = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) - m);
            for (std::size_t j = 0; j + shift <= n; ++j) {
                c[j + shift] ^= b[j];
            }
            if (2 * l <= i) {
                l = i + 1 - l;
                m = static_cast<std::ptrdiff_t>(i);
                b = t;
            }
        }
    }
    return l;
}

double linear_complexity_p_value(std::span<const std::uint8_t> bits, int block_len) {
    if (block_len <= 0) {
        throw std::invalid_argument("linear_complexity: block length must be positive");
    }
    const std::size_t m = static_cast<std::size_t>(block_len);
    const std::size_t nblocks = bits.size() / m;
    if (nblocks == 0) {
        throw std::invalid_argument("linear_complexity: sequence shorter than one block");
    }
    const double dm = static_cast<double>(block_len);
    const double sign_m1 = block_len % 2 == 0 ? -1.0 : 1.0;  // (-1)^(M+1)
    const double mu = dm / 2.0 + (9.0 + sign_m1) / 36.0 -
                      (dm / 3.0 + 2.0 / 9.0) / std::pow(2.0, dm);
    const double sign = block_len % 2 == 0 ? 1.0 : -1.0;  // (-1)^M
    std::array<std::size_t, 7> counts{};
    for (std::size_t i = 0; i < nblocks; ++i) {
        const std::size_t l = berlekamp_massey(bits.subspan(i * m, m));
        const double t = sign * (static_cast<double>(l) - mu) + 2.0 / 9.0;
        int cat;
        if (t <= -2.5) {
            cat = 0;
        } else if (t <= -1.5) {
            cat = 1;
        } else if (t <= -0.5) {
            cat = 2;
        } else if (t <= 0.5) {
            cat = 3;
        } else if (t <= 1.5) {
            cat = 4;
        } else if (t <= 2.5) {
            cat = 5;
        } else {
            cat = 6;
        }
        ++counts[static_cast<std::size_t>(cat)];
    }
    double chi2 = 0.0;
    for (std::size_t i = 0; i < 7; ++i) {
        const double expected = static_cast<double>(nblocks) * kLinearComplexityPi[i];
        const double diff = static_cast<double>(counts[i]) - expected;
        chi2 += diff * diff / expected;
    }
    return igamc(3.0, chi2 / 2.0);
}

TestOutcome run_nist_test(TestKind kind, std::span<const std::uint8_t> bits, int block_len) {
    TestOutcome out;
    out.kind = kind;
    switch (kind) {
        case TestKind::Frequency:
            require_length(bits, 100, "Frequency");
            out.p_values = {frequency_p_value(bits)};
            break;
        case TestKind::BlockFrequency: {
            const int m = block_len > 0 ? block_len : 128;
            require_length(bits, 100, "BlockFrequency");
            out.p_values = {block_frequency_p_value(bits, m)};
            out.params = "M=" + std::to_string(m);
            break;
        }
        case TestKind::Runs:
            require_length(bits, 100, "Runs");
            out.p_values = {runs_p_value(bits)};
            break;
        case TestKind::LongestRuns: {
            require_length(bits, 128, "LongestRuns");
            const std::size_t n = bits.size();
            const int m = n < 6272 ? 8 : (n < 750000 ? 128 : 10000);
            out.p_values = {longest_runs_p_value(bits)};
            out.params = "M=" + std::to_string(m);
            break;
        }
        case TestKind::Serial: {
            const int m = block_len > 0 ? block_len : 3;
            require_length(bits, static_cast<std::size_t>(1) << (m + 2), "Serial");
            const auto [p1, p2] = serial_p_values(bits, m);
            out.p_values = {p1, p2};
            out.params = "m=" + std::to_string(m);
            break;
        }
        case TestKind::LinearComplexity: {
            const int m = block_len > 0 ? block_len : 500;
            require_length(bits, 10000, "LinearComplexity");
            if (bits.size() < 1000000) {
                out.warning = "sequence shorter than the recommended 1000000 bits";
            }
            out.p_values = {linear_complexity_p_value(bits, m)};
            out.params = "M=" + std::to_string(m);
            break;
        }
    }
    out.p_value = *std::min_element(out.p_values.begin(), out.p_values.end());
    out.pass = out.p_value > kAlpha;
    return out;
}

TestReport run_all_tests(std::span<const std::uint8_t> bits) {
    TestReport report;
    for (TestKind kind : {TestKind::Frequency, TestKind::BlockFrequency, TestKind::Runs,
                          TestKind::LongestRuns, TestKind::Serial,
                          TestKind::LinearComplexity}) {
        report.entries.push_back(run_nist_test(kind, bits));
    }
    return report;
}

std::string report_csv(const TestReport& report, std::size_t n) {
    std::string csv = "test_kind,n,params,p_value,pass\n";
    char line[160];
    for (const TestOutcome& e : report.entries) {
        std::snprintf(line, sizeof(line), "%s,%zu,%s,%.6f,%s\n", test_kind_name(e.kind), n,
                      e.params.c_str(), e.p_value, e.pass ? "true" : "false");
        csv += line;
    }
    return csv;
}

}  // namespace skg::nist
