#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "skg/keys.hpp"

namespace skg::nist {

enum class TestKind {
    Frequency,
    BlockFrequency,
    Runs,
    LongestRuns,
    Serial,
    LinearComplexity,
};

/// A sequence passes a test when its p-value exceeds 0.01. Serial produces
/// two p-values; the reported p_value is their minimum.
struct TestOutcome {
    TestKind kind = TestKind::Frequency;
    double p_value = 0.0;
    std::vector<double> p_values;
    bool pass = false;
    std::string params;   // block/pattern parameters, e.g. "M=128" or "m=3"
    std::string warning;  // non-empty when the sequence is shorter than recommended
};

struct TestReport {
    std::vector<TestOutcome> entries;
};

const char* test_kind_name(TestKind kind);

// Raw statistics without length guards (used for short reference vectors).
double frequency_p_value(std::span<const std::uint8_t> bits);
double block_frequency_p_value(std::span<const std::uint8_t> bits, int block_len);
double runs_p_value(std::span<const std::uint8_t> bits);
double longest_runs_p_value(std::span<const std::uint8_t> bits);
std::pair<double, double> serial_p_values(std::span<const std::uint8_t> bits, int pattern_len);
double linear_complexity_p_value(std::span<const std::uint8_t> bits, int block_len);

/// Length of the shortest LFSR over GF(2) generating the sequence.
std::size_t berlekamp_massey(std::span<const std::uint8_t> bits);

/// Runs one test with the standard minimum-length guards. block_len = 0
/// selects the defaults (BlockFrequency M=128, Serial m=3, LinearComplexity
/// M=500); LongestRuns picks its block size from the sequence length.
/// Throws std::invalid_argument naming the minimum when the sequence is too
/// short.
TestOutcome run_nist_test(TestKind kind, std::span<const std::uint8_t> bits,
                          int block_len = 0);
inline TestOutcome run_nist_test(TestKind kind, const BitSequence& seq, int block_len = 0) {
    return run_nist_test(kind, std::span<const std::uint8_t>(seq.bits), block_len);
}

/// All six tests, Frequency first.
TestReport run_all_tests(std::span<const std::uint8_t> bits);
inline TestReport run_all_tests(const BitSequence& seq) {
    return run_all_tests(std::span<const std::uint8_t>(seq.bits));
}

/// CSV rows: test_kind,n,params,p_value,pass
std::string report_csv(const TestReport& report, std::size_t n);

}  // namespace skg::nist
