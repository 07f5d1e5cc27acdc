#pragma once

#include "statsizer/circuit.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace statsizer {

struct McResult {
    long long trials = 0;
    double mean = 0.0;
    double std = 0.0;
    double q01 = 0.0, q50 = 0.0, q99 = 0.0;
    std::vector<double> samples; // retained when requested
};

// splitmix64 finalizer; the basis of all stateless draws.
std::uint64_t mix64(std::uint64_t x);

std::uint64_t fnv1a64(const std::string& s);

// Standard normal deviate fully determined by (seed, stream, trial); streams
// are split per gate so circuit edits do not reshuffle unrelated draws.
double normal_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

// Per trial: sample every gate delay from its normal model, propagate
// deterministic sum/max arrivals, record the max over primary outputs.
// Bit-identical results for a fixed seed.
McResult monte_carlo(const Circuit& circuit, const Sizing& sizing, const CellLibrary& lib,
                     long long trials, std::uint64_t seed, bool keep_samples = false,
                     bool truncate_at_zero = false);

// Var(output) with every path gate's mean shifted by +h and sigma by +c*h,
// minus the baseline, using common random numbers.
double perturbed_variance(const Circuit& circuit, const Sizing& sizing,
                          const CellLibrary& lib, const std::vector<int>& path_gates,
                          double h, long long trials, std::uint64_t seed);

} // namespace statsizer
