#pragma once

#include "statsizer/circuit.hpp"
#include "statsizer/full_ssta.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace statsizer {

struct OptimizerConfig {
    double lambda = 3.0;         // weight in cost = mu + lambda * sigma
    int depth = 2;               // subcircuit fanin/fanout levels
    int samples = 13;            // pdf sample cap
    double h_frac = 0.01;        // sensitivity step as fraction of local mean
    int max_outer_iters = 100;
    double epsilon_improve = 1e-6;
    unsigned long long seed = 0; // reserved for randomized tie-breaking
};

struct IterationRecord {
    int iter = 0;
    double mu = 0.0;
    double sigma = 0.0;
    double area = 0.0;
    int resizes = 0;
    double wall_s = 0.0;
};

struct SizingResult {
    Sizing final_sizing;
    Moments initial_moments, final_moments;
    double initial_area = 0.0, final_area = 0.0;
    std::vector<IterationRecord> trace;
    std::string termination_reason; // no-improvement | no-resizes | max-iters
};

double cost(const Moments& m, double lambda);

double subcircuit_cost(const std::map<std::string, Moments>& outputs, double lambda);

void validate_config(const OptimizerConfig& cfg);

// Evaluates every variant of one gate on its depth-bounded subcircuit with the
// fast engine; returns the best strictly improving variant if it is an upsize.
std::optional<int> evaluate_gate(const Circuit& circuit, int gate, const Sizing& sizing,
                                 const TimingAnnotation& ann, const CellLibrary& lib,
                                 const OptimizerConfig& cfg);

// Greedy loop: full propagation, WNSS trace, per-gate candidate evaluation on
// the frozen annotation, batch resize, repeat. Returns the best-seen sizing.
SizingResult statistical_greedy(const Circuit& circuit, const CellLibrary& lib,
                                const OptimizerConfig& cfg,
                                const Sizing* initial = nullptr);

// CSV with header "iter,mu,sigma,area,resizes".
std::string trace_csv(const SizingResult& result);

} // namespace statsizer
