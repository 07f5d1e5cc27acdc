#pragma once

#include "statsizer/circuit.hpp"
#include "statsizer/moments.hpp"

#include <cstdint>
#include <map>

namespace statsizer {

// Quadratic approximation of the standard normal CDF, accurate to two decimal
// places; exact 0/0.5/1 at -2.6/0/2.6 and odd-symmetric about 0.
double phi_approx(double x);

// Exact standard normal density.
double gauss_density(double x);

struct ClarkStats {
    std::uint64_t calls = 0;
    std::uint64_t shortcut_hits = 0;
};

// Thread-local shortcut-hit counters for clark_max (diagnostic only).
ClarkStats& clark_stats();

// First two moments of max(A, B) for independent normals. When the normalized
// mean gap |alpha| >= 2.6 the dominant operand is returned unchanged.
Moments clark_max(const Moments& a, const Moments& b);

// Moment propagation over a subcircuit: clark_max fold over input arrivals,
// then normal_sum with the gate delay moments under the candidate sizing.
// Loads include sinks outside the subcircuit. Returns local-output moments.
std::map<std::string, Moments> propagate_fast(const Circuit& circuit, const Subcircuit& sub,
                                              const std::map<std::string, Moments>& boundary,
                                              const Sizing& sizing, const CellLibrary& lib);

// Subcircuit view covering every gate, for whole-circuit fast propagation.
Subcircuit whole_subcircuit(const Circuit& circuit);

} // namespace statsizer
