#pragma once

#include "statsizer/circuit.hpp"
#include "statsizer/full_ssta.hpp"

#include <string>
#include <utility>
#include <vector>

namespace statsizer {

// Input-to-output path: nets[0] is a primary input, nets.back() a primary
// output, gates[i] connects nets[i] to nets[i+1].
struct WnssPath {
    std::vector<std::string> nets;
    std::vector<int> gates;
};

// Forward finite differences of the clark_max variance when one operand's mean
// moves by h and its sigma by c*h (the proportional-variation coupling).
std::pair<double, double> var_sensitivities(const Moments& a, const Moments& b,
                                            double h, double c);

// Pairwise tournament: clear dominance (|alpha| >= 2.6) picks the higher mean,
// otherwise the larger variance sensitivity; ties keep the earlier pin.
// Returns the winning index.
int dominant_input(const std::vector<Moments>& inputs, double h, double c);

// Backward walk from the primary output with maximal mu + lambda*sigma,
// choosing dominant_input at each gate with h = h_frac * local mean arrival.
WnssPath trace_wnss(const Circuit& circuit, const TimingAnnotation& ann, double lambda,
                    double h_frac, double c);

// One "gate-id (mu, sigma)" line per traversed gate, input side first.
std::string dump_path(const Circuit& circuit, const TimingAnnotation& ann,
                      const WnssPath& path);

} // namespace statsizer
