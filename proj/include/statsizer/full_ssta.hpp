#pragma once

#include "statsizer/circuit.hpp"
#include "statsizer/discrete_pdf.hpp"

#include <map>

namespace statsizer {

struct TimingAnnotation {
    std::map<std::string, DiscretePdf> net_pdf;
    std::map<std::string, Moments> net_moments;
    DiscretePdf circuit_rv;
    Moments circuit_moments;
};

// Discrete-pdf arrival propagation in topological order. Primary inputs arrive
// at 0; each gate output is max over input arrivals convolved with the gate's
// discretized delay; circuit_rv is the max over primary-output arrivals.
TimingAnnotation propagate_full(const Circuit& circuit, const Sizing& sizing,
                                const CellLibrary& lib, int samples = 13);

} // namespace statsizer
