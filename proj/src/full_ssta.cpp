#include "statsizer/full_ssta.hpp"
#include "statsizer/errors.hpp"

namespace statsizer {

TimingAnnotation propagate_full(const Circuit& circuit, const Sizing& sizing,
                                const CellLibrary& lib, int samples) {
    if (sizing.variant.size() != circuit.gates.size())
        throw ValidationError("sizing does not cover the circuit");

    TimingAnnotation ann;
    for (const auto& [name, net] : circuit.nets)
        if (net.driver < 0) ann.net_pdf[name] = DiscretePdf::point(0.0);

    for (int g : topo_order(circuit)) {
        const Gate& gate = circuit.gates[g];
        DiscretePdf arr = ann.net_pdf.at(gate.input_nets[0]);
        for (size_t i = 1; i < gate.input_nets.size(); ++i)
            arr = pdf_max(arr, ann.net_pdf.at(gate.input_nets[i]), samples);

        const CellVariant& v = gate_variant(circuit, lib, sizing, g);
        double load = net_load(circuit, gate.output_net, sizing, lib);
        double mu = mean_delay(v, load);
        DiscretePdf delay = discretize_normal(mu, sigma_gate(lib, mu), samples);
        ann.net_pdf[gate.output_net] = pdf_sum(arr, delay, samples);
    }

    for (const auto& [name, pdf] : ann.net_pdf)
        ann.net_moments[name] = pdf_moments(pdf);

    if (circuit.outputs.empty()) throw ValidationError("circuit has no primary outputs");
    ann.circuit_rv = ann.net_pdf.at(circuit.outputs[0]);
    for (size_t i = 1; i < circuit.outputs.size(); ++i)
        ann.circuit_rv = pdf_max(ann.circuit_rv, ann.net_pdf.at(circuit.outputs[i]), samples);
    ann.circuit_moments = pdf_moments(ann.circuit_rv);
    return ann;
}

} // namespace statsizer
