#include "statsizer/fast_ssta.hpp"
#include "statsizer/errors.hpp"

#include <cmath>

namespace statsizer {

double phi_approx(double x) {
    if (x < 0.0) return 1.0 - phi_approx(-x);
    if (x >= 2.6) return 1.0;
    if (x > 2.2) return 0.99;
    return 0.5 + 0.1 * x * (4.4 - x);
}

double gauss_density(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

ClarkStats& clark_stats() {
    thread_local ClarkStats stats;
    return stats;
}

Moments clark_max(const Moments& a, const Moments& b) {
    ClarkStats& st = clark_stats();
    ++st.calls;

    double spread2 = a.var + b.var;
    if (spread2 == 0.0) {
        ++st.shortcut_hits;
        return {a.mu > b.mu ? a.mu : b.mu, 0.0};
    }
    // Canonical operand order makes the result bit-exact under argument swap.
    const Moments& hi = (a.mu > b.mu || (a.mu == b.mu && a.var >= b.var)) ? a : b;
    const Moments& lo = (&hi == &a) ? b : a;

    double spread = std::sqrt(spread2);
    double alpha = (hi.mu - lo.mu) / spread;
    if (alpha >= 2.6) {
        ++st.shortcut_hits;
        return hi;
    }
    double pa = phi_approx(alpha);
    double pb = 1.0 - pa;
    double d = spread * gauss_density(alpha);
    double v1 = hi.mu * pa + lo.mu * pb + d;
    double v2 = (hi.mu * hi.mu + hi.var) * pa + (lo.mu * lo.mu + lo.var) * pb +
                (hi.mu + lo.mu) * d;
    double var = v2 - v1 * v1;
    return {v1, var > 0.0 ? var : 0.0};
}

std::map<std::string, Moments> propagate_fast(const Circuit& circuit, const Subcircuit& sub,
                                              const std::map<std::string, Moments>& boundary,
                                              const Sizing& sizing, const CellLibrary& lib) {
    std::map<std::string, Moments> arr = boundary;
    for (int g : sub.members) {
        const Gate& gate = circuit.gates[g];
        auto it = arr.find(gate.input_nets[0]);
        if (it == arr.end())
            throw ValidationError("missing boundary moment for net " + gate.input_nets[0]);
        Moments m = it->second;
        for (size_t i = 1; i < gate.input_nets.size(); ++i) {
            it = arr.find(gate.input_nets[i]);
            if (it == arr.end())
                throw ValidationError("missing boundary moment for net " + gate.input_nets[i]);
            m = clark_max(m, it->second);
        }
        const CellVariant& v = gate_variant(circuit, lib, sizing, g);
        double load = net_load(circuit, gate.output_net, sizing, lib);
        double mu = mean_delay(v, load);
        double sd = sigma_gate(lib, mu);
        arr[gate.output_net] = normal_sum(m, {mu, sd * sd});
    }

    std::map<std::string, Moments> out;
    for (const auto& net : sub.local_outputs) out[net] = arr.at(net);
    return out;
}

Subcircuit whole_subcircuit(const Circuit& circuit) {
    Subcircuit sub;
    sub.members = topo_order(circuit);
    if (!sub.members.empty()) sub.center = sub.members.front();
    for (const auto& [name, net] : circuit.nets)
        if (net.driver < 0) sub.boundary_inputs.push_back(name);
    for (const auto& [name, net] : circuit.nets)
        if (net.driver >= 0 && net.is_output) sub.local_outputs.push_back(name);
    return sub;
}

} // namespace statsizer
