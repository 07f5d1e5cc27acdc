#include "statsizer/wnss.hpp"
#include "statsizer/errors.hpp"
#include "statsizer/fast_ssta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace statsizer {

std::pair<double, double> var_sensitivities(const Moments& a, const Moments& b,
                                            double h, double c) {
    if (h <= 0.0) throw ValidationError("non-positive finite-difference step");
    double f0 = clark_max(a, b).var;
    double sa_s = std::sqrt(a.var) + c * h;
    double sb_s = std::sqrt(b.var) + c * h;
    double fa = clark_max({a.mu + h, sa_s * sa_s}, b).var;
    double fb = clark_max(a, {b.mu + h, sb_s * sb_s}).var;
    return {(fa - f0) / h, (fb - f0) / h};
}

int dominant_input(const std::vector<Moments>& inputs, double h, double c) {
    if (inputs.empty()) throw ValidationError("dominant_input on empty input list");
    int champ = 0;
    for (int i = 1; i < static_cast<int>(inputs.size()); ++i) {
        const Moments& a = inputs[champ];
        const Moments& b = inputs[i];
        double spread2 = a.var + b.var;
        if (spread2 == 0.0) {
            if (b.mu > a.mu) champ = i;
            continue;
        }
        double alpha = (a.mu - b.mu) / std::sqrt(spread2);
        if (std::abs(alpha) >= 2.6) {
            if (b.mu > a.mu) champ = i;
        } else {
            auto [sa, sb] = var_sensitivities(a, b, h, c);
            if (sb > sa) champ = i;
        }
    }
    return champ;
}

WnssPath trace_wnss(const Circuit& circuit, const TimingAnnotation& ann, double lambda,
                    double h_frac, double c) {
    if (circuit.outputs.empty()) throw ValidationError("circuit has no primary outputs");

    const std::string* start = nullptr;
    double best = 0.0;
    for (const auto& net : circuit.outputs) {
        const Moments& m = ann.net_moments.at(net);
        double cval = m.mu + lambda * m.sigma();
        if (!start || cval > best) {
            start = &net;
            best = cval;
        }
    }

    WnssPath path;
    std::string cur = *start;
    path.nets.push_back(cur);
    while (true) {
        int g = circuit.nets.at(cur).driver;
        if (g < 0) break;
        const Gate& gate = circuit.gates[g];
        path.gates.push_back(g);
        double h = std::max(1e-6, h_frac * ann.net_moments.at(cur).mu);
        std::vector<Moments> ins;
        ins.reserve(gate.input_nets.size());
        for (const auto& net : gate.input_nets) ins.push_back(ann.net_moments.at(net));
        cur = gate.input_nets[dominant_input(ins, h, c)];
        path.nets.push_back(cur);
    }
    std::reverse(path.nets.begin(), path.nets.end());
    std::reverse(path.gates.begin(), path.gates.end());
    return path;
}

std::string dump_path(const Circuit& circuit, const TimingAnnotation& ann,
                      const WnssPath& path) {
    std::ostringstream out;
    char buf[80];
    for (int g : path.gates) {
        const Moments& m = ann.net_moments.at(circuit.gates[g].output_net);
        std::snprintf(buf, sizeof(buf), "%s (%.6g, %.6g)", circuit.gates[g].id.c_str(),
                      m.mu, m.sigma());
        out << buf << "\n";
    }
    return out.str();
}

} // namespace statsizer
