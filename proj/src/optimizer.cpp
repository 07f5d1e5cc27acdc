#include "statsizer/optimizer.hpp"
#include "statsizer/errors.hpp"
#include "statsizer/fast_ssta.hpp"
#include "statsizer/wnss.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace statsizer {

double cost(const Moments& m, double lambda) {
    return m.mu + lambda * m.sigma();
}

double subcircuit_cost(const std::map<std::string, Moments>& outputs, double lambda) {
    if (outputs.empty()) throw ValidationError("subcircuit cost over empty output map");
    double best = -1e300;
    for (const auto& [net, m] : outputs) best = std::max(best, cost(m, lambda));
    return best;
}

void validate_config(const OptimizerConfig& cfg) {
    if (cfg.lambda < 0.0) throw ValidationError("lambda must be >= 0");
    if (cfg.depth < 0) throw ValidationError("depth must be >= 0");
    if (cfg.samples < 3 || cfg.samples > 64)
        throw ValidationError("samples must be in [3, 64]");
    if (cfg.h_frac <= 0.0) throw ValidationError("h_frac must be > 0");
    if (cfg.max_outer_iters < 1) throw ValidationError("max_outer_iters must be >= 1");
    if (cfg.epsilon_improve < 0.0) throw ValidationError("epsilon_improve must be >= 0");
}

std::optional<int> evaluate_gate(const Circuit& circuit, int gate, const Sizing& sizing,
                                 const TimingAnnotation& ann, const CellLibrary& lib,
                                 const OptimizerConfig& cfg) {
    Subcircuit sub = extract_subcircuit(circuit, gate, cfg.depth);
    std::map<std::string, Moments> boundary;
    for (const auto& net : sub.boundary_inputs) boundary[net] = ann.net_moments.at(net);

    int current = sizing.variant[gate];
    double best_cost = subcircuit_cost(propagate_fast(circuit, sub, boundary, sizing, lib),
                                       cfg.lambda);
    int best = current;
    int nvariants = static_cast<int>(gate_cell(circuit, lib, gate).variants.size());
    Sizing candidate = sizing;
    for (int i = 0; i < nvariants; ++i) {
        if (i == current) continue;
        candidate.variant[gate] = i;
        double c = subcircuit_cost(propagate_fast(circuit, sub, boundary, candidate, lib),
                                   cfg.lambda);
        if (c < best_cost) {
            best_cost = c;
            best = i;
        }
    }
    if (best > current) return best;
    return std::nullopt;
}

SizingResult statistical_greedy(const Circuit& circuit, const CellLibrary& lib,
                                const OptimizerConfig& cfg, const Sizing* initial) {
    validate_config(cfg);
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    Sizing sizing = initial ? *initial : smallest_sizing(circuit);
    if (sizing.variant.size() != circuit.gates.size())
        throw ValidationError("initial sizing does not cover the circuit");

    TimingAnnotation ann = propagate_full(circuit, sizing, lib, cfg.samples);
    double area = circuit_area(circuit, sizing, lib);
    double obj = cost(ann.circuit_moments, cfg.lambda);

    SizingResult res;
    res.initial_moments = ann.circuit_moments;
    res.initial_area = area;
    res.final_sizing = sizing;
    res.final_moments = ann.circuit_moments;
    res.final_area = area;
    res.trace.push_back({0, ann.circuit_moments.mu, ann.circuit_moments.sigma(),
                         area, 0, elapsed()});
    res.termination_reason = "max-iters";

    double best_obj = obj;
    for (int iter = 1; iter <= cfg.max_outer_iters; ++iter) {
        WnssPath path = trace_wnss(circuit, ann, cfg.lambda, cfg.h_frac, lib.c);
        std::vector<std::pair<int, int>> scheduled;
        for (int g : path.gates)
            if (auto v = evaluate_gate(circuit, g, sizing, ann, lib, cfg))
                scheduled.emplace_back(g, *v);

        if (scheduled.empty()) {
            res.termination_reason = "no-resizes";
            break;
        }
        for (const auto& [g, v] : scheduled) sizing.variant[g] = v;

        ann = propagate_full(circuit, sizing, lib, cfg.samples);
        area = circuit_area(circuit, sizing, lib);
        obj = cost(ann.circuit_moments, cfg.lambda);
        res.trace.push_back({iter, ann.circuit_moments.mu, ann.circuit_moments.sigma(),
                             area, static_cast<int>(scheduled.size()), elapsed()});

        double improvement = best_obj - obj;
        if (obj < best_obj) {
            best_obj = obj;
            res.final_sizing = sizing;
            res.final_moments = ann.circuit_moments;
            res.final_area = area;
        }
        if (improvement < cfg.epsilon_improve) {
            res.termination_reason = "no-improvement";
            break;
        }
    }
    return res;
}

std::string trace_csv(const SizingResult& result) {
    std::ostringstream out;
    out << "iter,mu,sigma,area,resizes\n";
    char buf[128];
    for (const auto& r : result.trace) {
        std::snprintf(buf, sizeof(buf), "%d,%.6g,%.6g,%.6g,%d\n", r.iter, r.mu, r.sigma,
                      r.area, r.resizes);
        out << buf;
    }
    return out.str();
}

} // namespace statsizer
