#include "statsizer/monte_carlo.hpp"
#include "statsizer/errors.hpp"

#include <algorithm>
#include <cmath>

namespace statsizer {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double normal_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
    std::uint64_t h1 = mix64(seed ^ mix64(stream ^ mix64(trial)));
    std::uint64_t h2 = mix64(h1);
    double u1 = static_cast<double>((h1 >> 11) + 1) * 0x1.0p-53; // (0, 1]
    double u2 = static_cast<double>(h2 >> 11) * 0x1.0p-53;       // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.2831853071795864769 * u2);
}

namespace {

struct TrialPlan {
    std::vector<int> order;                      // topo order of gates
    std::vector<double> mu, sigma;               // per gate, under the sizing
    std::vector<std::uint64_t> stream;           // per gate
    std::vector<std::vector<int>> fanin_driver;  // per gate: driver index or -1
    std::vector<int> out_driver;                 // per primary output: driver or -1
};

TrialPlan make_plan(const Circuit& circuit, const Sizing& sizing, const CellLibrary& lib) {
    if (sizing.variant.size() != circuit.gates.size())
        throw ValidationError("sizing does not cover the circuit");
    TrialPlan p;
    p.order = topo_order(circuit);
    size_t n = circuit.gates.size();
    p.mu.resize(n);
    p.sigma.resize(n);
    p.stream.resize(n);
    p.fanin_driver.resize(n);
    for (size_t g = 0; g < n; ++g) {
        const Gate& gate = circuit.gates[g];
        const CellVariant& v = gate_variant(circuit, lib, sizing, static_cast<int>(g));
        double load = net_load(circuit, gate.output_net, sizing, lib);
        p.mu[g] = mean_delay(v, load);
        p.sigma[g] = sigma_gate(lib, p.mu[g]);
        p.stream[g] = fnv1a64(gate.id);
        for (const auto& net : gate.input_nets)
            p.fanin_driver[g].push_back(circuit.nets.at(net).driver);
    }
    for (const auto& net : circuit.outputs)
        p.out_driver.push_back(circuit.nets.at(net).driver);
    return p;
}

// Primary inputs arrive at exactly 0; gate arrivals may be negative when a
// sampled delay is, so folds must not clamp at zero.
double propagate_trial(const TrialPlan& p, const std::vector<double>& delay,
                       std::vector<double>& arrival) {
    for (int g : p.order) {
        double a = -HUGE_VAL;
        for (int d : p.fanin_driver[g]) a = std::max(a, d >= 0 ? arrival[d] : 0.0);
        arrival[g] = a + delay[g];
    }
    double out = -HUGE_VAL;
    for (int d : p.out_driver) out = std::max(out, d >= 0 ? arrival[d] : 0.0);
    return out;
}

} // namespace

McResult monte_carlo(const Circuit& circuit, const Sizing& sizing, const CellLibrary& lib,
                     long long trials, std::uint64_t seed, bool keep_samples,
                     bool truncate_at_zero) {
    if (trials < 1) throw ValidationError("trials must be >= 1");
    TrialPlan p = make_plan(circuit, sizing, lib);
    size_t n = circuit.gates.size();

    std::vector<double> samples(trials);
    std::vector<double> delay(n), arrival(n);
    for (long long t = 0; t < trials; ++t) {
        for (size_t g = 0; g < n; ++g) {
            double d = p.mu[g] + p.sigma[g] * normal_draw(seed, p.stream[g], t);
            if (truncate_at_zero && d < 0.0) d = 0.0;
            delay[g] = d;
        }
        samples[t] = propagate_trial(p, delay, arrival);
    }

    McResult r;
    r.trials = trials;
    double sum = 0.0;
    for (double s : samples) sum += s;
    r.mean = sum / trials;
    double ss = 0.0;
    for (double s : samples) ss += (s - r.mean) * (s - r.mean);
    r.std = trials > 1 ? std::sqrt(ss / (trials - 1)) : 0.0;

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    auto q = [&](double f) {
        return sorted[static_cast<size_t>(std::llround(f * (trials - 1)))];
    };
    r.q01 = q(0.01);
    r.q50 = q(0.50);
    r.q99 = q(0.99);
    if (keep_samples) r.samples = std::move(samples);
    return r;
}

double perturbed_variance(const Circuit& circuit, const Sizing& sizing,
                          const CellLibrary& lib, const std::vector<int>& path_gates,
                          double h, long long trials, std::uint64_t seed) {
    if (trials < 2) throw ValidationError("trials must be >= 2");
    TrialPlan p = make_plan(circuit, sizing, lib);
    size_t n = circuit.gates.size();
    std::vector<char> on_path(n, 0);
    for (int g : path_gates) {
        if (g < 0 || g >= static_cast<int>(n))
            throw ValidationError("path references unknown gate index " + std::to_string(g));
        on_path[g] = 1;
    }

    std::vector<double> base(n), pert(n), arrival(n);
    double mb = 0.0, m2b = 0.0, mp = 0.0, m2p = 0.0; // Welford accumulators
    for (long long t = 0; t < trials; ++t) {
        for (size_t g = 0; g < n; ++g) {
            double z = normal_draw(seed, p.stream[g], t);
            double d = p.mu[g] + p.sigma[g] * z;
            base[g] = d;
            pert[g] = on_path[g] ? (p.mu[g] + h) + (p.sigma[g] + lib.c * h) * z : d;
        }
        double sb = propagate_trial(p, base, arrival);
        double sp = propagate_trial(p, pert, arrival);
        double k = t + 1;
        double db = sb - mb;
        mb += db / k;
        m2b += db * (sb - mb);
        double dp = sp - mp;
        mp += dp / k;
        m2p += dp * (sp - mp);
    }
    return (m2p - m2b) / (trials - 1);
}

} // namespace statsizer
