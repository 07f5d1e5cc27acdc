#include "statsizer/errors.hpp"
#include "statsizer/full_ssta.hpp"
#include "statsizer/monte_carlo.hpp"
#include "statsizer/optimizer.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace statsizer;

std::string g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double pct(double initial, double final_v) {
    if (initial == 0.0) return 0.0;
    return (final_v - initial) / initial * 100.0;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
}

struct CommonArgs {
    std::string netlist, library, sizing;
};

struct Design {
    CellLibrary lib;
    Circuit circuit;
    Sizing sizing;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--netlist", args.netlist, "netlist path (BLIF subset)")->required();
    cmd->add_option("--library", args.library, "cell library path")->required();
    cmd->add_option("--sizing", args.sizing, "initial sizing file (default: smallest variants)");
}

Design load_design(const CommonArgs& args) {
    Design d;
    d.lib = parse_library(read_file(args.library));
    if (d.lib.deterministic())
        std::cerr << "warning: c and sigma_rand are both zero; timing is deterministic\n";
    d.circuit = parse_netlist(read_file(args.netlist), d.lib);
    d.sizing = args.sizing.empty()
                   ? smallest_sizing(d.circuit)
                   : parse_sizing(read_file(args.sizing), d.circuit, d.lib);
    return d;
}

std::string pdf_csv(const DiscretePdf& pdf) {
    std::ostringstream out;
    out << "value,prob\n";
    char buf[80];
    for (size_t i = 0; i < pdf.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", pdf.values[i], pdf.probs[i]);
        out << buf;
    }
    return out.str();
}

void run_analyze(const CommonArgs& args, int samples, const std::string& emit_pdf) {
    Design d = load_design(args);
    TimingAnnotation ann = propagate_full(d.circuit, d.sizing, d.lib, samples);
    double area = circuit_area(d.circuit, d.sizing, d.lib);
    const Moments& m = ann.circuit_moments;
    std::cout << "circuit " << d.circuit.name << ": gates=" << d.circuit.gates.size() << "\n";
    std::cout << "mu=" << g6(m.mu) << " sigma=" << g6(m.sigma())
              << " sigma/mu=" << g6(m.mu == 0.0 ? 0.0 : m.sigma() / m.mu)
              << " area=" << g6(area) << "\n";
    if (!emit_pdf.empty()) write_file(emit_pdf, pdf_csv(ann.circuit_rv));
}

void print_report(const Design& d, const SizingResult& r, double lambda) {
    const Moments& i = r.initial_moments;
    const Moments& f = r.final_moments;
    std::cout << "circuit " << d.circuit.name << ": gates=" << d.circuit.gates.size()
              << " lambda=" << g6(lambda) << "\n";
    std::cout << "initial: mu=" << g6(i.mu) << " sigma=" << g6(i.sigma())
              << " sigma/mu=" << g6(i.mu == 0.0 ? 0.0 : i.sigma() / i.mu)
              << " area=" << g6(r.initial_area) << "\n";
    std::cout << "final:   mu=" << g6(f.mu) << " sigma=" << g6(f.sigma())
              << " sigma/mu=" << g6(f.mu == 0.0 ? 0.0 : f.sigma() / f.mu)
              << " area=" << g6(r.final_area) << "\n";
    std::cout << "delta:   mu=" << g6(pct(i.mu, f.mu)) << "% sigma="
              << g6(pct(i.sigma(), f.sigma())) << "% area="
              << g6(pct(r.initial_area, r.final_area)) << "%\n";
    std::cout << "iters=" << r.trace.size() - 1 << " wall=" << g6(r.trace.back().wall_s)
              << "s reason=" << r.termination_reason << "\n";
}

void run_optimize(const CommonArgs& args, OptimizerConfig cfg, const std::string& out_sizing,
                  const std::string& trace_path, const std::string& sweep) {
    Design d = load_design(args);
    const Sizing* initial = args.sizing.empty() ? nullptr : &d.sizing;

    if (!sweep.empty()) {
        if (!out_sizing.empty() || !trace_path.empty())
            throw ValidationError("--lambda-sweep cannot be combined with --out-sizing or --trace-csv");
        std::vector<double> lambdas;
        std::stringstream ss(sweep);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                size_t pos = 0;
                double v = std::stod(tok, &pos);
                if (pos != tok.size() || v < 0.0) throw std::invalid_argument(tok);
                lambdas.push_back(v);
            } catch (const std::exception&) {
                throw ValidationError("bad lambda value '" + tok + "' in sweep");
            }
        }
        if (lambdas.empty()) throw ValidationError("empty lambda sweep");
        std::cout << "lambda,mu,sigma,area\n";
        for (double l : lambdas) {
            cfg.lambda = l;
            SizingResult r = statistical_greedy(d.circuit, d.lib, cfg, initial);
            std::cout << g6(l) << "," << g6(r.final_moments.mu) << ","
                      << g6(r.final_moments.sigma()) << "," << g6(r.final_area) << "\n";
        }
        return;
    }

    SizingResult r = statistical_greedy(d.circuit, d.lib, cfg, initial);
    if (!out_sizing.empty())
        write_file(out_sizing, write_sizing(d.circuit, d.lib, r.final_sizing));
    if (!trace_path.empty()) write_file(trace_path, trace_csv(r));
    print_report(d, r, cfg.lambda);
}

void run_mc(const CommonArgs& args, long long trials, std::uint64_t seed, bool compare,
            int samples, bool truncate, const std::string& dump_path) {
    Design d = load_design(args);
    bool keep = !dump_path.empty();
    McResult r = monte_carlo(d.circuit, d.sizing, d.lib, trials, seed, keep, truncate);
    std::cout << "trials=" << r.trials << " mean=" << g6(r.mean) << " std=" << g6(r.std)
              << " q01=" << g6(r.q01) << " q50=" << g6(r.q50) << " q99=" << g6(r.q99)
              << "\n";
    if (compare) {
        TimingAnnotation ann = propagate_full(d.circuit, d.sizing, d.lib, samples);
        const Moments& m = ann.circuit_moments;
        std::cout << "fullssta mean=" << g6(m.mu) << " std=" << g6(m.sigma())
                  << " dmean=" << g6(pct(r.mean, m.mu)) << "%"
                  << " dstd=" << g6(pct(r.std, m.sigma())) << "%\n";
    }
    if (keep) {
        std::ostringstream out;
        char buf[40];
        for (double s : r.samples) {
            std::snprintf(buf, sizeof(buf), "%.17g\n", s);
            out << buf;
        }
        write_file(dump_path, out.str());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistically aware gate sizing: SSTA, WNSS tracing, greedy optimization"};
    app.require_subcommand(1);

    CommonArgs a_args, o_args, m_args;
    int a_samples = 13;
    std::string a_emit_pdf;
    CLI::App* analyze = app.add_subcommand("analyze", "propagate arrival pdfs and report moments");
    add_common(analyze, a_args);
    analyze->add_option("--samples", a_samples, "pdf sample cap")->check(CLI::Range(3, 64));
    analyze->add_option("--emit-pdf", a_emit_pdf, "write the output-delay pdf as CSV");

    OptimizerConfig cfg;
    std::string o_out_sizing, o_trace, o_sweep;
    CLI::App* optimize = app.add_subcommand("optimize", "greedy statistical gate sizing");
    add_common(optimize, o_args);
    optimize->add_option("--lambda", cfg.lambda, "sigma weight in the cost")
        ->check(CLI::NonNegativeNumber);
    optimize->add_option("--depth", cfg.depth, "subcircuit fanin/fanout levels")
        ->check(CLI::Range(0, 1000));
    optimize->add_option("--samples", cfg.samples, "pdf sample cap")->check(CLI::Range(3, 64));
    optimize->add_option("--max-iters", cfg.max_outer_iters, "outer iteration cap")
        ->check(CLI::PositiveNumber);
    optimize->add_option("--h-frac", cfg.h_frac, "sensitivity step fraction")
        ->check(CLI::PositiveNumber);
    optimize->add_option("--epsilon-improve", cfg.epsilon_improve, "improvement threshold")
        ->check(CLI::NonNegativeNumber);
    optimize->add_option("--out-sizing", o_out_sizing, "write the final sizing here");
    optimize->add_option("--trace-csv", o_trace, "write the iteration trace here");
    optimize->add_option("--lambda-sweep", o_sweep,
                         "comma-separated lambda list; emits one CSV row per value");

    long long trials = 100000;
    std::uint64_t seed = 1;
    bool compare = false, truncate = false;
    int m_samples = 13;
    std::string dump_path;
    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo oracle");
    add_common(mc, m_args);
    mc->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
    mc->add_option("--seed", seed, "random seed");
    mc->add_flag("--compare", compare, "also run the pdf engine and print deltas");
    mc->add_option("--samples", m_samples, "pdf sample cap for --compare")
        ->check(CLI::Range(3, 64));
    mc->add_flag("--truncate-at-zero", truncate, "clamp sampled delays at zero");
    mc->add_option("--dump-samples", dump_path, "write one sample per line here");

    analyze->callback([&] { run_analyze(a_args, a_samples, a_emit_pdf); });
    optimize->callback([&] { run_optimize(o_args, cfg, o_out_sizing, o_trace, o_sweep); });
    mc->callback([&] { run_mc(m_args, trials, seed, compare, m_samples, truncate, dump_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const statsizer::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const statsizer::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
