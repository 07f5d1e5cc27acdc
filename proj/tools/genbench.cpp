// Regenerates the bundled synthetic benchmark suite. The committed files under
// benchmarks/ were produced by this tool; rerunning with the same flags
// reproduces them byte for byte.

#include "support/synthetic.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"generate the bundled benchmark circuits"};
    std::string out_dir = "benchmarks";
    int count = 5;
    unsigned long long base_seed = 9000;
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--count", count, "number of circuits")->check(CLI::PositiveNumber);
    app.add_option("--seed", base_seed, "base seed");
    CLI11_PARSE(app, argc, argv);

    std::filesystem::create_directories(out_dir);
    {
        std::ofstream lib(out_dir + "/cells.lib", std::ios::binary);
        if (!lib) {
            std::cerr << "cannot write " << out_dir << "/cells.lib\n";
            return 1;
        }
        lib << synth::benchmark_library();
    }

    for (int i = 0; i < count; ++i) {
        int n_gates = 120 + (160 * i) / (count > 1 ? count - 1 : 1);
        int n_pi = 14 + i;
        synth::Rng rng(base_seed + i);
        synth::DagTopology topo = synth::spine_dag(rng, n_gates, n_pi);
        char name[32];
        std::snprintf(name, sizeof(name), "bench%02d", i + 1);
        std::string path = out_dir + "/" + name + ".blif";
        std::ofstream net(path, std::ios::binary);
        if (!net) {
            std::cerr << "cannot write " << path << "\n";
            return 1;
        }
        net << synth::benchmark_netlist(topo, name);
        std::cout << name << ": " << n_gates << " gates, " << topo.n_pi << " inputs, "
                  << topo.pos.size() << " outputs\n";
    }
    return 0;
}
