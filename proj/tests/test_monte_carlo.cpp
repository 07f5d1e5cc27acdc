#include "statsizer/errors.hpp"
#include "statsizer/library.hpp"
#include "statsizer/monte_carlo.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace statsizer;

namespace {

Circuit single_gate(const CellLibrary& lib) {
    return parse_netlist(".model g\n.inputs a\n.outputs y\n"
                         ".gate INV A=a Y=y\n.end\n", lib);
}

const char* kLibText =
    "param c 0.1\nparam sigma_rand 0.5\nparam out_load 1\n"
    "cell INV inputs A output Y\n"
    "variant X1 area 1 cap 1 d0 2 d1 6\n";

} // namespace

TEST_CASE("normal_draw is stateless and well distributed") {
    double d = normal_draw(42, 7, 1000);
    CHECK(normal_draw(42, 7, 1000) == d);
    CHECK(normal_draw(42, 7, 1001) != d);
    CHECK(normal_draw(42, 8, 1000) != d);
    CHECK(normal_draw(43, 7, 1000) != d);

    const int n = 200000;
    double sum = 0, sq = 0;
    for (int t = 0; t < n; ++t) {
        double z = normal_draw(1, 99, (std::uint64_t)t);
        sum += z;
        sq += z * z;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::sqrt(var) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("fixed seed reproduces bit-identical results") {
    CellLibrary lib = parse_library(kLibText);
    Circuit c = single_gate(lib);
    Sizing s = smallest_sizing(c);
    McResult a = monte_carlo(c, s, lib, 20000, 5, true);
    McResult b = monte_carlo(c, s, lib, 20000, 5, true);
    CHECK(a.mean == b.mean);
    CHECK(a.std == b.std);
    CHECK(a.q01 == b.q01);
    CHECK(a.q99 == b.q99);
    REQUIRE(a.samples.size() == 20000);
    CHECK(a.samples == b.samples);

    McResult other = monte_carlo(c, s, lib, 20000, 6);
    CHECK(other.mean != a.mean);
    CHECK(other.samples.empty());
}

TEST_CASE("single gate matches its normal delay model") {
    // mu = 2 + 6*out_load = 8, sigma = sqrt(0.8^2 + 0.5^2).
    CellLibrary lib = parse_library(kLibText);
    Circuit c = single_gate(lib);
    McResult r = monte_carlo(c, smallest_sizing(c), lib, 400000, 11);
    double sig = std::sqrt(0.64 + 0.25);
    CHECK(r.trials == 400000);
    CHECK(std::abs(r.mean - 8.0) < 0.02);
    CHECK(r.std == doctest::Approx(sig).epsilon(0.02));
    CHECK(r.q01 < r.q50);
    CHECK(r.q50 < r.q99);
    CHECK(r.q50 == doctest::Approx(8.0).epsilon(0.01));
}

TEST_CASE("zero variation collapses to a deterministic arrival") {
    CellLibrary lib = parse_library(
        "param c 0\nparam sigma_rand 0\nparam out_load 1\n"
        "cell INV inputs A output Y\n"
        "variant X1 area 1 cap 1 d0 2 d1 6\n");
    Circuit c = parse_netlist(".model ch\n.inputs a\n.outputs y\n"
                              ".gate INV A=a Y=m\n.gate INV A=m Y=y\n.end\n", lib);
    McResult r = monte_carlo(c, smallest_sizing(c), lib, 1000, 3);
    CHECK(r.mean == doctest::Approx(16.0));
    CHECK(r.std == 0.0);
    CHECK(r.q01 == r.mean);
    CHECK(r.q50 == r.mean);
    CHECK(r.q99 == r.mean);
}

TEST_CASE("max of two iid standard normals matches the closed form") {
    // d0 = d1 = 0 and c = 0 make each gate delay a pure N(0,1) draw.
    CellLibrary lib = parse_library(
        "param c 0\nparam sigma_rand 1\nparam out_load 1\n"
        "cell INV inputs A output Y\n"
        "variant X1 area 1 cap 1 d0 0 d1 0\n");
    Circuit c = parse_netlist(".model two\n.inputs a\n.outputs y1 y2\n"
                              ".gate INV A=a Y=y1\n.gate INV A=a Y=y2\n.end\n", lib);
    McResult r = monte_carlo(c, smallest_sizing(c), lib, 400000, 17);
    CHECK(std::abs(r.mean - 1.0 / std::sqrt(M_PI)) < 0.006);
    CHECK(r.std == doctest::Approx(std::sqrt(1.0 - 1.0 / M_PI)).epsilon(0.01));
}

TEST_CASE("different seeds agree within sampling error") {
    CellLibrary lib = parse_library(kLibText);
    Circuit c = single_gate(lib);
    McResult a = monte_carlo(c, smallest_sizing(c), lib, 100000, 1);
    McResult b = monte_carlo(c, smallest_sizing(c), lib, 100000, 2);
    double se = a.std / std::sqrt(100000.0);
    CHECK(std::abs(a.mean - b.mean) < 6 * se);
}

TEST_CASE("truncate_at_zero clips negative arrivals") {
    CellLibrary lib = parse_library(
        "param c 0\nparam sigma_rand 1\nparam out_load 1\n"
        "cell INV inputs A output Y\n"
        "variant X1 area 1 cap 1 d0 0 d1 0\n");
    Circuit c = single_gate(lib);
    McResult r = monte_carlo(c, smallest_sizing(c), lib, 400000, 23, true, true);
    for (double v : r.samples) CHECK(v >= 0.0);
    // E[max(0, Z)] = 1/sqrt(2*pi)
    CHECK(std::abs(r.mean - 0.3989422804014327) < 0.01);
}

TEST_CASE("perturbed_variance of an empty path is exactly zero") {
    CellLibrary lib = parse_library(kLibText);
    Circuit c = single_gate(lib);
    CHECK(perturbed_variance(c, smallest_sizing(c), lib, {}, 0.1, 1000, 1) == 0.0);
}

TEST_CASE("perturbed_variance grows more along the dominant cone") {
    CellLibrary lib = parse_library(
        "param c 0.1\nparam sigma_rand 0.2\nparam out_load 1\n"
        "cell BIG inputs A output Y\nvariant X1 area 1 cap 1 d0 30 d1 0\n"
        "cell SMALL inputs A output Y\nvariant X1 area 1 cap 1 d0 5 d1 0\n");
    Circuit c = parse_netlist(".model fork\n.inputs a\n.outputs y1 y2\n"
                              ".gate BIG A=a Y=y1\n.gate SMALL A=a Y=y2\n.end\n", lib);
    Sizing s = smallest_sizing(c);
    double h = 0.3;
    double big = perturbed_variance(c, s, lib, {0}, h, 200000, 9);
    double small = perturbed_variance(c, s, lib, {1}, h, 200000, 9);
    CHECK(big > 0.0);
    CHECK(big > small);
    // BIG wins essentially always, so perturbing SMALL does nearly nothing.
    CHECK(std::abs(small) < 0.05 * big);
}

TEST_CASE("perturbing a gate outside every output cone changes nothing") {
    CellLibrary lib = parse_library(kLibText);
    // Gate d hangs off the input but drives no primary output.
    Circuit c = parse_netlist(".model dang\n.inputs a\n.outputs y\n"
                              ".gate INV A=a Y=y\n.gate INV A=a Y=d\n.end\n", lib);
    Sizing s = smallest_sizing(c);
    CHECK(perturbed_variance(c, s, lib, {1}, 0.5, 50000, 4) == 0.0);
}

TEST_CASE("perturbed_variance argument validation") {
    CellLibrary lib = parse_library(kLibText);
    Circuit c = single_gate(lib);
    Sizing s = smallest_sizing(c);
    CHECK_THROWS_AS(perturbed_variance(c, s, lib, {5}, 0.1, 1000, 1), ValidationError);
    CHECK_THROWS_AS(perturbed_variance(c, s, lib, {0}, 0.1, 1, 1), ValidationError);
}
