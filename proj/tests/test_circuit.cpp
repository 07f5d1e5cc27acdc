#include "statsizer/circuit.hpp"
#include "statsizer/errors.hpp"

#include <doctest.h>

#include <algorithm>

using namespace statsizer;

namespace {

const char* kLib = R"(param c 0.1
param sigma_rand 0.5
param out_load 0.5
cell INV inputs A output Y
variant X1 area 1 cap 1 d0 10 d1 2
variant X2 area 2 cap 2 d0 8 d1 1
cell NAND2 inputs A B output Y
variant X1 area 1.5 cap 1 d0 12 d1 3
variant X2 area 3 cap 2 d0 9 d1 1.5
)";

CellLibrary lib() { return parse_library(kLib); }

const char* kChain = R"(.model chain
.inputs a
.outputs c
.gate INV A=a Y=b
.gate INV A=b Y=c
.end
)";

} // namespace

TEST_CASE("netlist parses a two-gate chain") {
    CellLibrary l = lib();
    Circuit c = parse_netlist(kChain, l);
    CHECK(c.name == "chain");
    REQUIRE(c.gates.size() == 2);
    CHECK(c.gates[0].id == "b");
    CHECK(c.gates[1].id == "c");
    CHECK(c.nets.at("a").driver == -1);
    CHECK(c.nets.at("b").driver == 0);
    CHECK(c.nets.at("c").is_output);
    CHECK(topo_order(c) == std::vector<int>{0, 1});
}

TEST_CASE("continuation lines and comments are handled") {
    CellLibrary l = lib();
    Circuit c = parse_netlist(".model x # trailing comment\n"
                              ".inputs a \\\n  b\n"
                              ".outputs y\n"
                              ".gate NAND2 A=a \\\n   B=b Y=y\n"
                              ".end\n",
                              l);
    REQUIRE(c.gates.size() == 1);
    CHECK(c.inputs == std::vector<std::string>{"a", "b"});
    CHECK(c.gates[0].input_nets == std::vector<std::string>{"a", "b"});
}

TEST_CASE("netlist graph violations are rejected") {
    CellLibrary l = lib();
    CHECK_THROWS_AS(parse_netlist(".inputs a\n.outputs y\n"
                                  ".gate BUF A=a Y=y\n.end\n", l),
                    ValidationError); // unknown cell
    CHECK_THROWS_AS(parse_netlist(".inputs a\n.outputs y\n"
                                  ".gate INV Q=a Y=y\n.end\n", l),
                    ValidationError); // unknown pin
    CHECK_THROWS_AS(parse_netlist(".inputs a b\n.outputs y\n"
                                  ".gate INV A=a Y=y\n.gate INV A=b Y=y\n.end\n", l),
                    ValidationError); // multiply-driven
    CHECK_THROWS_AS(parse_netlist(".inputs a\n.outputs y\n"
                                  ".gate NAND2 A=a B=q Y=p\n.gate NAND2 A=a B=p Y=q\n"
                                  ".gate INV A=p Y=y\n.end\n", l),
                    ValidationError); // combinational cycle
    CHECK_THROWS_AS(parse_netlist(".inputs a\n.outputs y\n"
                                  ".gate INV A=q Y=y\n.end\n", l),
                    ValidationError); // undriven gate input
    CHECK_THROWS_AS(parse_netlist(".inputs a\n.outputs y\n.end\n", l),
                    ValidationError); // undriven primary output
    CHECK_THROWS_AS(parse_netlist(".inputs a\n.outputs y\n"
                                  ".gate INV A=a Y=y\n.gate INV A=a Y=y\n.end\n", l),
                    ValidationError); // duplicate .gate line
    CHECK_THROWS_AS(parse_netlist(".inputs a\n.outputs y\n"
                                  ".gate INV A=a\n.end\n", l),
                    ValidationError); // unbound output pin
}

TEST_CASE("netlist syntax errors are parse errors") {
    CellLibrary l = lib();
    CHECK_THROWS_AS(parse_netlist(".inputs a\n.outputs y\n"
                                  ".gate INV Aa Y=y\n.end\n", l),
                    ParseError);
    CHECK_THROWS_AS(parse_netlist(".wibble\n", l), ParseError);
}

TEST_CASE("topo order breaks ties by declaration and respects edges") {
    CellLibrary l = lib();
    Circuit c = parse_netlist(".model two\n.inputs a b\n.outputs x y\n"
                              ".gate INV A=a Y=x\n.gate INV A=b Y=y\n.end\n", l);
    CHECK(topo_order(c) == std::vector<int>{0, 1});

    // Diamond declared out of order: merge gate first.
    Circuit d = parse_netlist(".model diamond\n.inputs a\n.outputs y\n"
                              ".gate NAND2 A=p B=q Y=y\n"
                              ".gate INV A=a Y=p\n"
                              ".gate INV A=a Y=q\n.end\n", l);
    auto ord = topo_order(d);
    REQUIRE(ord.size() == 3);
    CHECK(ord.back() == 0); // merge gate last
    CHECK(ord[0] == 1);     // declaration-order tie-break among sources
    CHECK(ord[1] == 2);
}

TEST_CASE("net load and circuit area") {
    CellLibrary l = lib();
    Circuit c = parse_netlist(".model f\n.inputs a\n.outputs y z\n"
                              ".gate INV A=a Y=n\n"
                              ".gate INV A=n Y=y\n"
                              ".gate NAND2 A=n B=a Y=z\n.end\n", l);
    Sizing s = smallest_sizing(c);
    CHECK(net_load(c, "n", s, l) == doctest::Approx(2.0));   // two X1 pins
    CHECK(net_load(c, "y", s, l) == doctest::Approx(0.5));   // out_load only
    CHECK(circuit_area(c, s, l) == doctest::Approx(1 + 1 + 1.5));

    Sizing up = s;
    up.variant[1] = 1; // INV X2: cap 2
    CHECK(net_load(c, "n", up, l) == doctest::Approx(3.0));
    CHECK(circuit_area(c, up, l) == doctest::Approx(2 + 1 + 1.5));
}

TEST_CASE("sizing file round-trip and validation") {
    CellLibrary l = lib();
    Circuit c = parse_netlist(kChain, l);
    Sizing s{{1, 0}};
    std::string text = write_sizing(c, l, s);
    CHECK(text == "b X2\nc X1\n");
    CHECK(parse_sizing(text, c, l) == s);

    CHECK_THROWS_AS(parse_sizing("b X2\n", c, l), ValidationError);       // missing gate
    CHECK_THROWS_AS(parse_sizing("b X9\nc X1\n", c, l), ValidationError); // unknown variant
    CHECK_THROWS_AS(parse_sizing("q X1\nb X1\nc X1\n", c, l), ValidationError);
    CHECK_THROWS_AS(parse_sizing("b X1\nb X2\nc X1\n", c, l), ValidationError);
    CHECK_THROWS_AS(parse_sizing("b\n", c, l), ParseError);
}

TEST_CASE("netlist round-trips through write_netlist") {
    CellLibrary l = lib();
    Circuit c = parse_netlist(".model f\n.inputs a\n.outputs y z\n"
                              ".gate INV A=a Y=n\n"
                              ".gate INV A=n Y=y\n"
                              ".gate NAND2 A=n B=a Y=z\n.end\n", l);
    Circuit again = parse_netlist(write_netlist(c, l), l);
    CHECK(again.name == c.name);
    CHECK(again.inputs == c.inputs);
    CHECK(again.outputs == c.outputs);
    REQUIRE(again.gates.size() == c.gates.size());
    for (size_t i = 0; i < c.gates.size(); ++i) {
        CHECK(again.gates[i].id == c.gates[i].id);
        CHECK(again.gates[i].cell_type == c.gates[i].cell_type);
        CHECK(again.gates[i].input_nets == c.gates[i].input_nets);
    }
}

TEST_CASE("subcircuit extraction around a chain center") {
    CellLibrary l = lib();
    Circuit c = parse_netlist(".model ch5\n.inputs a\n.outputs f\n"
                              ".gate INV A=a Y=b\n.gate INV A=b Y=c\n.gate INV A=c Y=d\n"
                              ".gate INV A=d Y=e\n.gate INV A=e Y=f\n.end\n", l);
    Subcircuit s2 = extract_subcircuit(c, 2, 2);
    CHECK(s2.members == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(s2.boundary_inputs == std::vector<std::string>{"a"});
    CHECK(s2.local_outputs == std::vector<std::string>{"f"});
    CHECK(s2.load_sinks.empty());

    Subcircuit s1 = extract_subcircuit(c, 2, 1);
    CHECK(s1.members == std::vector<int>{1, 2, 3});
    CHECK(s1.boundary_inputs == std::vector<std::string>{"b"});
    CHECK(s1.local_outputs == std::vector<std::string>{"e"});
    CHECK(s1.load_sinks == std::vector<int>{4});

    Subcircuit s0 = extract_subcircuit(c, 0, 2);
    CHECK(s0.members == std::vector<int>{0, 1, 2});
    CHECK(s0.boundary_inputs == std::vector<std::string>{"a"});

    CHECK_THROWS_AS(extract_subcircuit(c, 99, 2), ValidationError);
}

TEST_CASE("subcircuit records load-only sinks on side branches") {
    CellLibrary l = lib();
    Circuit c = parse_netlist(".model t\n.inputs a\n.outputs y z\n"
                              ".gate INV A=a Y=n\n"
                              ".gate INV A=n Y=y\n"
                              ".gate NAND2 A=n B=a Y=z\n.end\n", l);
    Subcircuit s = extract_subcircuit(c, 1, 0);
    CHECK(s.members == std::vector<int>{1});
    CHECK(s.boundary_inputs == std::vector<std::string>{"n"});
    CHECK(s.local_outputs == std::vector<std::string>{"y"});
    CHECK(s.load_sinks.empty()); // y feeds nothing

    Subcircuit s0 = extract_subcircuit(c, 0, 0);
    CHECK(s0.members == std::vector<int>{0});
    CHECK(s0.local_outputs == std::vector<std::string>{"n"});
    CHECK(s0.load_sinks == std::vector<int>{1, 2});
}
