#pragma once

#include "statsizer/library.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace statsizer {

// Gate ids equal their output net name (unique because nets are single-driver).
struct Gate {
    std::string id;
    std::string cell_type;
    std::vector<std::string> input_nets; // aligned with CellType::input_pins
    std::string output_net;
};

struct Net {
    int driver = -1;                        // gate index; -1 means primary input
    std::vector<std::pair<int, int>> sinks; // (gate index, input pin index)
    bool is_output = false;
};

struct Circuit {
    std::string name;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<Gate> gates;
    std::map<std::string, Net> nets;
};

// Per-gate variant index, aligned with Circuit::gates.
struct Sizing {
    std::vector<int> variant;

    bool operator==(const Sizing&) const = default;
};

struct Subcircuit {
    int center = -1;
    std::vector<int> members;             // gate indices in topological order
    std::vector<std::string> boundary_inputs;
    std::vector<std::string> local_outputs;
    std::vector<int> load_sinks;          // non-member gates loading member nets
};

// BLIF-subset parser; cell types resolved against lib. Throws ParseError on
// malformed text and ValidationError on graph violations (unknown cell or pin,
// multiply-driven net, undriven input or output, combinational cycle).
Circuit parse_netlist(const std::string& text, const CellLibrary& lib);

std::string write_netlist(const Circuit& circuit, const CellLibrary& lib);

// Kahn's algorithm; ties broken by gate declaration order.
std::vector<int> topo_order(const Circuit& circuit);

const CellType& gate_cell(const Circuit& circuit, const CellLibrary& lib, int gate);

const CellVariant& gate_variant(const Circuit& circuit, const CellLibrary& lib,
                                const Sizing& sizing, int gate);

double net_load(const Circuit& circuit, const std::string& net, const Sizing& sizing,
                const CellLibrary& lib);

double circuit_area(const Circuit& circuit, const Sizing& sizing, const CellLibrary& lib);

Sizing smallest_sizing(const Circuit& circuit);

// Sizing files: one "gate-id variant-name" line per gate.
Sizing parse_sizing(const std::string& text, const Circuit& circuit, const CellLibrary& lib);

std::string write_sizing(const Circuit& circuit, const CellLibrary& lib, const Sizing& sizing);

// Members reachable within `depth` fanin/fanout levels of center, plus load-only
// sinks one step past member-driven nets (capacitance counts, delay untouched).
Subcircuit extract_subcircuit(const Circuit& circuit, int center, int depth);

} // namespace statsizer
