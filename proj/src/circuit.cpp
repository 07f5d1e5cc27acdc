#include "statsizer/circuit.hpp"
#include "statsizer/errors.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>

namespace statsizer {

namespace {

// Strips comments, joins '\' continuations; returns (first line number, tokens).
std::vector<std::pair<int, std::vector<std::string>>> logical_lines(const std::string& text) {
    std::vector<std::pair<int, std::vector<std::string>>> out;
    std::istringstream in(text);
    std::string line, pending;
    int lineno = 0, start = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        bool cont = !line.empty() && line.back() == '\\';
        if (cont) line.pop_back();
        if (pending.empty()) start = lineno;
        pending += line;
        pending += ' ';
        if (cont) continue;
        std::istringstream ss(pending);
        std::vector<std::string> toks;
        std::string t;
        while (ss >> t) toks.push_back(t);
        if (!toks.empty()) out.emplace_back(start, std::move(toks));
        pending.clear();
    }
    if (!pending.empty()) {
        std::istringstream ss(pending);
        std::vector<std::string> toks;
        std::string t;
        while (ss >> t) toks.push_back(t);
        if (!toks.empty()) out.emplace_back(start, std::move(toks));
    }
    return out;
}

} // namespace

Circuit parse_netlist(const std::string& text, const CellLibrary& lib) {
    Circuit c;
    std::set<std::string> declared_inputs, declared_outputs;
    bool ended = false;

    for (const auto& [lineno, toks] : logical_lines(text)) {
        if (ended) break;
        const std::string& kw = toks[0];
        if (kw == ".model") {
            if (toks.size() > 2) throw ParseError(".model expects at most one name", lineno);
            if (toks.size() == 2) c.name = toks[1];
        } else if (kw == ".inputs") {
            for (size_t i = 1; i < toks.size(); ++i) {
                if (!declared_inputs.insert(toks[i]).second)
                    throw ValidationError("line " + std::to_string(lineno) +
                                          ": duplicate input net " + toks[i]);
                c.inputs.push_back(toks[i]);
            }
        } else if (kw == ".outputs") {
            for (size_t i = 1; i < toks.size(); ++i) {
                if (!declared_outputs.insert(toks[i]).second)
                    throw ValidationError("line " + std::to_string(lineno) +
                                          ": duplicate output net " + toks[i]);
                c.outputs.push_back(toks[i]);
            }
        } else if (kw == ".gate") {
            if (toks.size() < 3) throw ParseError("malformed .gate line", lineno);
            auto it = lib.cells.find(toks[1]);
            if (it == lib.cells.end())
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": unknown cell type " + toks[1]);
            const CellType& ct = it->second;
            Gate g;
            g.cell_type = ct.name;
            g.input_nets.assign(ct.input_pins.size(), "");
            for (size_t i = 2; i < toks.size(); ++i) {
                auto eq = toks[i].find('=');
                if (eq == std::string::npos || eq == 0 || eq + 1 == toks[i].size())
                    throw ParseError("expected pin=net, got '" + toks[i] + "'", lineno);
                std::string pin = toks[i].substr(0, eq);
                std::string net = toks[i].substr(eq + 1);
                if (pin == ct.output_pin) {
                    if (!g.output_net.empty())
                        throw ValidationError("line " + std::to_string(lineno) +
                                              ": pin " + pin + " bound twice");
                    g.output_net = net;
                    continue;
                }
                auto p = std::find(ct.input_pins.begin(), ct.input_pins.end(), pin);
                if (p == ct.input_pins.end())
                    throw ValidationError("line " + std::to_string(lineno) + ": unknown pin " +
                                          pin + " on cell " + ct.name);
                size_t idx = p - ct.input_pins.begin();
                if (!g.input_nets[idx].empty())
                    throw ValidationError("line " + std::to_string(lineno) +
                                          ": pin " + pin + " bound twice");
                g.input_nets[idx] = net;
            }
            if (g.output_net.empty())
                throw ValidationError("line " + std::to_string(lineno) + ": output pin " +
                                      ct.output_pin + " not bound");
            for (size_t i = 0; i < g.input_nets.size(); ++i)
                if (g.input_nets[i].empty())
                    throw ValidationError("line " + std::to_string(lineno) + ": input pin " +
                                          ct.input_pins[i] + " not bound");
            int gi = static_cast<int>(c.gates.size());
            Net& onet = c.nets[g.output_net];
            if (onet.driver >= 0 || declared_inputs.count(g.output_net))
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": multiply-driven net " + g.output_net);
            onet.driver = gi;
            for (size_t i = 0; i < g.input_nets.size(); ++i)
                c.nets[g.input_nets[i]].sinks.emplace_back(gi, static_cast<int>(i));
            g.id = g.output_net;
            c.gates.push_back(std::move(g));
        } else if (kw == ".end") {
            ended = true;
        } else {
            throw ParseError("unknown directive '" + kw + "'", lineno);
        }
    }

    for (const auto& n : c.inputs) c.nets[n]; // materialize unused inputs
    for (const auto& n : c.outputs) {
        c.nets[n].is_output = true;
        const Net& net = c.nets[n];
        if (net.driver < 0 && !declared_inputs.count(n))
            throw ValidationError("undriven primary output net " + n);
    }
    for (const auto& g : c.gates)
        for (const auto& n : g.input_nets) {
            const Net& net = c.nets.at(n);
            if (net.driver < 0 && !declared_inputs.count(n))
                throw ValidationError("undriven gate input net " + n + " (gate " + g.id + ")");
        }

    topo_order(c); // rejects combinational cycles
    return c;
}

std::string write_netlist(const Circuit& circuit, const CellLibrary& lib) {
    std::ostringstream out;
    out << ".model " << (circuit.name.empty() ? "top" : circuit.name) << "\n";
    out << ".inputs";
    for (const auto& n : circuit.inputs) out << " " << n;
    out << "\n.outputs";
    for (const auto& n : circuit.outputs) out << " " << n;
    out << "\n";
    for (const auto& g : circuit.gates) {
        const CellType& ct = lib.cells.at(g.cell_type);
        out << ".gate " << g.cell_type;
        for (size_t i = 0; i < ct.input_pins.size(); ++i)
            out << " " << ct.input_pins[i] << "=" << g.input_nets[i];
        out << " " << ct.output_pin << "=" << g.output_net << "\n";
    }
    out << ".end\n";
    return out.str();
}

std::vector<int> topo_order(const Circuit& circuit) {
    size_t n = circuit.gates.size();
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> succ(n);
    for (size_t g = 0; g < n; ++g)
        for (const auto& in : circuit.gates[g].input_nets) {
            int d = circuit.nets.at(in).driver;
            if (d >= 0) {
                ++indeg[g];
                succ[d].push_back(static_cast<int>(g));
            }
        }
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (size_t g = 0; g < n; ++g)
        if (indeg[g] == 0) ready.push(static_cast<int>(g));
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        int g = ready.top();
        ready.pop();
        order.push_back(g);
        for (int s : succ[g])
            if (--indeg[s] == 0) ready.push(s);
    }
    if (order.size() != n) throw ValidationError("combinational cycle detected");
    return order;
}

const CellType& gate_cell(const Circuit& circuit, const CellLibrary& lib, int gate) {
    return lib.cells.at(circuit.gates.at(gate).cell_type);
}

const CellVariant& gate_variant(const Circuit& circuit, const CellLibrary& lib,
                                const Sizing& sizing, int gate) {
    return gate_cell(circuit, lib, gate).variants.at(sizing.variant.at(gate));
}

double net_load(const Circuit& circuit, const std::string& net, const Sizing& sizing,
                const CellLibrary& lib) {
    auto it = circuit.nets.find(net);
    if (it == circuit.nets.end()) throw ValidationError("unknown net " + net);
    double load = 0.0;
    for (const auto& [g, pin] : it->second.sinks)
        load += gate_variant(circuit, lib, sizing, g).input_cap;
    if (it->second.is_output) load += lib.out_load;
    return load;
}

double circuit_area(const Circuit& circuit, const Sizing& sizing, const CellLibrary& lib) {
    double area = 0.0;
    for (size_t g = 0; g < circuit.gates.size(); ++g)
        area += gate_variant(circuit, lib, sizing, static_cast<int>(g)).area;
    return area;
}

Sizing smallest_sizing(const Circuit& circuit) {
    return Sizing{std::vector<int>(circuit.gates.size(), 0)};
}

Sizing parse_sizing(const std::string& text, const Circuit& circuit, const CellLibrary& lib) {
    std::map<std::string, int> by_id;
    for (size_t g = 0; g < circuit.gates.size(); ++g)
        by_id[circuit.gates[g].id] = static_cast<int>(g);

    Sizing s{std::vector<int>(circuit.gates.size(), -1)};
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string id, vname, extra;
        if (!(ss >> id)) continue;
        if (!(ss >> vname) || (ss >> extra))
            throw ParseError("expected 'gate-id variant-name'", lineno);
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw ValidationError("line " + std::to_string(lineno) + ": unknown gate " + id);
        if (s.variant[it->second] != -1)
            throw ValidationError("line " + std::to_string(lineno) +
                                  ": gate " + id + " sized twice");
        const CellType& ct = gate_cell(circuit, lib, it->second);
        int vi = -1;
        for (size_t i = 0; i < ct.variants.size(); ++i)
            if (ct.variants[i].name == vname) vi = static_cast<int>(i);
        if (vi < 0)
            throw ValidationError("line " + std::to_string(lineno) + ": unknown variant " +
                                  vname + " for cell " + ct.name);
        s.variant[it->second] = vi;
    }
    for (size_t g = 0; g < s.variant.size(); ++g)
        if (s.variant[g] < 0)
            throw ValidationError("sizing missing gate " + circuit.gates[g].id);
    return s;
}

std::string write_sizing(const Circuit& circuit, const CellLibrary& lib, const Sizing& sizing) {
    std::ostringstream out;
    for (size_t g = 0; g < circuit.gates.size(); ++g)
        out << circuit.gates[g].id << " "
            << gate_variant(circuit, lib, sizing, static_cast<int>(g)).name << "\n";
    return out.str();
}

Subcircuit extract_subcircuit(const Circuit& circuit, int center, int depth) {
    if (center < 0 || center >= static_cast<int>(circuit.gates.size()))
        throw ValidationError("unknown gate index " + std::to_string(center));
    if (depth < 0) throw ValidationError("negative subcircuit depth");

    std::set<int> members{center};
    std::vector<int> frontier{center};
    for (int level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<int> next;
        for (int g : frontier)
            for (const auto& in : circuit.gates[g].input_nets) {
                int d = circuit.nets.at(in).driver;
                if (d >= 0 && members.insert(d).second) next.push_back(d);
            }
        frontier = std::move(next);
    }
    frontier = {center};
    for (int level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<int> next;
        for (int g : frontier)
            for (const auto& [s, pin] : circuit.nets.at(circuit.gates[g].output_net).sinks)
                if (members.insert(s).second) next.push_back(s);
        frontier = std::move(next);
    }

    Subcircuit sub;
    sub.center = center;
    auto order = topo_order(circuit);
    for (int g : order)
        if (members.count(g)) sub.members.push_back(g);

    std::set<std::string> binputs;
    std::set<int> lsinks;
    for (int g : sub.members) {
        for (const auto& in : circuit.gates[g].input_nets) {
            int d = circuit.nets.at(in).driver;
            if (d < 0 || !members.count(d)) binputs.insert(in);
        }
        const std::string& out = circuit.gates[g].output_net;
        const Net& net = circuit.nets.at(out);
        bool leaves = net.is_output;
        for (const auto& [s, pin] : net.sinks)
            if (!members.count(s)) {
                leaves = true;
                lsinks.insert(s);
            }
        if (leaves) sub.local_outputs.push_back(out);
    }
    sub.boundary_inputs.assign(binputs.begin(), binputs.end());
    sub.load_sinks.assign(lsinks.begin(), lsinks.end());
    return sub;
}

} // namespace statsizer
