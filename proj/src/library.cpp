#include "statsizer/library.hpp"
#include "statsizer/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace statsizer {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

double parse_num(const std::string& tok, int line) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError("expected number, got '" + tok + "'", line);
    }
    if (pos != tok.size())
        throw ParseError("expected number, got '" + tok + "'", line);
    return v;
}

std::string fmt_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

CellLibrary parse_library(const std::string& text) {
    CellLibrary lib;
    CellType* cur = nullptr;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];

        if (kw == "param") {
            if (toks.size() != 3)
                throw ParseError("param expects a name and a value", lineno);
            double v = parse_num(toks[2], lineno);
            if (toks[1] == "c") lib.c = v;
            else if (toks[1] == "sigma_rand") lib.sigma_rand = v;
            else if (toks[1] == "out_load") lib.out_load = v;
            else throw ParseError("unknown param '" + toks[1] + "'", lineno);
            if (v < 0)
                throw ParseError("negative value for param " + toks[1], lineno);
        } else if (kw == "cell") {
            // cell NAME inputs P [P...] output P
            if (toks.size() < 6 || toks[2] != "inputs")
                throw ParseError("malformed cell line", lineno);
            size_t out_kw = 0;
            for (size_t i = 3; i + 1 < toks.size(); ++i)
                if (toks[i] == "output") { out_kw = i; break; }
            if (out_kw == 0 || out_kw + 2 != toks.size() || out_kw == 3)
                throw ParseError("malformed cell line", lineno);
            CellType ct;
            ct.name = toks[1];
            for (size_t i = 3; i < out_kw; ++i) ct.input_pins.push_back(toks[i]);
            ct.output_pin = toks[out_kw + 1];
            std::set<std::string> pins(ct.input_pins.begin(), ct.input_pins.end());
            pins.insert(ct.output_pin);
            if (pins.size() != ct.input_pins.size() + 1)
                throw ParseError("duplicate pin name in cell " + ct.name, lineno);
            if (lib.cells.count(ct.name))
                throw ParseError("duplicate cell name " + ct.name, lineno);
            cur = &lib.cells.emplace(ct.name, std::move(ct)).first->second;
        } else if (kw == "variant") {
            // variant NAME area F cap F d0 F d1 F
            if (!cur)
                throw ParseError("variant before any cell", lineno);
            if (toks.size() != 10 || toks[2] != "area" || toks[4] != "cap" ||
                toks[6] != "d0" || toks[8] != "d1")
                throw ParseError("malformed variant line", lineno);
            CellVariant v;
            v.name = toks[1];
            v.area = parse_num(toks[3], lineno);
            v.input_cap = parse_num(toks[5], lineno);
            v.d0 = parse_num(toks[7], lineno);
            v.d1 = parse_num(toks[9], lineno);
            if (v.area <= 0) throw ParseError("non-positive area", lineno);
            if (v.input_cap <= 0) throw ParseError("non-positive cap", lineno);
            if (v.d0 < 0 || v.d1 < 0) throw ParseError("negative delay coefficient", lineno);
            for (const auto& e : cur->variants)
                if (e.name == v.name)
                    throw ParseError("duplicate variant name " + v.name +
                                     " in cell " + cur->name, lineno);
            cur->variants.push_back(std::move(v));
        } else {
            throw ParseError("unknown directive '" + kw + "'", lineno);
        }
    }

    for (auto& [name, ct] : lib.cells) {
        if (ct.variants.empty())
            throw ParseError("cell " + name + " has no variants");
        std::stable_sort(ct.variants.begin(), ct.variants.end(),
                         [](const CellVariant& a, const CellVariant& b) { return a.area < b.area; });
        for (size_t i = 1; i < ct.variants.size(); ++i)
            if (ct.variants[i].area == ct.variants[i - 1].area)
                throw ParseError("cell " + name + " has variants with equal area");
    }
    return lib;
}

std::string write_library(const CellLibrary& lib) {
    std::ostringstream out;
    out << "param c " << fmt_num(lib.c) << "\n";
    out << "param sigma_rand " << fmt_num(lib.sigma_rand) << "\n";
    out << "param out_load " << fmt_num(lib.out_load) << "\n";
    for (const auto& [name, ct] : lib.cells) {
        out << "cell " << name << " inputs";
        for (const auto& p : ct.input_pins) out << " " << p;
        out << " output " << ct.output_pin << "\n";
        for (const auto& v : ct.variants)
            out << "variant " << v.name << " area " << fmt_num(v.area)
                << " cap " << fmt_num(v.input_cap)
                << " d0 " << fmt_num(v.d0)
                << " d1 " << fmt_num(v.d1) << "\n";
    }
    return out.str();
}

} // namespace statsizer
