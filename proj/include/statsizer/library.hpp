#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

namespace statsizer {

struct CellVariant {
    std::string name;
    double area = 0.0;      // > 0
    double input_cap = 0.0; // > 0, per input pin
    double d0 = 0.0;        // intrinsic delay, >= 0
    double d1 = 0.0;        // delay per load unit, >= 0
};

struct CellType {
    std::string name;
    std::vector<std::string> input_pins;
    std::string output_pin;
    std::vector<CellVariant> variants; // strictly ascending area
};

struct CellLibrary {
    std::map<std::string, CellType> cells;
    double c = 0.0;          // delay-proportional variation coefficient
    double sigma_rand = 0.0; // load-independent variation, time units
    double out_load = 0.0;   // load seen by primary output nets

    bool deterministic() const { return c == 0.0 && sigma_rand == 0.0; }
};

inline double mean_delay(const CellVariant& v, double load) {
    return v.d0 + v.d1 * load;
}

// Proportional and random components combined in quadrature.
inline double sigma_gate(const CellLibrary& lib, double mu_delay) {
    double p = lib.c * mu_delay;
    return std::sqrt(p * p + lib.sigma_rand * lib.sigma_rand);
}

// Parses the line-based library format; throws ParseError with line numbers.
// Variants are sorted by ascending area.
CellLibrary parse_library(const std::string& text);

// Serializes so that parse_library(write_library(lib)) reproduces lib.
std::string write_library(const CellLibrary& lib);

} // namespace statsizer
