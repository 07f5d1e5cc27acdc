#pragma once

#include <stdexcept>
#include <string>

namespace statsizer {

// File syntax problems (bad tokens, malformed lines). CLI maps these to exit 1.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
    ParseError(const std::string& msg, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

// Semantic violations (invariants, bad arguments). CLI maps these to exit 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace statsizer
