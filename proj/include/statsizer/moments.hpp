#pragma once

#include <cmath>

namespace statsizer {

// Mean and variance of a normal-approximated arrival time.
struct Moments {
    double mu = 0.0;
    double var = 0.0;

    double sigma() const { return std::sqrt(var); }

    bool operator==(const Moments&) const = default;
};

inline Moments normal_sum(const Moments& a, const Moments& b) {
    return {a.mu + b.mu, a.var + b.var};
}

} // namespace statsizer
