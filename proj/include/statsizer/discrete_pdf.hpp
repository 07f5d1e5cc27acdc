#pragma once

#include "statsizer/moments.hpp"

#include <vector>

namespace statsizer {

// Sampled arrival-time distribution: strictly increasing values, probs > 0,
// probs summing to 1 within 1e-9.
struct DiscretePdf {
    std::vector<double> values;
    std::vector<double> probs;

    size_t size() const { return values.size(); }

    static DiscretePdf point(double x) { return {{x}, {1.0}}; }
};

double normal_cdf_exact(double z);

// Throws ValidationError if the type invariants are violated.
void validate_pdf(const DiscretePdf& pdf, int cap = 0);

Moments pdf_moments(const DiscretePdf& pdf);

// n grid points across [mu-4s, mu+4s]; each prob is the normal mass of the
// half-open cell around its point, tails folded into the end cells. The grid
// is then shifted and scaled so the discrete moments equal (mu, s^2) exactly.
DiscretePdf discretize_normal(double mu, double sigma, int n);

// Linear two-point mass splitting onto a cap-point grid clipped to the
// mean +/- 4 sigma window (outside mass folds into the end cells), followed by
// the same shift/scale repair so moments are conserved exactly.
DiscretePdf resample(const DiscretePdf& pdf, int cap);

// Cross-product convolution of independent pdfs, merged and resampled.
DiscretePdf pdf_sum(const DiscretePdf& a, const DiscretePdf& b, int cap);

// Independent max via CDF product on the merged value grid, then resampled.
DiscretePdf pdf_max(const DiscretePdf& a, const DiscretePdf& b, int cap);

} // namespace statsizer
