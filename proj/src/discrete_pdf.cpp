#include "statsizer/discrete_pdf.hpp"
#include "statsizer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace statsizer {

double normal_cdf_exact(double z) {
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

void validate_pdf(const DiscretePdf& pdf, int cap) {
    if (pdf.values.size() != pdf.probs.size() || pdf.values.empty())
        throw ValidationError("pdf with mismatched or empty point lists");
    if (cap > 0 && static_cast<int>(pdf.values.size()) > cap)
        throw ValidationError("pdf exceeds sample cap");
    double sum = 0.0;
    for (size_t i = 0; i < pdf.values.size(); ++i) {
        if (pdf.probs[i] <= 0.0) throw ValidationError("pdf with non-positive prob");
        if (i > 0 && pdf.values[i] <= pdf.values[i - 1])
            throw ValidationError("pdf values not strictly increasing");
        sum += pdf.probs[i];
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ValidationError("pdf probs sum to " + std::to_string(sum));
}

Moments pdf_moments(const DiscretePdf& pdf) {
    double m = 0.0;
    for (size_t i = 0; i < pdf.size(); ++i) m += pdf.values[i] * pdf.probs[i];
    double v = 0.0;
    for (size_t i = 0; i < pdf.size(); ++i) {
        double d = pdf.values[i] - m;
        v += d * d * pdf.probs[i];
    }
    return {m, v};
}

namespace {

// Shifts then scales the grid about the mean so moments hit the target exactly.
void moment_repair(DiscretePdf& pdf, double mu_t, double var_t) {
    Moments m = pdf_moments(pdf);
    double shift = mu_t - m.mu;
    for (double& x : pdf.values) x += shift;
    if (m.var > 0.0 && var_t >= 0.0) {
        double k = std::sqrt(var_t / m.var);
        for (double& x : pdf.values) x = mu_t + (x - mu_t) * k;
    }
}

void renormalize(DiscretePdf& pdf) {
    double sum = 0.0;
    for (double p : pdf.probs) sum += p;
    for (double& p : pdf.probs) p /= sum;
}

} // namespace

DiscretePdf discretize_normal(double mu, double sigma, int n) {
    if (sigma < 0.0) throw ValidationError("negative sigma");
    if (sigma == 0.0) return DiscretePdf::point(mu);
    if (n < 3 || n > 64)
        throw ValidationError("sample count " + std::to_string(n) + " out of range [3, 64]");

    DiscretePdf pdf;
    pdf.values.resize(n);
    pdf.probs.resize(n);
    double lo = mu - 4.0 * sigma;
    double h = 8.0 * sigma / (n - 1);
    for (int i = 0; i < n; ++i) pdf.values[i] = lo + h * i;
    double prev = 0.0; // CDF at the left edge of the current cell, tails folded
    for (int i = 0; i < n; ++i) {
        double cur = i + 1 < n ? normal_cdf_exact((pdf.values[i] + 0.5 * h - mu) / sigma) : 1.0;
        pdf.probs[i] = cur - prev;
        prev = cur;
    }
    renormalize(pdf);
    moment_repair(pdf, mu, sigma * sigma);
    return pdf;
}

DiscretePdf resample(const DiscretePdf& pdf, int cap) {
    if (cap < 1) throw ValidationError("non-positive resample cap");
    if (static_cast<int>(pdf.size()) <= cap) return pdf;

    Moments m = pdf_moments(pdf);
    double s = std::sqrt(m.var);
    double lo = std::max(pdf.values.front(), m.mu - 4.0 * s);
    double hi = std::min(pdf.values.back(), m.mu + 4.0 * s);
    if (!(hi > lo) || cap == 1) return DiscretePdf::point(m.mu);

    double h = (hi - lo) / (cap - 1);
    std::vector<double> mass(cap, 0.0);
    for (size_t i = 0; i < pdf.size(); ++i) {
        double t = (pdf.values[i] - lo) / h;
        if (t <= 0.0) {
            mass[0] += pdf.probs[i];
        } else if (t >= cap - 1) {
            mass[cap - 1] += pdf.probs[i];
        } else {
            int k = static_cast<int>(t);
            double d = t - k;
            mass[k] += pdf.probs[i] * (1.0 - d);
            mass[k + 1] += pdf.probs[i] * d;
        }
    }
    DiscretePdf out;
    for (int k = 0; k < cap; ++k)
        if (mass[k] > 0.0) {
            out.values.push_back(lo + h * k);
            out.probs.push_back(mass[k]);
        }
    renormalize(out);
    if (out.size() == 1) {
        out.values[0] = m.mu;
        return out;
    }
    moment_repair(out, m.mu, m.var);
    return out;
}

DiscretePdf pdf_sum(const DiscretePdf& a, const DiscretePdf& b, int cap) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            pts.emplace_back(a.values[i] + b.values[j], a.probs[i] * b.probs[j]);
    std::sort(pts.begin(), pts.end());

    DiscretePdf out;
    for (const auto& [x, p] : pts) {
        if (!out.values.empty() && out.values.back() == x)
            out.probs.back() += p;
        else {
            out.values.push_back(x);
            out.probs.push_back(p);
        }
    }
    renormalize(out);
    return resample(out, cap);
}

DiscretePdf pdf_max(const DiscretePdf& a, const DiscretePdf& b, int cap) {
    std::vector<double> grid;
    grid.reserve(a.size() + b.size());
    std::merge(a.values.begin(), a.values.end(), b.values.begin(), b.values.end(),
               std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    DiscretePdf out;
    double prev = 0.0;
    size_t ia = 0, ib = 0;
    double ca = 0.0, cb = 0.0;
    for (double x : grid) {
        while (ia < a.size() && a.values[ia] <= x) ca += a.probs[ia++];
        while (ib < b.size() && b.values[ib] <= x) cb += b.probs[ib++];
        double c = ca * cb;
        double p = c - prev;
        prev = c;
        if (p > 0.0) {
            out.values.push_back(x);
            out.probs.push_back(p);
        }
    }
    renormalize(out);
    return resample(out, cap);
}

} // namespace statsizer
