#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace symfield {

// Pairwise (cascade) summation. Deterministic for a fixed input order and
// accurate to O(log n) rounding growth, so replica buffers aggregate to the
// same bits no matter how many threads filled them.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    std::size_t h = v.size() / 2;
    return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

// Mean and unbiased sample variance via two pairwise passes.
struct MeanVar {
    double mean = 0.0;
    double variance = 0.0;
};

inline MeanVar mean_var(std::span<const double> v) {
    MeanVar r;
    if (v.empty()) return r;
    r.mean = pairwise_sum(v) / static_cast<double>(v.size());
    if (v.size() < 2) return r;
    std::vector<double> dev(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double d = v[i] - r.mean;
        dev[i] = d * d;
    }
    r.variance = pairwise_sum(dev) / static_cast<double>(v.size() - 1);
    return r;
}

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = static_cast<double>(a.size());
    double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

// Pearson chi-square statistic for observed counts against expected counts.
inline double chi_square(std::span<const double> observed, std::span<const double> expected) {
    double s = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        double e = expected[i];
        if (e <= 0.0) continue;
        double d = observed[i] - e;
        s += d * d / e;
    }
    return s;
}

}  // namespace symfield
