#include "symfield/classes.hpp"

#include <cmath>
#include <string>

#include "symfield/errors.hpp"
#include "symfield/stats.hpp"

namespace symfield {

void CycleType::validate() const {
    if (N <= 0) throw validation_error("cycle type: N must be positive");
    long long total = 0;
    for (auto [i, pts] : points_on) {
        if (i < 1) throw validation_error("cycle type: cycle lengths start at 1");
        if (pts < 0) throw validation_error("cycle type: negative point count");
        if (pts % i != 0)
            throw validation_error("cycle type: points on " + std::to_string(i) +
                                   "-cycles must be divisible by " + std::to_string(i));
        total += pts;
    }
    if (total != N) throw validation_error("cycle type: point counts must sum to N");
}

long long CycleType::lam(int i) const {
    auto it = points_on.find(i);
    return it == points_on.end() ? 0 : it->second;
}

long long CycleType::moved() const { return N - lam(1); }

CycleType cycle_type_of(std::span<const int> perm) {
    const int n = static_cast<int>(perm.size());
    CycleType ct;
    ct.N = n;
    std::vector<char> seen(n, 0);
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = perm[j]) {
            seen[j] = 1;
            ++len;
        }
        ct.points_on[len] += len;
    }
    return ct;
}

void FiniteClass::validate() const {
    if (N <= 0) throw validation_error("class: N must be positive");
    long long total = 0;
    for (auto [i, pts] : cycles) {
        if (i < 2) throw validation_error("class: cycle lengths here start at 2");
        if (pts <= 0) throw validation_error("class: point counts must be positive");
        if (pts % i != 0)
            throw validation_error("class: points on " + std::to_string(i) +
                                   "-cycles must be divisible by " + std::to_string(i));
        total += pts;
    }
    if (total > N) throw validation_error("class: moved points exceed N");
    if (total == 0) throw validation_error("class: at least one nontrivial cycle required");
}

long long FiniteClass::moved() const {
    long long total = 0;
    for (auto [i, pts] : cycles) total += pts;
    return total;
}

long long FiniteClass::lam(int i) const {
    if (i == 1) return fixed();
    auto it = cycles.find(i);
    return it == cycles.end() ? 0 : it->second;
}

CycleType FiniteClass::type() const {
    CycleType ct;
    ct.N = N;
    if (fixed() > 0) ct.points_on[1] = fixed();
    for (auto [i, pts] : cycles) ct.points_on[i] = pts;
    return ct;
}

void LimitClass::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw validation_error("limit class: alpha must lie in [0, 1]");
    double total = 0.0;
    for (auto [i, w] : lambda) {
        if (i < 2) throw validation_error("limit class: cycle lengths here start at 2");
        if (!(w >= 0.0) || !std::isfinite(w))
            throw validation_error("limit class: weights must be finite and nonnegative");
        total += w;
    }
    if (total > 1.0 + 1e-12)
        throw validation_error("limit class: weights must sum to at most 1");
    if (truncation < 0) throw validation_error("limit class: negative truncation");
}

double LimitClass::lam(int i) const {
    auto it = lambda.find(i);
    return it == lambda.end() ? 0.0 : it->second;
}

double LimitClass::lambda_sum() const {
    double total = 0.0;
    for (auto [i, w] : lambda) total += w;
    return total;
}

int LimitClass::max_cycle() const {
    int m = 1;
    for (auto [i, w] : lambda)
        if (w > 0.0) m = i;
    return m;
}

LimitClass transposition_limit() {
    LimitClass lc;
    lc.lambda[2] = 1.0;
    return lc;
}

FiniteClass transposition_class(long long N) {
    FiniteClass c;
    c.N = N;
    c.cycles[2] = 2;
    return c;
}

FiniteClass realize_finite_class(const LimitClass& lc, long long N) {
    lc.validate();
    if (!lc.evanescent())
        throw validation_error("realize: only evanescent classes have a bounded realization");
    if (std::fabs(lc.lambda_sum() - 1.0) > 1e-9)
        throw validation_error("realize: weights must sum to 1 for a finite realization");
    for (long long m = 2; m <= 10000; ++m) {
        bool ok = true;
        FiniteClass c;
        c.N = N;
        for (auto [i, w] : lc.lambda) {
            if (w <= 0.0) continue;
            double pts = w * static_cast<double>(m);
            long long ipts = std::llround(pts);
            if (std::fabs(pts - static_cast<double>(ipts)) > 1e-9 * m || ipts % i != 0) {
                ok = false;
                break;
            }
            c.cycles[i] = ipts;
        }
        if (!ok) continue;
        if (c.moved() > N) throw validation_error("realize: N too small for this profile");
        c.validate();
        return c;
    }
    throw validation_error("realize: no exact integer realization with at most 10000 points");
}

Estimate make_estimate(std::span<const double> values) {
    Estimate e;
    e.samples = static_cast<long long>(values.size());
    if (values.empty()) return e;
    MeanVar mv = mean_var(values);
    e.mean = mv.mean;
    e.variance = mv.variance;
    e.std_error = std::sqrt(e.variance / static_cast<double>(values.size()));
    return e;
}

}  // namespace symfield
