#include "symfield/master.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "symfield/errors.hpp"
#include "symfield/limit.hpp"
#include "symfield/replicas.hpp"
#include "symfield/stats.hpp"
#include "symfield/walk.hpp"

namespace symfield {

void LassoWord::validate() const {
    cls.validate();
    for (const auto& [face, area] : areas) {
        if (face.empty()) throw validation_error("word: empty face name");
        if (!(area >= 0.0) || !std::isfinite(area))
            throw validation_error("word: areas must be finite and nonnegative");
    }
    for (const Letter& l : word) {
        if (l.exponent != 1 && l.exponent != -1)
            throw validation_error("word: exponents must be +1 or -1");
        if (!areas.count(l.face))
            throw validation_error("word: letter uses face '" + l.face + "' with no area");
    }
}

namespace {

// Remove cyclically adjacent inverse pairs until none remain.
std::vector<Letter> cyclic_reduce(std::vector<Letter> w) {
    bool changed = true;
    while (changed && w.size() >= 2) {
        changed = false;
        std::size_t n = w.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t j = (i + 1) % n;
            if (w[i].face == w[j].face && w[i].exponent == -w[j].exponent) {
                if (i < j) {
                    w.erase(w.begin() + j);
                    w.erase(w.begin() + i);
                } else {  // wrap pair (last, first)
                    w.erase(w.begin() + i);
                    w.erase(w.begin());
                }
                changed = true;
                break;
            }
        }
    }
    return w;
}

double eval_reduced(std::vector<Letter> w, const LassoWord& ctx);

// Normalized trace of a single face's power word S^m: the spectral measure
// of S puts mass m_{d-cycle}/d on each d-th root of unity, so the trace of
// S^m collects the atoms with d dividing m.
double power_value(const std::string& face, long long m, const LassoWord& ctx) {
    double a = ctx.areas.at(face);
    long long n = std::llabs(m);
    double s = 0.0;
    for (long long d = 1; d <= n; ++d)
        if (n % d == 0) s += mnc(static_cast<int>(d), a, ctx.cls);
    return s;
}

// The alternating four-letter pattern M L M L^-1 (M with equal exponents, L
// with opposite ones): conditioning on the M walk leaves cumulants of its
// tensor square paired against the independent L moments.
double four_letter_value(const std::vector<Letter>& w, const LassoWord& ctx) {
    const std::string& f0 = w[0].face;
    const std::string& f1 = w[1].face;
    if (f0 == f1 || w[2].face != f0 || w[3].face != f1) throw not_reducible_error("word");
    bool f0_equal = w[0].exponent == w[2].exponent;
    bool f1_equal = w[1].exponent == w[3].exponent;
    std::string M, L;
    if (f0_equal && !f1_equal) {
        M = f0;
        L = f1;
    } else if (f1_equal && !f0_equal) {
        M = f1;
        L = f0;
    } else {
        throw not_reducible_error(
            "word: four-letter pattern needs one face with equal exponents and one with "
            "opposite exponents; use the Monte Carlo evaluator");
    }
    double tm = ctx.areas.at(M);
    double tl = ctx.areas.at(L);
    double k_id = std::exp(-2.0 * tm);                        // factorized part
    double k_fused = std::exp(-tm) * (1.0 - std::exp(-tm));   // fused-index cumulant
    double k_swap = mnc(2, tm, ctx.cls);                      // transposition cumulant
    return k_id + k_fused * std::exp(-tl) + k_swap * std::exp(-2.0 * tl);
}

double eval_reduced(std::vector<Letter> w, const LassoWord& ctx) {
    w = cyclic_reduce(std::move(w));
    if (w.empty()) return 1.0;

    std::map<std::string, std::vector<std::size_t>> where;
    for (std::size_t i = 0; i < w.size(); ++i) where[w[i].face].push_back(i);

    if (where.size() == 1) {
        long long m = 0;
        for (const Letter& l : w) m += l.exponent;
        return power_value(w[0].face, m, ctx);
    }

    // A face crossed exactly once is independent of the rest: the trace
    // factorizes through it, contributing its first moment e^{-area}.
    for (const auto& [face, pos] : where) {
        if (pos.size() != 1) continue;
        std::size_t i = pos[0];
        std::vector<Letter> rest;
        rest.insert(rest.end(), w.begin() + i + 1, w.end());
        rest.insert(rest.end(), w.begin(), w.begin() + i);
        return std::exp(-ctx.areas.at(face)) * eval_reduced(std::move(rest), ctx);
    }

    if (w.size() == 4 && where.size() == 2) return four_letter_value(w, ctx);

    throw not_reducible_error(
        "word: no analytic reduction applies; use the Monte Carlo evaluator");
}

}  // namespace

double analytic_eval(const LassoWord& w) {
    w.validate();
    if (!w.cls.evanescent())
        throw validation_error("analytic_eval: macroscopic classes not supported");
    return eval_reduced(w.word, w);
}

std::vector<double> wilson_samples(const LassoWord& w, long long N, double t_scale,
                                   long long samples, std::uint64_t seed, int workers) {
    w.validate();
    if (N < 2) throw validation_error("mc_wilson: need N >= 2");
    if (samples <= 0) throw validation_error("mc_wilson: need a positive sample count");
    if (!(t_scale > 0.0)) throw validation_error("mc_wilson: t_scale must be positive");

    FiniteClass cls = realize_finite_class(w.cls, N);

    // Face list in a fixed order; letters resolved to indices up front.
    std::vector<std::string> faces;
    std::vector<double> areas;
    for (const auto& [face, area] : w.areas) {
        faces.push_back(face);
        areas.push_back(area);
    }
    std::vector<std::pair<int, int>> letters;  // (face index, exponent)
    for (const Letter& l : w.word) {
        int idx = static_cast<int>(
            std::find(faces.begin(), faces.end(), l.face) - faces.begin());
        letters.emplace_back(idx, l.exponent);
    }

    std::vector<double> buf(samples);
    run_replicas(samples, seed, workers, [&](long long r, std::mt19937_64& rng) {
        std::vector<Walker> walkers;
        walkers.reserve(faces.size());
        for (std::size_t f = 0; f < faces.size(); ++f) {
            walkers.emplace_back(cls);
            walkers.back().run(areas[f] * t_scale, rng);
        }
        // h(c1 c2 ... cm) = h(cm) ... h(c1): left-multiply letter by letter.
        std::vector<int> W(N), next(N);
        for (long long i = 0; i < N; ++i) W[i] = static_cast<int>(i);
        for (auto [f, e] : letters) {
            const std::vector<int>& H = e == 1 ? walkers[f].perm() : walkers[f].inverse();
            for (long long i = 0; i < N; ++i) next[i] = H[W[i]];
            W.swap(next);
        }
        long long fixed = 0;
        for (long long i = 0; i < N; ++i)
            if (W[i] == i) ++fixed;
        buf[r] = static_cast<double>(fixed) / static_cast<double>(N);
    });
    return buf;
}

Estimate mc_wilson(const LassoWord& w, long long N, double t_scale, long long samples,
                   std::uint64_t seed, int workers) {
    return make_estimate(wilson_samples(w, N, t_scale, samples, seed, workers));
}

std::vector<std::pair<std::string, LassoWord>> word_library() {
    auto make = [](std::map<std::string, double> areas,
                   std::vector<std::pair<std::string, int>> letters) {
        LassoWord w;
        w.areas = std::move(areas);
        for (auto& [f, e] : letters) w.word.push_back({f, e});
        return w;
    };
    std::vector<std::pair<std::string, LassoWord>> lib;
    lib.emplace_back("empty", make({}, {}));
    lib.emplace_back("single", make({{"a", 0.7}}, {{"a", 1}}));
    lib.emplace_back("three-singles", make({{"a", 0.3}, {"b", 0.5}, {"c", 0.2}},
                                           {{"a", 1}, {"b", 1}, {"c", 1}}));
    lib.emplace_back("square", make({{"a", 0.6}}, {{"a", 1}, {"a", 1}}));
    lib.emplace_back("square-times-single",
                     make({{"a", 0.6}, {"b", 0.4}}, {{"a", 1}, {"a", 1}, {"b", 1}}));
    lib.emplace_back("alternating",
                     make({{"a", 0.3}, {"b", 0.5}},
                          {{"a", 1}, {"b", 1}, {"a", -1}, {"b", 1}}));
    lib.emplace_back("composite",
                     make({{"a", 0.3}, {"b", 0.5}, {"c", 0.2}},
                          {{"a", 1}, {"b", 1}, {"a", -1}, {"b", 1}, {"c", 1}}));
    return lib;
}

}  // namespace symfield
