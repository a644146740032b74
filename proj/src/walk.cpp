#include "symfield/walk.hpp"

#include <numeric>

#include "symfield/errors.hpp"
#include "symfield/replicas.hpp"
#include "symfield/stats.hpp"

namespace symfield {

ClassSampler::ClassSampler(const FiniteClass& c) : N_(c.N) {
    c.validate();
    pool_.resize(c.N);
    std::iota(pool_.begin(), pool_.end(), 0);
    out_.resize(c.moved());
    int off = 0;
    for (auto [len, pts] : c.cycles)
        for (long long j = 0; j < pts / len; ++j) {
            spans_.emplace_back(off, len);
            off += len;
        }
}

const std::vector<int>& ClassSampler::draw(std::mt19937_64& rng) {
    // Partial Fisher-Yates: the leading m entries of the pool become a
    // uniform ordered m-subset. The pool stays permuted between draws, which
    // does not bias anything.
    int m = static_cast<int>(out_.size());
    for (int j = 0; j < m; ++j) {
        std::uniform_int_distribution<long long> pick(j, N_ - 1);
        std::swap(pool_[j], pool_[pick(rng)]);
        out_[j] = pool_[j];
    }
    return out_;
}

Walker::Walker(const FiniteClass& c) : cls_(c), sampler_(c) {
    c.validate();
    rate_ = static_cast<double>(c.N - 1) / static_cast<double>(c.moved());
    cur_.resize(c.N);
    inv_.resize(c.N);
    scratch_.reserve(c.moved());
}

void Walker::run(double t, std::mt19937_64& rng) {
    if (t < 0) throw validation_error("walk: negative time");
    std::iota(cur_.begin(), cur_.end(), 0);
    std::iota(inv_.begin(), inv_.end(), 0);
    std::poisson_distribution<long long> npois(t * rate_);
    jumps_ = npois(rng);
    for (long long j = 0; j < jumps_; ++j) {
        const std::vector<int>& pts = sampler_.draw(rng);
        // Left-multiply by the drawn element g: new state g * S sends x to
        // g(S(x)), so each cycle of g rewires the preimages of its points.
        for (auto [off, len] : sampler_.spans()) {
            scratch_.resize(len);
            for (int i = 0; i < len; ++i) scratch_[i] = inv_[pts[off + i]];
            for (int i = 0; i < len; ++i) {
                int img = pts[off + (i + 1 == len ? 0 : i + 1)];
                cur_[scratch_[i]] = img;
                inv_[img] = scratch_[i];
            }
        }
    }
}

WalkObservables observables(std::span<const int> perm, int n_max) {
    const int n = static_cast<int>(perm.size());
    WalkObservables o;
    o.cycle_moment.assign(n_max, 0.0);
    std::vector<char> seen(n, 0);
    long long cycles = 0, fixed = 0;
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = perm[j]) {
            seen[j] = 1;
            ++len;
        }
        ++cycles;
        if (len == 1) ++fixed;
        if (len <= n_max) o.cycle_moment[len - 1] += static_cast<double>(len) / n;
    }
    o.fixed_fraction = static_cast<double>(fixed) / n;
    o.normalized_distance = 1.0 - static_cast<double>(cycles) / n;
    o.distance_squared = 2.0 * (1.0 - o.fixed_fraction);
    return o;
}

namespace {

double pick_observable(const WalkObservables& o, ObservableSel sel) {
    switch (sel.kind) {
        case Observable::FixedFraction: return o.fixed_fraction;
        case Observable::NormalizedDistance: return o.normalized_distance;
        case Observable::DistanceSquared: return o.distance_squared;
        case Observable::CycleMoment:
            if (sel.n < 1 || sel.n > static_cast<int>(o.cycle_moment.size()))
                throw validation_error("cycle moment order out of range");
            return o.cycle_moment[sel.n - 1];
    }
    throw validation_error("unknown observable");
}

}  // namespace

std::vector<double> observable_samples(const FiniteClass& c, double t, long long samples,
                                       ObservableSel sel, std::uint64_t seed, int workers) {
    c.validate();
    if (samples <= 0) throw validation_error("need a positive sample count");
    int n_max = sel.kind == Observable::CycleMoment ? sel.n : 1;
    std::vector<double> buf(samples);
    run_replicas(samples, seed, workers, [&](long long r, std::mt19937_64& rng) {
        Walker walker(c);
        walker.run(t, rng);
        buf[r] = pick_observable(observables(walker.perm(), n_max), sel);
    });
    return buf;
}

Estimate estimate_observable(const FiniteClass& c, double t, long long samples,
                             ObservableSel sel, std::uint64_t seed, int workers) {
    return make_estimate(observable_samples(c, t, samples, sel, seed, workers));
}

WalkEstimates estimate_walk(const FiniteClass& c, double t, long long samples, int n_max,
                            std::uint64_t seed, int workers) {
    c.validate();
    if (samples <= 0) throw validation_error("need a positive sample count");
    if (n_max < 1) throw validation_error("n_max must be at least 1");
    std::size_t cols = 3 + static_cast<std::size_t>(n_max);
    std::vector<std::vector<double>> buf(cols, std::vector<double>(samples));
    std::vector<double> jump_buf(samples);
    run_replicas(samples, seed, workers, [&](long long r, std::mt19937_64& rng) {
        Walker walker(c);
        walker.run(t, rng);
        WalkObservables o = observables(walker.perm(), n_max);
        buf[0][r] = o.fixed_fraction;
        buf[1][r] = o.normalized_distance;
        buf[2][r] = o.distance_squared;
        for (int n = 1; n <= n_max; ++n) buf[2 + n][r] = o.cycle_moment[n - 1];
        jump_buf[r] = static_cast<double>(walker.jumps());
    });
    WalkEstimates e;
    e.fixed_fraction = make_estimate(buf[0]);
    e.normalized_distance = make_estimate(buf[1]);
    e.distance_squared = make_estimate(buf[2]);
    e.cycle_moment.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) e.cycle_moment.push_back(make_estimate(buf[2 + n]));
    e.mean_jumps = pairwise_sum(jump_buf) / static_cast<double>(samples);
    return e;
}

}  // namespace symfield
