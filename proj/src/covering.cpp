#include "symfield/covering.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "symfield/errors.hpp"
#include "symfield/replicas.hpp"
#include "symfield/stats.hpp"

namespace symfield {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void draw_transposition(long long N, std::mt19937_64& rng, int* a, int* b) {
    std::uniform_int_distribution<long long> first(0, N - 1);
    std::uniform_int_distribution<long long> second(0, N - 2);
    long long x = first(rng);
    long long y = second(rng);
    if (y >= x) ++y;
    *a = static_cast<int>(x);
    *b = static_cast<int>(y);
}

void draw_disk_position(std::mt19937_64& rng, double* x, double* y) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    do {
        *x = u(rng);
        *y = u(rng);
    } while (*x * *x + *y * *y >= 1.0);
}

}  // namespace

CoveringSample sample_covering(long long N, const DiskRegion&, std::mt19937_64& rng) {
    if (N < 2) throw validation_error("covering: need N >= 2");
    CoveringSample s;
    s.N = N;
    s.has_positions = true;
    std::poisson_distribution<long long> count(static_cast<double>(N) * std::numbers::pi /
                                               2.0);
    long long n = count(rng);
    s.points.resize(n);
    for (auto& p : s.points) {
        draw_disk_position(rng, &p.x, &p.y);
        draw_transposition(N, rng, &p.a, &p.b);
    }
    return s;
}

CoveringSample sample_covering(long long N, const FaceRegion& region, std::mt19937_64& rng) {
    if (N < 2) throw validation_error("covering: need N >= 2");
    double total = 0.0;
    for (auto& [face, area] : region.areas) {
        if (!(area >= 0.0) || !std::isfinite(area))
            throw validation_error("covering: face areas must be finite and nonnegative");
        total += area;
    }
    if (total > std::numbers::pi + 1e-9)
        throw validation_error("covering: face areas exceed the disk area");
    CoveringSample s;
    s.N = N;
    s.has_positions = false;
    for (auto& [face, area] : region.areas) {  // map order: deterministic
        std::poisson_distribution<long long> count(static_cast<double>(N) * area / 2.0);
        long long n = count(rng);
        auto& idx = s.face_points[face];
        idx.reserve(n);
        for (long long i = 0; i < n; ++i) {
            CoverPoint p;
            p.x = kNan;
            p.y = kNan;
            draw_transposition(N, rng, &p.a, &p.b);
            idx.push_back(static_cast<int>(s.points.size()));
            s.points.push_back(p);
        }
    }
    return s;
}

void Polygon::validate() const {
    std::size_t n = vertices.size();
    if (n < 3) throw validation_error("polygon: need at least 3 vertices");
    for (auto [x, y] : vertices)
        if (x * x + y * y >= 1.0)
            throw validation_error("polygon: vertices must lie strictly inside the disk");
    // Simplicity: no two non-adjacent edges may intersect.
    auto orient = [](std::pair<double, double> p, std::pair<double, double> q,
                     std::pair<double, double> r) {
        double v = (q.first - p.first) * (r.second - p.second) -
                   (q.second - p.second) * (r.first - p.first);
        if (v > 0) return 1;
        if (v < 0) return -1;
        return 0;
    };
    auto on_seg = [](std::pair<double, double> p, std::pair<double, double> q,
                     std::pair<double, double> r) {
        return std::min(p.first, q.first) <= r.first && r.first <= std::max(p.first, q.first) &&
               std::min(p.second, q.second) <= r.second &&
               r.second <= std::max(p.second, q.second);
    };
    auto intersects = [&](std::size_t i, std::size_t j) {
        auto a = vertices[i], b = vertices[(i + 1) % n];
        auto c = vertices[j], d = vertices[(j + 1) % n];
        int o1 = orient(a, b, c), o2 = orient(a, b, d);
        int o3 = orient(c, d, a), o4 = orient(c, d, b);
        if (o1 != o2 && o3 != o4) return true;
        if (o1 == 0 && on_seg(a, b, c)) return true;
        if (o2 == 0 && on_seg(a, b, d)) return true;
        if (o3 == 0 && on_seg(c, d, a)) return true;
        if (o4 == 0 && on_seg(c, d, b)) return true;
        return false;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (intersects(i, j))
                throw validation_error("polygon: edges intersect; the loop must be simple");
        }
}

int Polygon::side(double x, double y) const {
    const double eps = 1e-12;
    std::size_t n = vertices.size();
    int winding = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto [x1, y1] = vertices[i];
        auto [x2, y2] = vertices[(i + 1) % n];
        double cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1);
        // boundary: collinear and within the segment box
        if (std::fabs(cross) <= eps * (std::fabs(x2 - x1) + std::fabs(y2 - y1) + 1.0) &&
            std::min(x1, x2) - eps <= x && x <= std::max(x1, x2) + eps &&
            std::min(y1, y2) - eps <= y && y <= std::max(y1, y2) + eps)
            return 0;
        if (y1 <= y) {
            if (y2 > y && cross > 0) ++winding;
        } else {
            if (y2 <= y && cross < 0) --winding;
        }
    }
    return winding != 0 ? 1 : -1;
}

void redraw_boundary_points(CoveringSample& s, const Polygon& poly, std::mt19937_64& rng) {
    if (!s.has_positions)
        throw validation_error("covering: sample has no positions to redraw");
    for (auto& p : s.points)
        while (poly.side(p.x, p.y) == 0) draw_disk_position(rng, &p.x, &p.y);
}

namespace {

void left_multiply_transposition(std::vector<int>& w, std::vector<int>& inv, int a, int b) {
    // (a b) * w: swap the images a and b wherever they occur.
    int ia = inv[a], ib = inv[b];
    w[ia] = b;
    w[ib] = a;
    inv[b] = ia;
    inv[a] = ib;
}

}  // namespace

std::vector<int> monodromy(const Polygon& poly, const CoveringSample& s) {
    poly.validate();
    if (!s.has_positions)
        throw validation_error("covering: polygon monodromy needs point positions");
    std::vector<int> w(s.N), inv(s.N);
    std::iota(w.begin(), w.end(), 0);
    std::iota(inv.begin(), inv.end(), 0);
    for (const CoverPoint& p : s.points) {
        int c = poly.side(p.x, p.y);
        if (c == 0)
            throw numeric_error("covering: branch point on the loop boundary; redraw it");
        if (c > 0) left_multiply_transposition(w, inv, p.a, p.b);
    }
    return w;
}

std::vector<int> monodromy(const LassoWord& word, const CoveringSample& s) {
    word.validate();
    for (const Letter& l : word.word)
        if (!s.face_points.count(l.face))
            throw validation_error("covering: word uses face '" + l.face +
                                   "' absent from the sample");
    // Per-face products in sampled order, then the word right to left.
    std::map<std::string, std::vector<int>> face_perm;
    std::vector<int> tmp(s.N), tmp_inv(s.N);
    for (const auto& [face, idx] : s.face_points) {
        std::iota(tmp.begin(), tmp.end(), 0);
        std::iota(tmp_inv.begin(), tmp_inv.end(), 0);
        for (int i : idx) left_multiply_transposition(tmp, tmp_inv, s.points[i].a, s.points[i].b);
        face_perm[face] = tmp;
    }
    std::vector<int> w(s.N), next(s.N);
    std::iota(w.begin(), w.end(), 0);
    for (const Letter& l : word.word) {
        const std::vector<int>& base = face_perm.at(l.face);
        const std::vector<int>* h = &base;
        std::vector<int> inverse;
        if (l.exponent == -1) {
            inverse.resize(s.N);
            for (long long i = 0; i < s.N; ++i) inverse[base[i]] = static_cast<int>(i);
            h = &inverse;
        }
        for (long long i = 0; i < s.N; ++i) next[i] = (*h)[w[i]];
        w.swap(next);
    }
    return w;
}

namespace {

struct LoopRunner {
    const LoopGeometry& loop;
    long long N;

    std::vector<int> run(std::mt19937_64& rng, long long* points) const {
        if (const Polygon* poly = std::get_if<Polygon>(&loop)) {
            CoveringSample s = sample_covering(N, DiskRegion{}, rng);
            redraw_boundary_points(s, *poly, rng);
            if (points) *points = static_cast<long long>(s.points.size());
            return monodromy(*poly, s);
        }
        const LassoWord& word = std::get<LassoWord>(loop);
        FaceRegion region;
        region.areas = word.areas;
        CoveringSample s = sample_covering(N, region, rng);
        if (points) *points = static_cast<long long>(s.points.size());
        return monodromy(word, s);
    }
};

}  // namespace

WilsonStats wilson_statistics(const LoopGeometry& loop, long long N, long long samples,
                              int n_max, std::uint64_t seed, int workers) {
    if (samples <= 0) throw validation_error("covering: need a positive sample count");
    if (n_max < 1) throw validation_error("covering: n_max must be at least 1");
    if (const Polygon* poly = std::get_if<Polygon>(&loop)) poly->validate();
    LoopRunner runner{loop, N};
    std::size_t cols = 3 + static_cast<std::size_t>(n_max);
    std::vector<std::vector<double>> buf(cols, std::vector<double>(samples));
    std::vector<double> pts_buf(samples);
    run_replicas(samples, seed, workers, [&](long long r, std::mt19937_64& rng) {
        long long pts = 0;
        std::vector<int> w = runner.run(rng, &pts);
        WalkObservables o = observables(w, n_max);
        buf[0][r] = o.fixed_fraction;
        buf[1][r] = o.normalized_distance;
        buf[2][r] = o.distance_squared;
        for (int n = 1; n <= n_max; ++n) buf[2 + n][r] = o.cycle_moment[n - 1];
        pts_buf[r] = static_cast<double>(pts);
    });
    WilsonStats out;
    out.fixed_fraction = make_estimate(buf[0]);
    out.normalized_distance = make_estimate(buf[1]);
    out.distance_squared = make_estimate(buf[2]);
    out.cycle_moment.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) out.cycle_moment.push_back(make_estimate(buf[2 + n]));
    out.mean_points = pairwise_sum(pts_buf) / static_cast<double>(samples);
    return out;
}

std::vector<double> monodromy_samples(const LoopGeometry& loop, long long N,
                                      long long samples, ObservableSel sel,
                                      std::uint64_t seed, int workers) {
    if (samples <= 0) throw validation_error("covering: need a positive sample count");
    if (const Polygon* poly = std::get_if<Polygon>(&loop)) poly->validate();
    LoopRunner runner{loop, N};
    int n_max = sel.kind == Observable::CycleMoment ? sel.n : 1;
    std::vector<double> buf(samples);
    run_replicas(samples, seed, workers, [&](long long r, std::mt19937_64& rng) {
        std::vector<int> w = runner.run(rng, nullptr);
        WalkObservables o = observables(w, n_max);
        switch (sel.kind) {
            case Observable::FixedFraction: buf[r] = o.fixed_fraction; break;
            case Observable::NormalizedDistance: buf[r] = o.normalized_distance; break;
            case Observable::DistanceSquared: buf[r] = o.distance_squared; break;
            case Observable::CycleMoment: buf[r] = o.cycle_moment[sel.n - 1]; break;
        }
    });
    return buf;
}

}  // namespace symfield
