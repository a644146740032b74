// Throughput of the replica kernels: the serial reference loop against the
// OpenMP path, with a bitwise check that both produce the same samples.

#include <chrono>
#include <cstdio>
#include <vector>

#include "symfield/covering.hpp"
#include "symfield/master.hpp"
#include "symfield/replicas.hpp"
#include "symfield/walk.hpp"

using namespace symfield;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <typename Fn>
void bench(const char* name, Fn&& run) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<double> serial = run(1);
    auto t1 = std::chrono::steady_clock::now();
    std::vector<double> parallel = run(0);
    auto t2 = std::chrono::steady_clock::now();

    double ts = seconds(t0, t1);
    double tp = seconds(t1, t2);
    bool same = serial == parallel;
    std::printf("%-24s serial %7.3f s   parallel %7.3f s   speedup %5.2fx   bitwise %s\n",
                name, ts, tp, tp > 0.0 ? ts / tp : 0.0, same ? "equal" : "DIFFERENT");
    if (!same) std::exit(1);
}

}  // namespace

int main() {
    std::printf("replica kernels, %d hardware workers\n\n", resolve_workers(0));

    bench("walk N=2000", [](int workers) {
        return observable_samples(transposition_class(2000), 1.5, 4000,
                                  {Observable::FixedFraction, 1}, 42, workers);
    });

    bench("wilson word N=500", [](int workers) {
        LassoWord w;
        w.areas = {{"a", 0.3}, {"b", 0.5}, {"c", 0.2}};
        for (auto& [f, e] : std::vector<std::pair<const char*, int>>{
                 {"a", 1}, {"b", 1}, {"a", -1}, {"b", 1}, {"c", 1}})
            w.word.push_back({f, e});
        return wilson_samples(w, 500, 1.0, 4000, 42, workers);
    });

    bench("covering N=100", [](int workers) {
        Polygon sq;
        sq.vertices = {{0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}, {0.5, -0.5}};
        return monodromy_samples(LoopGeometry{sq}, 100, 4000,
                                 {Observable::FixedFraction, 1}, 42, workers);
    });

    return 0;
}
