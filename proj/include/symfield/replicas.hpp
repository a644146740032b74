#pragma once

#include <cstdint>
#include <random>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "symfield/errors.hpp"
#include "symfield/rng.hpp"

namespace symfield {

inline int resolve_workers(int workers) {
    if (workers < 0) throw validation_error("workers must be nonnegative");
    if (workers == 0) {
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }
    return workers;
}

// Run one body per replica, each with its own generator replica_rng(seed, r).
// workers = 1 is the plain serial reference loop; larger counts distribute
// replicas over OpenMP threads. Results must be written to per-replica slots,
// which makes the output bit-identical for every worker count.
template <typename Body>
void run_replicas(long long samples, std::uint64_t seed, int workers, Body&& body) {
    int w = resolve_workers(workers);
#ifdef _OPENMP
    if (w > 1) {
#pragma omp parallel for schedule(static) num_threads(w)
        for (long long r = 0; r < samples; ++r) {
            auto rng = replica_rng(seed, static_cast<std::uint64_t>(r));
            body(r, rng);
        }
        return;
    }
#endif
    for (long long r = 0; r < samples; ++r) {
        auto rng = replica_rng(seed, static_cast<std::uint64_t>(r));
        body(r, rng);
    }
}

}  // namespace symfield
