#pragma once

#include <cstdint>
#include <random>

namespace symfield {

// SplitMix64 step, used to whiten seeds before feeding them to mt19937_64.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent generator for one replica of a batch run. Each replica index
// gets its own stream derived from (seed, replica), so results depend only
// on the replica index and never on how replicas are scheduled over threads.
inline std::mt19937_64 replica_rng(std::uint64_t seed, std::uint64_t replica) {
    std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (replica + 1);
    return std::mt19937_64(splitmix64(s));
}

}  // namespace symfield
