#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace wnrank {

/// splitmix64 finalizer; the basis of all stream-seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a stream seed from a base seed and a tuple of identifiers (model,
/// cell coordinates, replicate index, ...). Streams for distinct tuples are
/// independent for practical purposes, which makes every replicate
/// reproducible under any parallel schedule.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> ids) {
    std::uint64_t h = mix64(base);
    for (std::uint64_t id : ids) {
        h = mix64(h ^ mix64(id));
    }
    return h;
}

/// Engine for one derived stream.
inline std::mt19937_64 make_engine(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace wnrank
