#pragma once

#include <cstdint>
#include <random>

namespace homolign {

// splitmix64 step; used both as a stream mixer and to derive sub-seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive a child seed from a parent seed and a tag.  Stable across
// platforms; part of the reproducibility contract.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    return splitmix64(seed ^ splitmix64(tag));
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b) {
    return mix_seed(mix_seed(seed, a), b);
}

// Deterministic random source.  All floating-point draws are produced by a
// fixed explicit construction from raw 64-bit words -- standard library
// distributions are not byte-stable across implementations, so they are
// never used.
class det_rng {
  public:
    explicit det_rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1): top 53 bits of a 64-bit draw.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // Uniform integer in [0, n).  Plain modulo: the induced bias is
    // irrelevant here and the output is reproducible everywhere.
    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

    // Standard normal via Box-Muller (paired draws discarded: one value per
    // call keeps the stream layout trivial to reason about).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace homolign
