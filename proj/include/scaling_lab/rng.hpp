#pragma once

#include <cstdint>

namespace scaling_lab {

// splitmix64: additive counter with a two-round avalanche.  Used both as the
// uniform stream behind every sampler and as the seed mixer that derives
// per-trial and per-column streams.  Reference output for seed 0 starts
// e220a8397b1dcdaf, 6e789e6aa1b965f4, 06c45d188009454f (frozen in tests).
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Derives one child seed from up to three inputs.  Each input perturbs the
// stream state before the next draw, so (base, a, b) triples that differ in
// any coordinate land in unrelated parts of the sequence.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = base;
    std::uint64_t h = splitmix64_next(s);
    s ^= a;
    h ^= splitmix64_next(s);
    s ^= b;
    h ^= splitmix64_next(s);
    return h;
}

// Deterministic uniform stream.  Remembers the seed it was built from so
// child streams can be derived independently of how much of this stream has
// been consumed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : root_(seed), state_(seed) {}

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    // Uniform double in [0, 1) with 53 random bits; never returns 1.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n) by rejection-free multiply-shift; n <= 2^32
    // keeps the modulo bias below 2^-32 which is immaterial for index draws.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    std::uint64_t root_seed() const { return root_; }

    // Child stream keyed by (tag, index); independent of this stream's
    // current position.
    Rng child(std::uint64_t tag, std::uint64_t index) const {
        return Rng(mix_seed(root_, tag, index));
    }

  private:
    std::uint64_t root_;
    std::uint64_t state_;
};

}  // namespace scaling_lab
