#pragma once

#include <cstdint>
#include <limits>

namespace cmcomp {

// splitmix64 finalizer, used both for seeding and as a stateless hash
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream key for (seed, a, b). Distinct triples give unrelated streams.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return mix64(mix64(mix64(seed) ^ a) + 0x632be59bd9b4e019ULL * (b + 1));
}

// 53-bit double in (0,1]; never returns 0 so U^{-x} stays finite
constexpr double to_unit_open0(std::uint64_t x) {
    return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

// Counter-based uniform: no state, same value regardless of visit order.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return to_unit_open0(stream_key(seed, a, b));
}

// xoshiro256** seeded through splitmix64. Satisfies UniformRandomBitGenerator.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto &w : s_) {
            z += 0x9e3779b97f4a7c15ULL;
            w = mix64(z - 0x9e3779b97f4a7c15ULL);
        }
    }
    Rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) : Rng(stream_key(seed, a, b)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    double uniform() { return to_unit_open0((*this)()); }

    // uniform integer in [0, bound), Lemire's multiply-shift with rejection
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t thresh = (0 - bound) % bound;
            while (lo < thresh) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) { return uniform() <= p; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Per-trial seed: deterministic mix of master seed and trial index.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return stream_key(master, 0x747269616cULL, trial);
}

}  // namespace cmcomp
