#pragma once

#include <cstdint>

namespace qcc {

// splitmix64, used for seeding and for deriving independent substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Order-independent substream derivation: hash the seed with stream indices
// so parallel mesh cells draw identical samples regardless of scheduling.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t A, std::uint64_t B = 0) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ull * (A + 1)) ^ (0x9E6C63D0876A9A47ull * (B + 1));
    splitmix64(s);
    return s;
}

// xoshiro256** — small, fast, reproducible across platforms.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    std::uint64_t next() {
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

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

inline constexpr std::uint64_t kDefaultSeed = 0x51AB5EEDC0FFEEull;

} // namespace qcc
