#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace btm::rng {

inline constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ull;

// SplitMix64 finalizer; bijective on 64-bit words.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
}

// Stateless word for (key, counter). The key is mixed before entering the
// counter stream; without that, key k at counter c and key k+golden at
// counter c-1 would collide and nearby seeds would yield shifted copies of
// the same sequence.
inline constexpr std::uint64_t keyed_word(std::uint64_t key, std::uint64_t counter) {
    return mix64(mix64(key) + golden * counter);
}

// Uniform variate in (0,1]. The zero word maps to 1 so inverse-CDF transforms
// with a pole at 0 stay finite; 2^-64 per-word bias is far below every
// statistical tolerance used here.
inline double uniform01(std::uint64_t word) {
    return word ? static_cast<double>(word) * 0x1.0p-64 : 1.0;
}

// Sequential SplitMix64 stream for path simulation.
struct Stream {
    std::uint64_t state;

    explicit Stream(std::uint64_t seed) : state(mix64(seed)) {}

    std::uint64_t next_word() {
        state += golden;
        return mix64(state);
    }
    double next_uniform01() { return uniform01(next_word()); }
    // standard exponential; finite because U > 0
    double next_exp() { return -std::log(next_uniform01()); }
    bool next_bit() { return (next_word() >> 63) != 0; }
};

// Deterministic sub-seed derivation: the suite tag is hashed (FNV-1a) and
// folded into the master seed. Documented in README so any suite can be rerun
// in isolation.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return mix64(master ^ mix64(h));
}

} // namespace btm::rng
