#ifndef CDOSIM_RNG_HPP
#define CDOSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace cdosim {

// splitmix64 finalizer; used to derive independent per-point streams from a
// master seed so parallel and serial grid evaluation agree bit for bit.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
    return mix64(master ^ mix64(a ^ mix64(b)));
}

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined std::distributions for reproducibility.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace cdosim

#endif
