#pragma once

#include <cmath>
#include <cstdint>

namespace drowsy {

// Counter-based noise source: every draw is a pure function of
// (seed, stream, counter), so samples can be computed in any order or in
// parallel and still match a sequential run bit for bit.

// SplitMix64 finalizer.
inline std::uint64_t split_mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter) {
    return split_mix64(split_mix64(split_mix64(seed) ^ (stream + 0x632be59bd9b4e019ULL)) ^
                       counter);
}

// Uniform draw in (0, 1]; never 0 so it is safe under log().
inline double uniform_unit(std::uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Standard normal draw for sample index `counter` of the given stream
// (Box-Muller on two hashed uniforms).
inline double gaussian_at(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t counter) {
    const double u1 = uniform_unit(counter_hash(seed, stream, 2 * counter));
    const double u2 = uniform_unit(counter_hash(seed, stream, 2 * counter + 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace drowsy
