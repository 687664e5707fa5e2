#pragma once

#include <cstdint>

// Counter-based randomness. Every random quantity in the toolkit is a pure
// function of (seed, coordinates), so results do not depend on evaluation
// order or thread count.
namespace kpzlab::rng {

// MurmurHash3 64-bit finalizer.
constexpr std::uint64_t fmix64(std::uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ULL;
    k ^= k >> 33;
    return k;
}

// Packs two coordinates into one word and scrambles it with a bijection.
// Injective for coordinates in the 32-bit signed range. The scramble keeps
// seed ^ encode(a, b) from colliding across small seeds: with the plain packed
// word, seed 1 at (0, 0) would equal seed 0 at (0, 1).
constexpr std::uint64_t encode(std::int64_t a, std::int64_t b) {
    const std::uint64_t packed = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
                                 static_cast<std::uint64_t>(static_cast<std::uint32_t>(b));
    return fmix64(packed + 0x9e3779b97f4a7c15ULL);
}

// Two finalizer rounds over seed xor encode(a, b).
constexpr std::uint64_t stateless_hash(std::uint64_t seed, std::int64_t a, std::int64_t b) {
    return fmix64(fmix64(seed ^ encode(a, b)));
}

// Uniform double in (0, 1], 53 bits of resolution.
constexpr double to_unit(std::uint64_t h) {
    return static_cast<double>((h >> 11) + 1) * 0x1.0p-53;
}

constexpr double uniform(std::uint64_t seed, std::int64_t a, std::int64_t b) {
    return to_unit(stateless_hash(seed, a, b));
}

// Independent sub-stream for a named purpose.
constexpr std::uint64_t stream(std::uint64_t seed, std::uint64_t tag) {
    return fmix64(seed ^ fmix64(tag * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
}

// Seed for trial `index` of an experiment keyed by (seed, tag).
constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t tag, std::int64_t index) {
    return stateless_hash(stream(seed, tag), index, 0x5eed);
}

// Integer in [0, n) by 64x64 -> high-word multiplication.
inline std::uint64_t bounded(std::uint64_t h, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(h) * n) >> 64);
}

double exponential(std::uint64_t seed, std::int64_t a, std::int64_t b);
double gaussian(std::uint64_t seed, std::int64_t a, std::int64_t b);
// Poisson(mean) by sequential inversion of a single uniform; mean <= 600.
std::int64_t poisson_small(double mean, double u);

namespace tag {
constexpr std::uint64_t poisson_points = 11;
constexpr std::uint64_t poisson_lines = 12;
constexpr std::uint64_t walk_lines = 13;
constexpr std::uint64_t permutation = 14;
constexpr std::uint64_t discrete_tasep = 15;
constexpr std::uint64_t values = 16;
}  // namespace tag

}  // namespace kpzlab::rng
