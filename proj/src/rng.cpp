#include "kpzlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace kpzlab::rng {

double exponential(std::uint64_t seed, std::int64_t a, std::int64_t b) {
    return -std::log(uniform(seed, a, b));
}

// Box-Muller on the pair of uniforms at (a, 2b) and (a, 2b + 1).
double gaussian(std::uint64_t seed, std::int64_t a, std::int64_t b) {
    const double u1 = uniform(seed, a, 2 * b);
    const double u2 = uniform(seed, a, 2 * b + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::int64_t poisson_small(double mean, double u) {
    double p = std::exp(-mean);
    double cdf = p;
    std::int64_t k = 0;
    // u in (0,1]; the loop stops once the tail mass is below double resolution.
    while (u > cdf && k < 100000) {
        ++k;
        p *= mean / static_cast<double>(k);
        const double next = cdf + p;
        if (next == cdf) break;
        cdf = next;
    }
    return k;
}

}  // namespace kpzlab::rng
