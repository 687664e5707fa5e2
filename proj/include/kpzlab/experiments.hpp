#pragma once

#include <cstdint>
#include <vector>

#include "kpzlab/env.hpp"
#include "kpzlab/scaling.hpp"

// Batch samplers for the Monte Carlo experiments. Trial i always uses
// rng::trial_seed(seed, tag, i), so every batch is independent of the thread
// count.
namespace kpzlab {

namespace experiment_tag {
constexpr std::uint64_t corner = 101;
constexpr std::uint64_t rotated_poisson = 102;
constexpr std::uint64_t onepoint = 103;
constexpr std::uint64_t sheet = 104;
constexpr std::uint64_t maximal = 105;
constexpr std::uint64_t ks_calibration = 106;
}  // namespace experiment_tag

// I.i.d. lattice weights for the geometric and exponential models.
lattice_env sample_model_env(const model_spec& model, lattice_point origin, std::int64_t width, std::int64_t height,
                             std::uint64_t seed);

struct corner_batch {
    std::vector<double> passage;   // G[(0, n) -> (n - 1, 1)]
    std::vector<double> midpoint;  // rightmost geodesic's mean column on row ceil(n/2), minus n - ceil(n/2)
};

corner_batch corner_trials(const model_spec& model, std::int64_t n, std::int64_t trials, std::uint64_t seed,
                           int threads, bool with_geodesic = true);

// Rate-1 planar Poisson, rotated frame M(x, s) = (tau x + t s, -tau x + t s)
// with tau = (8 t^2)^{1/3}: trial values (G[M(x, 0) -> M(y, 1)] - 2t) / t^{1/3}.
std::vector<double> rotated_poisson_samples(double x, double y, double t, std::int64_t trials, std::uint64_t seed,
                                            int threads);

// rescaled_value(env, params, n, q) over fresh environments.
std::vector<double> rescaled_onepoint_samples(const model_spec& model, double rho, double n, const rescaled_query& q,
                                              std::int64_t trials, std::uint64_t seed, int threads);

}  // namespace kpzlab
