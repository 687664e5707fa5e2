#include "kpzlab/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "kpzlab/errors.hpp"
#include "kpzlab/lpp.hpp"
#include "kpzlab/parallel.hpp"
#include "kpzlab/rng.hpp"

namespace kpzlab {

lattice_env sample_model_env(const model_spec& model, lattice_point origin, std::int64_t width, std::int64_t height,
                             std::uint64_t seed) {
    switch (model.kind) {
    case model_kind::geometric:
        return sample_lattice_env(dist_tag::geometric(model.param), origin, width, height, seed);
    case model_kind::exponential:
        return sample_lattice_env(dist_tag::exponential(), origin, width, height, seed);
    default:
        throw invalid_param("model " + model_name(model.kind) + " has no i.i.d. lattice environment");
    }
}

corner_batch corner_trials(const model_spec& model, std::int64_t n, std::int64_t trials, std::uint64_t seed,
                           int threads, bool with_geodesic) {
    if (n < 2) throw invalid_param("corner experiment needs n >= 2");
    if (trials < 1) throw invalid_param("trial count must be positive");
    corner_batch out;
    out.passage.assign(static_cast<std::size_t>(trials), 0.0);
    if (with_geodesic) out.midpoint.assign(static_cast<std::size_t>(trials), 0.0);
    const lattice_point p{0, n}, q{n - 1, 1};
    const std::int64_t row = n - n / 2;
    parallel_for(trials, threads, [&](std::int64_t i) {
        const auto env = sample_model_env(model, {0, 1}, n, n, rng::trial_seed(seed, experiment_tag::corner, i));
        const auto u = static_cast<std::size_t>(i);
        if (!with_geodesic) {
            out.passage[u] = lpp_value(env, p, q);
            return;
        }
        const path pi = geodesic(env, p, q, side::rightmost);
        out.passage[u] = path_weight(env, pi);
        std::int64_t first = -1, last = -1;
        for (const auto& v : pi.vertices) {
            if (v.n != row) continue;
            if (first < 0) first = v.x;
            last = v.x;
        }
        out.midpoint[u] = 0.5 * static_cast<double>(first + last) - static_cast<double>(n - row);
    });
    return out;
}

std::vector<double> rotated_poisson_samples(double x, double y, double t, std::int64_t trials, std::uint64_t seed,
                                            int threads) {
    if (!(t > 0.0)) throw invalid_param("time scale must be positive");
    if (trials < 1) throw invalid_param("trial count must be positive");
    const double tau = std::cbrt(8.0 * t * t);
    const std::pair<double, double> a{tau * x, -tau * x};
    const std::pair<double, double> c{tau * y + t, -tau * y + t};
    if (!(c.first > a.first && c.second > a.second))
        throw inadmissible_direction("rotated endpoints are not ordered");
    const box2 box{a.first, a.second, c.first, c.second};
    const double chi = std::cbrt(t);
    std::vector<double> out(static_cast<std::size_t>(trials));
    parallel_for(trials, threads, [&](std::int64_t i) {
        const auto P = sample_poisson_points(1.0, box, rng::trial_seed(seed, experiment_tag::rotated_poisson, i));
        out[static_cast<std::size_t>(i)] = (poisson_lpp(P, a, c) - 2.0 * t) / chi;
    });
    return out;
}

std::vector<double> rescaled_onepoint_samples(const model_spec& model, double rho, double n, const rescaled_query& q,
                                              std::int64_t trials, std::uint64_t seed, int threads) {
    if (trials < 1) throw invalid_param("trial count must be positive");
    if (!(q.s < q.t)) throw invalid_param("one-point query needs s < t");
    const scaling_params sp = scaling_params_for(model, rho);
    const lattice_point a = rescaled_point(sp, n, q.x, q.s);
    const lattice_point b = rescaled_point(sp, n, q.y, q.t);
    if (!ordered(a, b)) throw inadmissible_direction("rescaled endpoints are not ordered");
    const lattice_point origin{a.x, b.n};
    const std::int64_t width = b.x - a.x + 1, height = a.n - b.n + 1;
    std::vector<double> out(static_cast<std::size_t>(trials));
    parallel_for(trials, threads, [&](std::int64_t i) {
        const auto env =
            sample_model_env(model, origin, width, height, rng::trial_seed(seed, experiment_tag::onepoint, i));
        out[static_cast<std::size_t>(i)] = rescaled_value(env, sp, n, q);
    });
    return out;
}

}  // namespace kpzlab
