#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kpzlab/env.hpp"
#include "kpzlab/scaling.hpp"

namespace kpzlab {

struct sample_batch {
    std::string model;
    std::string params;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> trial_seeds;
    std::vector<double> values;
};

struct ks_result {
    double d = 0.0;
    double p_value = 1.0;
};

// Kolmogorov-Smirnov asymptotic tail Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2),
// truncated at 100 terms and clipped to [0, 1].
double ks_tail(double lambda);

// D = sup |F_a - F_b| over the pooled sample; p = Q(sqrt(ab / (a + b)) D).
// Throws empty_sample.
ks_result ks_two_sample(std::vector<double> a, std::vector<double> b);
ks_result ks_two_sample(const sample_batch& a, const sample_batch& b);

struct power_fit {
    double slope = 0.0;
    double stderr_ = 0.0;
    double intercept = 0.0;
};

// Least squares of log(value) on log(size). Throws insufficient_data for
// fewer than three sizes and invalid_param for nonpositive entries.
power_fit loglog_fit(const std::vector<double>& sizes, const std::vector<double>& values);

enum class fit_statistic { sd_onepoint, geodesic_mid_sd };

double sample_sd(const std::vector<double>& v);

// SD of G[(0, n) -> (n - 1, 1)] (or of the geodesic midpoint deviation) for
// each size, fitted against n.
power_fit exponent_fit(const model_spec& model, const std::vector<std::int64_t>& sizes, std::int64_t trials,
                       fit_statistic statistic, std::uint64_t seed, int threads = 0);

// S(x_i, y_j) on a rectangle of sample points.
struct sheet_grid {
    std::vector<double> xs, ys;
    std::vector<double> values;  // values[i * ys.size() + j] = S(xs[i], ys[j])
    double operator()(std::size_t i, std::size_t j) const { return values[i * ys.size() + j]; }
};

// S(i, j) = G[(i, top) -> (j, bottom)] of a lattice environment; every start
// must be at most every end.
sheet_grid prelimit_sheet(const lattice_env& env, const std::vector<std::int64_t>& starts,
                          const std::vector<std::int64_t>& ends);

struct shock_cells {
    std::size_t nx = 0, ny = 0;
    std::vector<double> cells;  // cells[i * ny + j] for [x_i, x_{i+1}] x [y_j, y_{j+1}]
    double min = 0.0;
};

// mu(cell) = S(x2, y2) + S(x1, y1) - S(x1, y2) - S(x2, y1).
shock_cells shock_measure(const sheet_grid& grid);

using landscape_point = std::array<double, 4>;  // (x, s, y, t) with (x, s) != (y, t)

// E(r, v) = (r, |u - w| e^{-|r|} v / (1 + |v|)) for r = (u, w), with v = +-inf sent
// to +-|u - w| e^{-|r|}.
std::array<double, 5> embed_graph_point(const landscape_point& r, double value);

// Hausdorff distance between the E-images of the sampled graphs of f and g.
// Throws empty_sample, invalid_param on mismatched sizes or diagonal points.
double graph_distance(const std::vector<landscape_point>& points, const std::vector<double>& f,
                      const std::vector<double>& g);

// Product set [x0, x1] x [s0, s1] of the rescaled frame.
struct region {
    double x0 = 0.0, x1 = 0.0, s0 = 0.0, s1 = 0.0;
};

struct maxineq_config {
    std::string name;
    model_spec model = model_spec::exponential();
    double rho = 1.0;
    double n = 128;
    double xp = 0.0, sp = 0.0, xq = 0.0, sq = 1.0;
    std::vector<region> A, B;
    double c = 0.0, eps = 0.25;
    std::int64_t trials = 4000;
    std::uint64_t seed = 1;
};

struct maxineq_result {
    double lhs = 0.0, lhs_se = 0.0;  // P(d(p, q) <= c - 2 eps, c < d(A, B))
    double rhs = 0.0, rhs_se = 0.0;  // sup_a P(d(p, a) < -eps) + sup_b P(d(b, q) < -eps)
    std::size_t points_a = 0, points_b = 0;
    bool pass = false;               // lhs <= rhs + 3 (lhs_se + rhs_se)
};

// Monte Carlo check of the maximal inequality on the centered rescaled lattice
// metric (G[a -> c] - w(a) - h(c) + h(a)) / (chi n^{1/3}) with
// h(col, row) = -alpha row + beta (col + rho row). Throws invalid_region.
maxineq_result maximal_inequality_mc(const maxineq_config& cfg, int threads = 0);

// For each k: W[(t_k, k) -> (y, 1)] - W[(t_k, k) -> (z, 1)] on the melon W of f,
// with t_k = origin - scale sqrt(k / (2x)). Throws k_range_too_large when k
// exceeds the line count or t_k leaves the domain.
std::vector<std::pair<int, double>> busemann_profile(const line_env& f, double x, double y, double z,
                                                     const std::vector<int>& ks, double origin, double scale);

struct stat_row {
    std::string name;
    double value = 0.0;
    double stderr_ = 0.0;
    std::int64_t n = 0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

// "name,value,stderr,n,trials,seed" with doubles at 17 significant digits.
void write_stat_rows(std::ostream& os, const std::vector<stat_row>& rows);

}  // namespace kpzlab
