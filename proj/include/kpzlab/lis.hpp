#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

// Longest increasing subsequences and their rescalings.
namespace kpzlab {

struct permutation {
    std::vector<std::int64_t> sigma;  // sigma[i - 1] = sigma(i), values 1..n
    std::int64_t size() const { return static_cast<std::int64_t>(sigma.size()); }
};

// Throws invalid_param unless sigma is a bijection on {1, ..., n}.
void validate_permutation(const permutation& p);

// Uniform permutation by Fisher-Yates over counter-based draws.
permutation sample_permutation(std::int64_t n, std::uint64_t seed);

enum class lis_variant { any, leftmost };

struct increasing_subsequence {
    std::vector<std::int64_t> indices;  // 1-based positions i_1 < ... < i_L
    std::int64_t length() const { return static_cast<std::int64_t>(indices.size()); }
    // I(i) = i-th position, with I(0) = 0 and I(i) = n for i > L.
    std::int64_t at(std::int64_t i, std::int64_t n) const;
};

// Longest strictly increasing subsequence by patience sorting. `any` follows
// the predecessor links from the last pile; `leftmost` picks at every step the
// smallest index that still extends to a maximal subsequence.
increasing_subsequence lis(const std::vector<double>& values, lis_variant variant = lis_variant::any);
increasing_subsequence lis(const permutation& p, lis_variant variant = lis_variant::any);

// Length of the longest chain in P = {(i, sigma(i))} from (0, 0) to (n, n)
// equals the LIS length.
bool lis_equals_poisson_lpp(const permutation& p);

enum class lis_indexing { two_sqrt_n, by_length };

// t -> (I(floor(2 t sqrt n)) - n t) / (2 n^{5/6}) on t = 0, step, ..., 1.
// by_length uses floor(L t) instead of floor(2 t sqrt n).
std::vector<std::pair<double, double>> rescaled_subsequence(const increasing_subsequence& sub, std::int64_t n,
                                                            double step = 0x1.0p-7,
                                                            lis_indexing indexing = lis_indexing::two_sqrt_n);

// max over 1 <= i <= 2 sqrt n of |I(i) - J(i)| / n^{5/6}.
double subsequence_sup_difference(const increasing_subsequence& a, const increasing_subsequence& b, std::int64_t n);

// n^{1/6} (F_n(x) - F(x)) on the grid, with F_n the empirical CDF of the values
// along a maximal increasing subsequence. Throws ties_detected on repeated
// values and empty_sample on empty input.
std::vector<std::pair<double, double>> ks_functional(const std::vector<double>& values,
                                                     const std::function<double(double)>& cdf,
                                                     const std::vector<double>& grid,
                                                     lis_variant variant = lis_variant::any);

}  // namespace kpzlab
