#include "kpzlab/lis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kpzlab/env.hpp"
#include "kpzlab/errors.hpp"
#include "kpzlab/lpp.hpp"
#include "kpzlab/rng.hpp"

namespace kpzlab {

void validate_permutation(const permutation& p) {
    const auto n = p.size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (auto v : p.sigma) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
            throw invalid_param("sigma is not a permutation of 1..n");
        seen[static_cast<std::size_t>(v - 1)] = 1;
    }
}

permutation sample_permutation(std::int64_t n, std::uint64_t seed) {
    if (n < 0) throw invalid_param("permutation size must be nonnegative");
    permutation p;
    p.sigma.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) p.sigma[static_cast<std::size_t>(i)] = i + 1;
    const std::uint64_t s = rng::stream(seed, rng::tag::permutation);
    for (std::int64_t i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::int64_t>(rng::bounded(rng::stateless_hash(s, i, 0), static_cast<std::uint64_t>(i + 1)));
        std::swap(p.sigma[static_cast<std::size_t>(i)], p.sigma[static_cast<std::size_t>(j)]);
    }
    return p;
}

std::int64_t increasing_subsequence::at(std::int64_t i, std::int64_t n) const {
    if (i <= 0) return 0;
    if (i > length()) return n;
    return indices[static_cast<std::size_t>(i - 1)];
}

increasing_subsequence lis(const std::vector<double>& values, lis_variant variant) {
    const std::size_t n = values.size();
    increasing_subsequence out;
    if (n == 0) return out;

    if (variant == lis_variant::any) {
        std::vector<double> tails;
        std::vector<std::size_t> top;   // index at the top of each pile
        std::vector<std::size_t> prev(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto pos = static_cast<std::size_t>(std::lower_bound(tails.begin(), tails.end(), values[i]) - tails.begin());
            if (pos > 0) prev[i] = top[pos - 1];
            if (pos == tails.size()) {
                tails.push_back(values[i]);
                top.push_back(i);
            } else {
                tails[pos] = values[i];
                top[pos] = i;
            }
        }
        for (std::size_t i = top.back(); i != n; i = prev[i]) out.indices.push_back(static_cast<std::int64_t>(i + 1));
        std::reverse(out.indices.begin(), out.indices.end());
        return out;
    }

    // Length of the longest increasing run starting at each index, from a
    // patience pass over the reversed, negated sequence.
    std::vector<std::int64_t> from(n);
    std::vector<double> tails;
    for (std::size_t r = n; r-- > 0;) {
        const double v = -values[r];
        const auto it = std::lower_bound(tails.begin(), tails.end(), v);
        from[r] = static_cast<std::int64_t>(it - tails.begin()) + 1;
        if (it == tails.end()) tails.push_back(v);
        else *it = v;
    }
    auto need = static_cast<std::int64_t>(tails.size());
    double last = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n && need > 0; ++i) {
        if (values[i] > last && from[i] == need) {
            out.indices.push_back(static_cast<std::int64_t>(i + 1));
            last = values[i];
            --need;
        }
    }
    return out;
}

increasing_subsequence lis(const permutation& p, lis_variant variant) {
    validate_permutation(p);
    return lis(std::vector<double>(p.sigma.begin(), p.sigma.end()), variant);
}

bool lis_equals_poisson_lpp(const permutation& p) {
    validate_permutation(p);
    point_set P;
    const auto n = p.size();
    for (std::int64_t i = 1; i <= n; ++i)
        P.points.emplace_back(static_cast<double>(i), static_cast<double>(p.sigma[static_cast<std::size_t>(i - 1)]));
    std::sort(P.points.begin(), P.points.end());
    P.box = {0.0, 0.0, static_cast<double>(n), static_cast<double>(n)};
    const double chain = poisson_lpp(P, {0.0, 0.0}, {static_cast<double>(n), static_cast<double>(n)});
    return chain == static_cast<double>(lis(p).length());
}

std::vector<std::pair<double, double>> rescaled_subsequence(const increasing_subsequence& sub, std::int64_t n,
                                                            double step, lis_indexing indexing) {
    if (n < 4) throw invalid_param("rescaled subsequence needs n >= 4");
    if (!(step > 0.0 && step <= 1.0)) throw invalid_param("grid step must lie in (0, 1]");
    const double dn = static_cast<double>(n);
    const double scale = 2.0 * std::pow(dn, 5.0 / 6.0);
    const double reach = indexing == lis_indexing::two_sqrt_n ? 2.0 * std::sqrt(dn) : static_cast<double>(sub.length());
    const auto points = static_cast<std::int64_t>(std::llround(1.0 / step));
    std::vector<std::pair<double, double>> out;
    for (std::int64_t j = 0; j <= points; ++j) {
        const double t = j == points ? 1.0 : static_cast<double>(j) * step;
        const auto i = static_cast<std::int64_t>(std::floor(reach * t));
        out.emplace_back(t, (static_cast<double>(sub.at(i, n)) - dn * t) / scale);
    }
    return out;
}

double subsequence_sup_difference(const increasing_subsequence& a, const increasing_subsequence& b, std::int64_t n) {
    const double dn = static_cast<double>(n);
    const auto top = static_cast<std::int64_t>(std::floor(2.0 * std::sqrt(dn)));
    std::int64_t best = 0;
    for (std::int64_t i = 1; i <= top; ++i) best = std::max<std::int64_t>(best, std::llabs(a.at(i, n) - b.at(i, n)));
    return static_cast<double>(best) / std::pow(dn, 5.0 / 6.0);
}

std::vector<std::pair<double, double>> ks_functional(const std::vector<double>& values,
                                                     const std::function<double(double)>& cdf,
                                                     const std::vector<double>& grid, lis_variant variant) {
    if (values.empty()) throw empty_sample("no values");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ties_detected("repeated values: the distribution is not effectively continuous");
    const increasing_subsequence sub = lis(values, variant);
    std::vector<double> picked;
    for (auto i : sub.indices) picked.push_back(values[static_cast<std::size_t>(i - 1)]);
    std::sort(picked.begin(), picked.end());
    const double k = static_cast<double>(picked.size());
    const double scale = std::pow(static_cast<double>(values.size()), 1.0 / 6.0);
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double x : grid) {
        const double fn = static_cast<double>(std::upper_bound(picked.begin(), picked.end(), x) - picked.begin()) / k;
        out.emplace_back(x, scale * (fn - cdf(x)));
    }
    return out;
}

}  // namespace kpzlab
