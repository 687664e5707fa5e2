#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

// Finite directed metrics. Distances are extended reals stored as doubles;
// integer-valued inputs stay exact because every partial sum is an integer
// far below 2^53.
namespace kpzlab {

inline constexpr double pos_inf = std::numeric_limits<double>::infinity();
inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

enum class metric_sign { positive, negative };

// The "no chain" sentinel of a sign: +inf for positive, -inf for negative.
constexpr double unreachable(metric_sign s) {
    return s == metric_sign::positive ? pos_inf : neg_inf;
}

struct distance_table {
    std::vector<std::string> ground_set;
    metric_sign sign = metric_sign::negative;
    std::vector<double> dist;  // row-major, size() x size()

    std::size_t size() const { return ground_set.size(); }
    double operator()(std::size_t i, std::size_t j) const { return dist[i * size() + j]; }
    double& at(std::size_t i, std::size_t j) { return dist[i * size() + j]; }
    std::size_t index_of(const std::string& id) const;
};

struct partial_costs {
    std::vector<std::string> ground_set;
    metric_sign sign = metric_sign::negative;
    std::map<std::pair<std::size_t, std::size_t>, double> entries;

    void set(const std::string& p, const std::string& q, double value);
};

struct violating_triple {
    std::size_t a, b, c;
    bool operator==(const violating_triple&) const = default;
};

struct geodesic_set {
    std::vector<std::string> points;  // claimed compatible order, first = p, last = q
};

// Relative tolerance for float-valued tables.
inline constexpr double float_tolerance = 0x1.0p-30;

// Chain closure: max (negative sign) or min (positive sign) over finite chains.
distance_table induce_metric(const partial_costs& costs);

partial_costs as_costs(const distance_table& table);

// Triples violating the (reverse) triangle inequality, plus (p, p, p) for a
// nonzero diagonal. Exact comparison when every finite entry is an integer,
// otherwise relative tolerance float_tolerance.
std::vector<violating_triple> verify_metric(const distance_table& table);

// Classes of mutually d-equivalent points. Throws invariant_violation if the
// relation fails to be transitive.
std::vector<std::vector<std::size_t>> equivalence_classes(const distance_table& table);

bool is_geodesic_set(const distance_table& table, const geodesic_set& g);

// dist'(x, y) = dist(g(x), g(y)) where image[i] names g(new_ground[i]).
distance_table pullback(const distance_table& table, const std::vector<std::string>& new_ground,
                        const std::vector<std::string>& image);

// Additive metric d_h(p, q) = h(p) - h(q).
distance_table additive_metric(const std::vector<std::string>& ground, const std::vector<double>& h,
                               metric_sign sign);

}  // namespace kpzlab
