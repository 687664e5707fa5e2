#include "kpzlab/core_metric.hpp"

#include <algorithm>
#include <cmath>

#include "kpzlab/errors.hpp"

namespace kpzlab {

namespace {

bool better(metric_sign s, double a, double b) {
    return s == metric_sign::negative ? a > b : a < b;
}

bool all_integral(const distance_table& t) {
    return std::all_of(t.dist.begin(), t.dist.end(),
                       [](double v) { return !std::isfinite(v) || std::floor(v) == v; });
}

bool nearly_equal(double a, double b, bool exact) {
    if (a == b) return true;
    if (exact || !std::isfinite(a) || !std::isfinite(b)) return false;
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= float_tolerance * scale;
}

}  // namespace

std::size_t distance_table::index_of(const std::string& id) const {
    const auto it = std::find(ground_set.begin(), ground_set.end(), id);
    if (it == ground_set.end()) throw unknown_point("'" + id + "' is not in the ground set");
    return static_cast<std::size_t>(it - ground_set.begin());
}

void partial_costs::set(const std::string& p, const std::string& q, double value) {
    auto index = [this](const std::string& id) {
        const auto it = std::find(ground_set.begin(), ground_set.end(), id);
        if (it != ground_set.end()) return static_cast<std::size_t>(it - ground_set.begin());
        ground_set.push_back(id);
        return ground_set.size() - 1;
    };
    const std::size_t i = index(p);
    const std::size_t j = index(q);
    entries[{i, j}] = value;
}

distance_table induce_metric(const partial_costs& costs) {
    const std::size_t n = costs.ground_set.size();
    if (n == 0) throw empty_ground_set("cannot induce a metric on an empty set");
    const metric_sign s = costs.sign;
    const double none = unreachable(s);

    struct edge {
        std::size_t from, to;
        double w;
    };
    std::vector<edge> edges;
    for (const auto& [key, w] : costs.entries) {
        const auto [i, j] = key;
        if (i >= n || j >= n) throw unknown_point("cost entry refers to a point outside the ground set");
        if (std::isnan(w)) throw invalid_param("NaN cost entry");
        if (w == none) continue;
        if (w == -none) throw cycle_error("cost entry with the sentinel of the wrong sign");
        if (i == j) {
            if (better(s, w, 0.0)) throw cycle_error("self-loop entry improves on d(p,p)=0");
            continue;
        }
        edges.push_back({i, j, w});
    }

    distance_table out;
    out.ground_set = costs.ground_set;
    out.sign = s;
    out.dist.assign(n * n, none);
    for (std::size_t i = 0; i < n; ++i) out.at(i, i) = 0.0;

    // Bellman-Ford relaxation from every source simultaneously.
    for (std::size_t pass = 0;; ++pass) {
        bool changed = false;
        for (const edge& e : edges) {
            for (std::size_t src = 0; src < n; ++src) {
                const double base = out(src, e.from);
                if (base == none) continue;
                const double cand = base + e.w;
                if (!std::isfinite(cand)) throw cycle_error("chain sum is not representable");
                if (better(s, cand, out(src, e.to))) {
                    out.at(src, e.to) = cand;
                    changed = true;
                }
            }
        }
        if (!changed) break;
        if (pass >= n) throw cycle_error("relaxation did not settle: a cycle makes the closure unbounded");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (out(i, i) != 0.0) throw cycle_error("a cycle through a point improves on d(p,p)=0");
    }
    return out;
}

partial_costs as_costs(const distance_table& table) {
    partial_costs c;
    c.ground_set = table.ground_set;
    c.sign = table.sign;
    const double none = unreachable(table.sign);
    for (std::size_t i = 0; i < table.size(); ++i)
        for (std::size_t j = 0; j < table.size(); ++j)
            if (table(i, j) != none) c.entries[{i, j}] = table(i, j);
    return c;
}

std::vector<violating_triple> verify_metric(const distance_table& t) {
    std::vector<violating_triple> bad;
    const std::size_t n = t.size();
    const bool exact = all_integral(t);
    const double none = unreachable(t.sign);
    for (std::size_t i = 0; i < n; ++i) {
        if (t(i, i) != 0.0) bad.push_back({i, i, i});
        for (std::size_t j = 0; j < n; ++j)
            if (t(i, j) == -none || std::isnan(t(i, j))) bad.push_back({i, i, j});
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const double ab = t(a, b);
            if (ab == none) continue;
            for (std::size_t c = 0; c < n; ++c) {
                const double bc = t(b, c);
                if (bc == none) continue;
                const double sum = ab + bc;
                const double ac = t(a, c);
                if (better(t.sign, sum, ac) && !nearly_equal(sum, ac, exact)) bad.push_back({a, b, c});
            }
        }
    }
    return bad;
}

std::vector<std::vector<std::size_t>> equivalence_classes(const distance_table& t) {
    const std::size_t n = t.size();
    const bool exact = all_integral(t);
    auto equivalent = [&](std::size_t p, std::size_t q) {
        const double a = t(p, q);
        const double b = t(q, p);
        return std::isfinite(a) && std::isfinite(b) && nearly_equal(a + b, 0.0, exact);
    };

    std::vector<int> owner(n, -1);
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < n; ++i) {
        if (owner[i] >= 0) continue;
        owner[i] = static_cast<int>(classes.size());
        classes.push_back({i});
        for (std::size_t j = i + 1; j < n; ++j) {
            if (owner[j] < 0 && equivalent(i, j)) {
                owner[j] = owner[i];
                classes.back().push_back(j);
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (!equivalent(p, p)) throw invariant_violation("d-equivalence is not reflexive");
        for (std::size_t q = 0; q < n; ++q) {
            if (equivalent(p, q) != (owner[p] == owner[q]))
                throw invariant_violation("d-equivalence is not transitive on this table");
        }
    }
    return classes;
}

bool is_geodesic_set(const distance_table& t, const geodesic_set& g) {
    std::vector<std::size_t> idx;
    idx.reserve(g.points.size());
    for (const auto& id : g.points) idx.push_back(t.index_of(id));
    if (idx.empty()) return false;
    if (!std::isfinite(t(idx.front(), idx.back()))) return false;
    const bool exact = all_integral(t);
    const std::size_t m = idx.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                const double ac = t(idx[i], idx[k]);
                const double ab = t(idx[i], idx[j]);
                const double bc = t(idx[j], idx[k]);
                if (!std::isfinite(ac) || !std::isfinite(ab) || !std::isfinite(bc)) return false;
                if (!nearly_equal(ac, ab + bc, exact)) return false;
            }
        }
    }
    return true;
}

distance_table pullback(const distance_table& t, const std::vector<std::string>& new_ground,
                        const std::vector<std::string>& image) {
    if (new_ground.size() != image.size())
        throw invalid_param("pullback map must assign an image to every new point");
    std::vector<std::size_t> idx;
    idx.reserve(image.size());
    for (const auto& id : image) idx.push_back(t.index_of(id));
    distance_table out;
    out.ground_set = new_ground;
    out.sign = t.sign;
    const std::size_t n = new_ground.size();
    out.dist.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = t(idx[i], idx[j]);
    return out;
}

distance_table additive_metric(const std::vector<std::string>& ground, const std::vector<double>& h,
                               metric_sign sign) {
    if (ground.size() != h.size()) throw invalid_param("additive metric needs one value per point");
    distance_table out;
    out.ground_set = ground;
    out.sign = sign;
    const std::size_t n = ground.size();
    out.dist.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = h[i] - h[j];
    return out;
}

}  // namespace kpzlab
