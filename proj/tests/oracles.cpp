#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "kpzlab/rng.hpp"

namespace oracle {

namespace {

constexpr double ninf = -std::numeric_limits<double>::infinity();

void extend(lattice_point q, std::vector<lattice_point>& cur, std::vector<std::vector<lattice_point>>& out) {
    const lattice_point v = cur.back();
    if (v == q) {
        out.push_back(cur);
        return;
    }
    if (v.x < q.x) {
        cur.push_back({v.x + 1, v.n});
        extend(q, cur, out);
        cur.pop_back();
    }
    if (v.n > q.n) {
        cur.push_back({v.x, v.n - 1});
        extend(q, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<lattice_point>> all_paths(lattice_point p, lattice_point q) {
    std::vector<std::vector<lattice_point>> out;
    if (p.x > q.x || p.n < q.n) return out;
    std::vector<lattice_point> cur{p};
    extend(q, cur, out);
    return out;
}

double path_sum(const lattice_env& env, const std::vector<lattice_point>& pi) {
    double s = 0.0;
    for (const auto& v : pi) s += env(v.x, v.n);
    return s;
}

double lpp(const lattice_env& env, lattice_point p, lattice_point q) {
    double best = ninf;
    for (const auto& pi : all_paths(p, q)) best = std::max(best, path_sum(env, pi));
    return best;
}

double multipoint(const lattice_env& env, lattice_point p, lattice_point q, int k) {
    std::vector<std::vector<std::vector<lattice_point>>> options;
    for (int i = 1; i <= k; ++i) {
        options.push_back(all_paths({p.x, p.n - k + i}, {q.x, q.n + i - 1}));
        if (options.back().empty()) return ninf;
    }
    double best = ninf;
    std::set<std::pair<std::int64_t, std::int64_t>> used;
    std::function<void(std::size_t, double)> go = [&](std::size_t i, double acc) {
        if (i == options.size()) {
            best = std::max(best, acc);
            return;
        }
        for (const auto& pi : options[i]) {
            bool clash = false;
            for (const auto& v : pi)
                if (used.count({v.x, v.n})) clash = true;
            if (clash) continue;
            for (const auto& v : pi) used.insert({v.x, v.n});
            go(i + 1, acc + path_sum(env, pi));
            for (const auto& v : pi) used.erase({v.x, v.n});
        }
    };
    go(0, 0.0);
    return best;
}

double first_passage(const lattice_env& env, lattice_point p, lattice_point q) {
    const std::int64_t x = p.x, m = p.n, y = q.x, n = q.n;
    // Row i occupies [t_{i-1}, t_i] with t_{m-1} = x and t_n = y. Interior
    // integer columns are charged; an integer jump time charges neither row,
    // except the two fixed ends which are closed.
    auto cost = [&](std::int64_t row, double s, double e, bool closed_s, bool closed_e) {
        double c = 0.0;
        for (std::int64_t col = x; col <= y; ++col) {
            const auto d = static_cast<double>(col);
            const bool in = (d > s || (closed_s && d == s)) && (d < e || (closed_e && d == e));
            if (in) c += env(col, row);
        }
        return c;
    };
    if (m == n) return cost(m, static_cast<double>(x), static_cast<double>(y), true, true);
    std::vector<double> grid;
    for (std::int64_t h = 2 * x; h <= 2 * y; ++h) grid.push_back(0.5 * static_cast<double>(h));
    const auto jumps = static_cast<std::size_t>(n - m);
    std::vector<std::size_t> t(jumps, 0);
    double best = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t j, std::size_t lo) {
        if (j == jumps) {
            double c = 0.0;
            for (std::int64_t row = m; row <= n; ++row) {
                const auto r = static_cast<std::size_t>(row - m);
                const double s = r == 0 ? static_cast<double>(x) : grid[t[r - 1]];
                const double e = r == jumps ? static_cast<double>(y) : grid[t[r]];
                c += cost(row, s, e, r == 0, r == jumps);
            }
            best = std::min(best, c);
            return;
        }
        for (std::size_t g = lo; g < grid.size(); ++g) {
            t[j] = g;
            go(j + 1, g);
        }
    };
    go(0, 0);
    return best;
}

double ball_chain_value(const kpzlab::clock_field& clocks, const std::vector<lattice_point>& sources,
                        lattice_point c) {
    double best = ninf;
    for (const auto& p : sources) {
        const std::int64_t depth = p.n - c.n;
        if (depth < 0 || std::llabs(c.x - p.x) > depth) continue;
        // Walk every +-1 step sequence of length depth from p; keep those ending at c.
        const std::uint64_t count = std::uint64_t{1} << depth;
        for (std::uint64_t bits = 0; bits < count; ++bits) {
            std::int64_t x = p.x, k = p.n;
            double s = 0.0;
            for (std::int64_t j = 0; j < depth; ++j) {
                s += clocks(k, x);
                x += ((bits >> j) & 1U) ? 1 : -1;
                --k;
            }
            if (x == c.x) best = std::max(best, s);
        }
    }
    return best;
}

kpzlab::height_function discrete_all_flip(const kpzlab::height_function& h0, std::int64_t steps) {
    auto h = h0;
    for (std::int64_t s = 0; s < steps; ++s) {
        auto next = h.h;
        for (std::size_t i = 1; i + 1 < h.h.size(); ++i)
            if (h.h[i - 1] < h.h[i] && h.h[i + 1] < h.h[i]) next[i] -= 2;
        h.h = next;
    }
    return h;
}

std::int64_t lis_quadratic(const std::vector<double>& v) {
    std::vector<std::int64_t> L(v.size(), 1);
    std::int64_t best = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (v[j] < v[i]) L[i] = std::max(L[i], L[j] + 1);
        best = std::max(best, L[i]);
    }
    return best;
}

std::int64_t poisson_chain(const std::vector<std::pair<double, double>>& pts, std::pair<double, double> a,
                           std::pair<double, double> c) {
    std::vector<std::pair<double, double>> in;
    for (const auto& q : pts)
        if (q.first >= a.first && q.first <= c.first && q.second >= a.second && q.second <= c.second && q != a)
            in.push_back(q);
    std::vector<std::int64_t> L(in.size(), 1);
    std::int64_t best = 0;
    std::sort(in.begin(), in.end());
    for (std::size_t i = 0; i < in.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (in[j].first < in[i].first && in[j].second < in[i].second) L[i] = std::max(L[i], L[j] + 1);
    for (auto l : L) best = std::max(best, l);
    return best;
}

double hausdorff(const std::vector<std::array<double, 5>>& a, const std::vector<std::array<double, 5>>& b) {
    auto dist = [](const std::array<double, 5>& u, const std::array<double, 5>& v) {
        double s = 0.0;
        for (int i = 0; i < 5; ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
        return std::sqrt(s);
    };
    auto directed = [&](const auto& from, const auto& to) {
        double worst = 0.0;
        for (const auto& u : from) {
            double near = std::numeric_limits<double>::infinity();
            for (const auto& v : to) near = std::min(near, dist(u, v));
            worst = std::max(worst, near);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

std::int64_t pick(std::uint64_t seed, std::int64_t i, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(kpzlab::rng::bounded(kpzlab::rng::stateless_hash(seed, i, 0x0ac1e), span));
}

}  // namespace oracle
