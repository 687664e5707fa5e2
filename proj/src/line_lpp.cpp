#include "kpzlab/line_lpp.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "kpzlab/core_metric.hpp"
#include "kpzlab/errors.hpp"

namespace kpzlab {

namespace {

void check_point(const line_env& env, line_point p) {
    if (p.n < 1 || p.n > static_cast<std::int64_t>(env.n_lines()))
        throw out_of_domain("line " + std::to_string(p.n) + " does not exist");
    if (p.x < env.x_min() || p.x > env.x_max())
        throw out_of_domain("time " + std::to_string(p.x) + " is outside the line domain");
}

// x, the breakpoints strictly between x and y, then y.
std::vector<double> time_grid(const line_env& env, double x, double y) {
    std::vector<double> t{x};
    for (double b : env.breakpoints(x, y))
        if (b > x && b < y) t.push_back(b);
    if (y > x) t.push_back(y);
    return t;
}

// Strictly increasing k-subsets of {0, ..., L-1}, with reachability lists:
// below[s] holds every state r' with r'_j <= r_j for all j.
struct state_space {
    int L = 0, k = 0;
    std::vector<std::vector<int>> states;
    std::vector<std::vector<int>> below;

    state_space(int lines, int paths) : L(lines), k(paths) {
        std::vector<int> cur;
        enumerate(0, cur);
        std::unordered_map<std::uint64_t, int> index;
        for (std::size_t s = 0; s < states.size(); ++s) index[mask(states[s])] = static_cast<int>(s);
        below.resize(states.size());
        for (std::size_t s = 0; s < states.size(); ++s) {
            std::vector<int> r2;
            collect(states[s], 0, r2, index, below[s]);
        }
    }

    static std::uint64_t mask(const std::vector<int>& r) {
        std::uint64_t m = 0;
        for (int v : r) m |= std::uint64_t{1} << v;
        return m;
    }

private:
    void enumerate(int lo, std::vector<int>& cur) {
        if (static_cast<int>(cur.size()) == k) {
            states.push_back(cur);
            return;
        }
        for (int v = lo; v < L; ++v) {
            cur.push_back(v);
            enumerate(v + 1, cur);
            cur.pop_back();
        }
    }

    void collect(const std::vector<int>& r, int j, std::vector<int>& r2,
                 const std::unordered_map<std::uint64_t, int>& index, std::vector<int>& out) {
        if (j == k) {
            out.push_back(index.at(mask(r2)));
            return;
        }
        const int lo = j == 0 ? 0 : r2.back() + 1;
        for (int v = lo; v <= r[static_cast<std::size_t>(j)]; ++v) {
            r2.push_back(v);
            collect(r, j + 1, r2, index, out);
            r2.pop_back();
        }
    }
};

}  // namespace

double line_lpp_value(const line_env& env, line_point p, line_point q) {
    return line_multipoint(env, p, q, 1);
}

std::vector<std::pair<double, double>> line_multipoint_profile(const line_env& env, line_point p, line_point q,
                                                             int k) {
    if (k < 1) throw invalid_param("k must be at least 1");
    check_point(env, p);
    check_point(env, q);
    if (p.x > q.x || p.n < q.n) throw unordered("profile needs x <= y and n >= m");
    const std::int64_t m = q.n;
    const int L = static_cast<int>(p.n - m + 1);
    const std::vector<double> tau = time_grid(env, p.x, q.x);
    const std::size_t M = tau.size() - 1;

    std::vector<std::pair<double, double>> out;
    out.reserve(tau.size());
    {
        double s = 0.0;
        for (std::int64_t i = m; i <= p.n; ++i) s += env.jump(i, p.x);
        out.emplace_back(p.x, s);
    }
    if (M == 0) return out;
    if (k > L) {
        for (std::size_t j = 1; j <= M; ++j) out.emplace_back(tau[j], neg_inf);
        return out;
    }
    if (L > 60) throw invalid_param("multi-point line DP supports at most 60 lines");
    const bool jump_lines = env.kind() == line_kind::jump;

    // pre[l] = sum of jumps at tau_j over line offsets < l.
    std::vector<double> pre(static_cast<std::size_t>(L + 1));
    auto load_jumps = [&](std::size_t j) {
        pre[0] = 0.0;
        for (int l = 0; l < L; ++l)
            pre[static_cast<std::size_t>(l + 1)] = pre[static_cast<std::size_t>(l)] + env.jump(m + l, tau[j]);
    };

    const state_space sp(L, k);
    const std::size_t S = sp.states.size();
    std::vector<double> V(S, neg_inf), next(S);

    load_jumps(0);
    for (std::size_t s = 0; s < S; ++s)
        V[s] = pre[static_cast<std::size_t>(L)] - pre[static_cast<std::size_t>(sp.states[s][0])];

    std::vector<double> gap(static_cast<std::size_t>(L));
    for (std::size_t j = 0; j < M; ++j) {
        // Open gap (tau_j, tau_{j+1}).
        if (jump_lines) {
            std::fill(next.begin(), next.end(), neg_inf);
            for (std::size_t s = 0; s < S; ++s) {
                if (V[s] == neg_inf) continue;
                for (int t : sp.below[s]) {
                    double& dst = next[static_cast<std::size_t>(t)];
                    dst = std::max(dst, V[s]);
                }
            }
            std::swap(V, next);
        } else {
            for (int l = 0; l < L; ++l)
                gap[static_cast<std::size_t>(l)] = env.left(m + l, tau[j + 1]) - env.value(m + l, tau[j]);
            for (std::size_t s = 0; s < S; ++s) {
                if (V[s] == neg_inf) continue;
                for (int r : sp.states[s]) V[s] += gap[static_cast<std::size_t>(r)];
            }
        }

        load_jumps(j + 1);
        // Ending at tau_{j+1}: every path drops vertically to line m, which
        // collects the lines [0, r_k].
        double best = neg_inf;
        for (std::size_t s = 0; s < S; ++s) {
            if (V[s] == neg_inf) continue;
            best = std::max(best, V[s] + pre[static_cast<std::size_t>(sp.states[s].back() + 1)]);
        }
        out.emplace_back(tau[j + 1], best);
        if (j + 1 == M) break;

        // Passing through tau_{j+1}: path i sweeps lines [r'_i, r_i] and the
        // union of those intervals is collected once.
        std::fill(next.begin(), next.end(), neg_inf);
        for (std::size_t s = 0; s < S; ++s) {
            if (V[s] == neg_inf) continue;
            const auto& r = sp.states[s];
            for (int t : sp.below[s]) {
                const auto& r2 = sp.states[static_cast<std::size_t>(t)];
                double w = 0.0;
                for (int i = 0; i < k; ++i) {
                    const auto ui = static_cast<std::size_t>(i);
                    const int lo = i == 0 ? r2[0] : std::max(r2[ui], r[ui - 1] + 1);
                    const int hi = r[ui];
                    if (lo <= hi) w += pre[static_cast<std::size_t>(hi + 1)] - pre[static_cast<std::size_t>(lo)];
                }
                double& dst = next[static_cast<std::size_t>(t)];
                dst = std::max(dst, V[s] + w);
            }
        }
        std::swap(V, next);
    }
    return out;
}

double line_multipoint(const line_env& env, line_point p, line_point q, int k) {
    if (k < 1) throw invalid_param("k must be at least 1");
    check_point(env, p);
    check_point(env, q);
    if (p.x > q.x || p.n < q.n) return neg_inf;
    return line_multipoint_profile(env, p, q, k).back().second;
}

double box_mass(const line_env& env, double x, std::int64_t m, double y, std::int64_t n) {
    check_point(env, {x, m});
    check_point(env, {y, n});
    if (x > y || m > n) throw bad_box("box needs x <= y and m <= n");
    double s = 0.0;
    for (std::int64_t i = m; i <= n; ++i) s += env.value(i, y) - env.left(i, x);
    return s;
}

double line_first_passage(const line_env& env, double x, std::int64_t m, double y, std::int64_t n) {
    if (x > y || m > n) throw bad_box("first passage needs x <= y and m <= n");
    check_point(env, {x, m});
    check_point(env, {y, n});
    if (m == n) return env.value(m, y) - env.left(m, x);

    // Candidate jump times: grid points and one representative per open gap.
    // Slot 2j is tau_j, slot 2j+1 the gap (tau_j, tau_{j+1}).
    const std::vector<double> tau = time_grid(env, x, y);
    std::vector<double> rep;
    for (std::size_t j = 0; j < tau.size(); ++j) {
        rep.push_back(tau[j]);
        if (j + 1 < tau.size()) rep.push_back(0.5 * (tau[j] + tau[j + 1]));
    }
    const std::size_t S = rep.size();

    // D[s]: cheapest cost of lines m..i-1 given the climb onto line i at rep[s].
    std::vector<double> D(S), next(S);
    const double base = env.left(m, x);
    for (std::size_t s = 0; s < S; ++s) D[s] = env.left(m, rep[s]) - base;
    for (std::int64_t i = m + 1; i < n; ++i) {
        for (std::size_t s = 0; s < S; ++s) {
            double best = D[s];
            const double end = env.left(i, rep[s]);
            for (std::size_t a = 0; a < s; ++a) best = std::min(best, D[a] + end - env.value(i, rep[a]));
            next[s] = best;
        }
        std::swap(D, next);
    }
    double best = pos_inf;
    const double top = env.value(n, y);
    for (std::size_t s = 0; s < S; ++s) best = std::min(best, D[s] + top - env.value(n, rep[s]));
    return best;
}

}  // namespace kpzlab
