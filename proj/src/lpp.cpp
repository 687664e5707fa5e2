#include "kpzlab/lpp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <string>

#include "kpzlab/errors.hpp"
#include "kpzlab/line_lpp.hpp"

namespace kpzlab {

namespace {

void require_inside(const lattice_env& env, lattice_point p) {
    if (!env.contains(p))
        throw out_of_window("point (" + std::to_string(p.x) + "," + std::to_string(p.n) +
                            ") is outside the environment window");
}

std::string point_id(lattice_point p) { return std::to_string(p.x) + "," + std::to_string(p.n); }

// Binomial coefficients up to n = 64.
class binomials {
public:
    explicit binomials(int n) : n_(n + 1), c_(static_cast<std::size_t>(n_ * n_), 0) {
        for (int i = 0; i < n_; ++i) {
            at(i, 0) = 1;
            for (int j = 1; j <= i; ++j) at(i, j) = at(i - 1, j - 1) + (j <= i - 1 ? at(i - 1, j) : 0);
        }
    }
    std::int64_t operator()(int i, int j) const {
        if (j < 0 || i < 0 || j > i) return 0;
        return c_[static_cast<std::size_t>(i * n_ + j)];
    }

private:
    std::int64_t& at(int i, int j) { return c_[static_cast<std::size_t>(i * n_ + j)]; }
    int n_;
    std::vector<std::int64_t> c_;
};

}  // namespace

bool ordered(lattice_point p, lattice_point q) { return p.x <= q.x && p.n >= q.n; }

lpp_table::lpp_table(const lattice_env& env, lattice_point p, lattice_point q) : p_(p), q_(q) {
    require_inside(env, p);
    require_inside(env, q);
    if (!ordered(p, q)) throw unordered("lpp_table needs p -> q");
    w_ = q.x - p.x + 1;
    const std::int64_t h = p.n - q.n + 1;
    v_.assign(static_cast<std::size_t>(w_ * h), neg_inf);
    for (std::int64_t r = 0; r < h; ++r) {
        const std::int64_t n = p.n - r;
        double* row = v_.data() + r * w_;
        const double* up = r > 0 ? row - w_ : nullptr;
        for (std::int64_t c = 0; c < w_; ++c) {
            const double w = env.at(p.x + c, n);
            double best;
            if (r == 0 && c == 0) best = 0.0;
            else if (r == 0) best = row[c - 1];
            else if (c == 0) best = up[c];
            else best = std::max(row[c - 1], up[c]);
            row[c] = best + w;
        }
    }
}

double lpp_value(const lattice_env& env, lattice_point p, lattice_point q) {
    require_inside(env, p);
    require_inside(env, q);
    if (!ordered(p, q)) return neg_inf;
    lpp_table t(env, p, q);
    return t(q.x, q.n);
}

double lpp_multipoint(const lattice_env& env, lattice_point p, lattice_point q, int k) {
    if (k < 1) throw invalid_param("k must be at least 1");
    require_inside(env, p);
    require_inside(env, q);
    const std::int64_t rows = p.n - q.n + 1;
    if (rows < 1 || p.x > q.x) {
        if (p.n - k + 1 < env.n_min() || q.n + k - 1 > env.n_max())
            throw out_of_window("staggered endpoints leave the window");
        return neg_inf;
    }
    if (k > rows) throw k_too_large("k = " + std::to_string(k) + " exceeds the " + std::to_string(rows) + " available rows");
    if (k == 1) return lpp_value(env, p, q);
    if (rows > 62) throw invalid_param("multi-point DP supports at most 62 rows");
    require_inside(env, {p.x, p.n - k + 1});
    require_inside(env, {q.x, q.n + k - 1});

    const int R = static_cast<int>(rows);
    const binomials C(R);
    const std::int64_t n_states = C(R, k);
    if (n_states > 50'000'000) throw invalid_param("multi-point state space too large");

    // States are k-subsets of row offsets 0..R-1 (offset = row - q.n), ranked
    // in the combinatorial number system: rank = sum_i C(r_i, i + 1).
    std::vector<int> rows_of(static_cast<std::size_t>(n_states * k));
    {
        std::vector<int> comb(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::int64_t rank = 0;
            for (int i = 0; i < k; ++i) rank += C(comb[static_cast<std::size_t>(i)], i + 1);
            std::copy(comb.begin(), comb.end(), rows_of.begin() + rank * k);
            int i = 0;
            while (i < k - 1 && comb[static_cast<std::size_t>(i)] + 1 == comb[static_cast<std::size_t>(i + 1)]) {
                comb[static_cast<std::size_t>(i)] = i;
                ++i;
            }
            if (++comb[static_cast<std::size_t>(i)] >= R) break;
        }
    }
    // For path j, states sorted by decreasing r_j.
    std::vector<std::vector<std::int64_t>> order(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        auto& o = order[static_cast<std::size_t>(j)];
        o.resize(static_cast<std::size_t>(n_states));
        for (std::int64_t s = 0; s < n_states; ++s) o[static_cast<std::size_t>(s)] = s;
        std::stable_sort(o.begin(), o.end(), [&](std::int64_t a, std::int64_t b) {
            return rows_of[static_cast<std::size_t>(a * k + j)] > rows_of[static_cast<std::size_t>(b * k + j)];
        });
    }

    std::vector<double> V(static_cast<std::size_t>(n_states), neg_inf);
    std::vector<double> col(static_cast<std::size_t>(R));
    std::int64_t start_rank = 0;
    for (int i = 0; i < k; ++i) start_rank += C(R - k + i, i + 1);

    for (std::int64_t x = p.x; x <= q.x; ++x) {
        for (int r = 0; r < R; ++r) col[static_cast<std::size_t>(r)] = env.at(x, q.n + r);
        if (x == p.x) {
            double s = 0.0;
            for (int i = 0; i < k; ++i) s += col[static_cast<std::size_t>(R - k + i)];
            V[static_cast<std::size_t>(start_rank)] = s;
        } else {
            for (std::int64_t s = 0; s < n_states; ++s) {
                double& v = V[static_cast<std::size_t>(s)];
                if (v == neg_inf) continue;
                const int* rs = &rows_of[static_cast<std::size_t>(s * k)];
                for (int i = 0; i < k; ++i) v += col[static_cast<std::size_t>(rs[i])];
            }
        }
        // Downward moves inside the column, top path first so that each path
        // only needs to clear the entry row of the path below it.
        for (int j = k - 1; j >= 0; --j) {
            for (std::int64_t s : order[static_cast<std::size_t>(j)]) {
                const double v = V[static_cast<std::size_t>(s)];
                if (v == neg_inf) continue;
                const int* rs = &rows_of[static_cast<std::size_t>(s * k)];
                const int r = rs[j];
                const int floor_row = j == 0 ? 0 : rs[j - 1] + 1;
                if (r - 1 < floor_row) continue;
                const std::int64_t t = s - C(r, j + 1) + C(r - 1, j + 1);
                const double cand = v + col[static_cast<std::size_t>(r - 1)];
                double& dst = V[static_cast<std::size_t>(t)];
                if (cand > dst) dst = cand;
            }
        }
    }
    return V[0];
}

path geodesic(const lattice_env& env, lattice_point p, lattice_point q, side s) {
    require_inside(env, p);
    require_inside(env, q);
    if (!ordered(p, q)) throw unordered("geodesic needs p -> q");
    lpp_table t(env, p, q);
    path out;
    lattice_point v = q;
    out.vertices.push_back(v);
    while (!(v == p)) {
        // Compare predecessors directly: subtracting the weight again is not
        // exact for real-valued weights.
        const double up = v.n < p.n ? t(v.x, v.n + 1) : neg_inf;
        const double west = v.x > p.x ? t(v.x - 1, v.n) : neg_inf;
        const double best = std::max(up, west);
        const bool can_up = up != neg_inf && up == best;
        const bool can_west = west != neg_inf && west == best;
        if (!can_up && !can_west) throw invariant_violation("geodesic backtracking lost the optimum");
        // The leftmost geodesic drops rows as early as possible, so walking back
        // from q it keeps taking east steps; the rightmost one does the reverse.
        const bool go_up = s == side::leftmost ? !can_west : can_up;
        v = go_up ? lattice_point{v.x, v.n + 1} : lattice_point{v.x - 1, v.n};
        out.vertices.push_back(v);
    }
    std::reverse(out.vertices.begin(), out.vertices.end());
    return out;
}

double path_weight(const lattice_env& env, const path& pi) {
    double s = 0.0;
    for (const auto& v : pi.vertices) s += env(v.x, v.n);
    return s;
}

bool left_of(const path& pi, const path& rho) {
    if (rho.vertices.empty()) return pi.vertices.empty();
    // Along rho rows decrease and x increases, so the vertices with row >= l
    // form a prefix whose largest x sits at its end.
    std::map<std::int64_t, std::int64_t> last_x;
    for (const auto& v : rho.vertices) last_x[v.n] = std::max(last_x[v.n], v.x);
    const std::int64_t top = rho.vertices.front().n;
    const std::int64_t bottom = rho.vertices.back().n;
    for (const auto& v : pi.vertices) {
        if (v.n > top) return false;
        const std::int64_t reach = v.n <= bottom ? rho.vertices.back().x : last_x.at(v.n);
        if (v.x > reach) return false;
    }
    return true;
}

bool geodesic_monotonicity_check(const lattice_env& env, lattice_point p, lattice_point q,
                                 lattice_point p2, lattice_point q2) {
    if (p.n != p2.n || q.n != q2.n || p.x > p2.x || q.x > q2.x || !ordered(p, q) || !ordered(p2, q2))
        throw contract_violation("expected (x,n;y,m) and (x',n;y',m) with x <= x', y <= y', n >= m");
    const path a = geodesic(env, p, q, side::rightmost);
    const path b = geodesic(env, p2, q2, side::rightmost);
    if (!left_of(a, b)) return false;
    std::set<std::pair<std::int64_t, std::int64_t>> in_b;
    for (const auto& v : b.vertices) in_b.insert({v.x, v.n});
    const lattice_point* prev = nullptr;
    for (const auto& v : a.vertices) {
        if (!in_b.count({v.x, v.n})) continue;
        if (prev) {
            const bool adjacent = (v.x == prev->x + 1 && v.n == prev->n) || (v.x == prev->x && v.n == prev->n - 1);
            if (!adjacent) return false;
        }
        prev = &v;
    }
    return true;
}

double first_passage(const lattice_env& env, lattice_point p, lattice_point q) {
    if (p.x > q.x || p.n > q.n) throw bad_box("first passage needs x <= y and m <= n");
    require_inside(env, p);
    require_inside(env, q);
    const line_env f = embed_lattice(env);
    return line_first_passage(f, static_cast<double>(p.x), p.n - env.n_min() + 1, static_cast<double>(q.x),
                              q.n - env.n_min() + 1);
}

double poisson_lpp(const point_set& P, std::pair<double, double> a, std::pair<double, double> c) {
    if (!(a.first <= c.first && a.second <= c.second)) return neg_inf;
    std::vector<std::pair<double, double>> pts;
    for (const auto& pt : P.points) {
        if (pt.first < a.first || pt.first > c.first || pt.second < a.second || pt.second > c.second) continue;
        if (pt == a) continue;
        pts.push_back(pt);
    }
    // Equal x cannot chain: sort y descending within equal x.
    std::sort(pts.begin(), pts.end(), [](const auto& u, const auto& v) {
        return u.first != v.first ? u.first < v.first : u.second > v.second;
    });
    std::vector<double> tails;
    for (const auto& pt : pts) {
        auto it = std::lower_bound(tails.begin(), tails.end(), pt.second);
        if (it == tails.end()) tails.push_back(pt.second);
        else *it = pt.second;
    }
    return static_cast<double>(tails.size());
}

double sj_passage_value(const lattice_env& env, lattice_point p, lattice_point q) {
    require_inside(env, p);
    require_inside(env, q);
    if (!ordered(p, q)) return pos_inf;
    const std::int64_t w = q.x - p.x + 1;
    std::vector<double> prev(static_cast<std::size_t>(w), pos_inf), cur(static_cast<std::size_t>(w));
    for (std::int64_t n = p.n; n >= q.n; --n) {
        for (std::int64_t c = 0; c < w; ++c) {
            double best = (n == p.n && c == 0) ? 0.0 : prev[static_cast<std::size_t>(c)];
            if (c > 0) best = std::min(best, cur[static_cast<std::size_t>(c - 1)] + env.at(p.x + c - 1, n));
            cur[static_cast<std::size_t>(c)] = best;
        }
        std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(w - 1)];
}

distance_table lpp_distance_table(const lattice_env& env, const std::vector<lattice_point>& points) {
    distance_table t;
    t.sign = metric_sign::negative;
    const std::size_t n = points.size();
    for (const auto& p : points) t.ground_set.push_back(point_id(p));
    t.dist.assign(n * n, neg_inf);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || points[i] == points[j]) {
                t.at(i, j) = 0.0;
                continue;
            }
            const double v = lpp_value(env, points[i], points[j]);
            t.at(i, j) = v == neg_inf ? neg_inf : v - env.at(points[i].x, points[i].n);
        }
    }
    return t;
}

void write_path_csv(std::ostream& os, const path& pi) {
    os << "index,x,n\n";
    for (std::size_t i = 0; i < pi.vertices.size(); ++i)
        os << i << ',' << pi.vertices[i].x << ',' << pi.vertices[i].n << '\n';
}

}  // namespace kpzlab
