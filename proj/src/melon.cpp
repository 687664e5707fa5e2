#include "kpzlab/melon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "kpzlab/core_metric.hpp"
#include "kpzlab/errors.hpp"

namespace kpzlab {

line_env melon(const line_env& f) {
    if (f.kind() != line_kind::jump) throw convention_error("the melon map is implemented for pure-jump lines");
    if (f.x_min() != 0.0) throw convention_error("melon lines live on [0, horizon]");
    for (std::size_t i = 1; i <= f.n_lines(); ++i)
        if (f.line(static_cast<std::int64_t>(i)).base != 0.0)
            throw convention_error("melon input needs f_i(0^-) = 0 on every line");

    const auto n = static_cast<std::int64_t>(f.n_lines());
    const line_point start{0.0, n};
    const line_point end{f.x_max(), 1};

    std::vector<line_fn> out(static_cast<std::size_t>(n));
    std::vector<std::pair<double, double>> prev;
    for (std::int64_t k = 1; k <= n; ++k) {
        const auto cur = line_multipoint_profile(f, start, end, static_cast<int>(k));
        line_fn& w = out[static_cast<std::size_t>(k - 1)];
        double last = 0.0;
        for (std::size_t j = 0; j < cur.size(); ++j) {
            const double v = cur[j].second - (prev.empty() ? 0.0 : prev[j].second);
            const double step = v - last;
            const double slack = 1e-9 * std::max(1.0, std::fabs(v));
            if (step < -slack) throw invariant_violation("melon line " + std::to_string(k) + " decreases");
            if (step > 0.0) {
                w.t.push_back(cur[j].first);
                w.v.push_back(step);
                last = v;
            }
        }
        prev = cur;
    }
    return line_env(line_kind::jump, 0.0, f.x_max(), std::move(out));
}

line_env melon(const lattice_env& env) {
    if (env.x_min() != 0) throw convention_error("lattice window must start at x = 0 for the melon map");
    return melon(embed_lattice(env));
}

std::vector<isometry_row> isometry_check(const line_env& f, const line_env& w, double x, double y, int k_max) {
    if (!(0.0 <= x && x <= y && y <= f.x_max())) throw out_of_domain("need 0 <= x <= y <= horizon");
    const auto n = static_cast<std::int64_t>(f.n_lines());
    std::vector<isometry_row> rows;
    for (int k = 1; k <= k_max; ++k) {
        isometry_row r;
        r.k = k;
        r.lhs = line_multipoint(f, {x, n}, {y, 1}, k);
        r.rhs = line_multipoint(w, {x, n}, {y, 1}, k);
        rows.push_back(r);
    }
    return rows;
}

std::vector<isometry_row> isometry_check(const line_env& f, double x, double y, int k_max) {
    return isometry_check(f, melon(f), x, y, k_max);
}

std::vector<ordering_violation> melon_ordering_violations(const line_env& w) {
    std::vector<double> grid = w.breakpoints(w.x_min(), w.x_max());
    grid.push_back(w.x_min());
    grid.push_back(w.x_max());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<ordering_violation> bad;
    for (std::int64_t i = 2; i <= static_cast<std::int64_t>(w.n_lines()); ++i)
        for (double y : grid)
            if (w.left(i - 1, y) < w.value(i, y)) bad.push_back({i, y});
    return bad;
}

void write_melon_csv(std::ostream& os, const line_env& w) {
    os << "line,y,value\n";
    char buf[64];
    for (std::int64_t i = 1; i <= static_cast<std::int64_t>(w.n_lines()); ++i) {
        std::vector<double> grid{w.x_min()};
        for (double t : w.line(i).t)
            if (t != w.x_min()) grid.push_back(t);
        for (double y : grid) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g", y, w.value(i, y));
            os << i << ',' << buf << '\n';
        }
    }
}

}  // namespace kpzlab
