#include "kpzlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "kpzlab/core_metric.hpp"
#include "kpzlab/errors.hpp"
#include "kpzlab/experiments.hpp"
#include "kpzlab/line_lpp.hpp"
#include "kpzlab/lpp.hpp"
#include "kpzlab/melon.hpp"
#include "kpzlab/parallel.hpp"
#include "kpzlab/rng.hpp"

namespace kpzlab {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<lattice_point> region_points(const region& R, const scaling_params& sp, double n) {
    if (!(R.x0 <= R.x1) || !(R.s0 <= R.s1)) throw invalid_region("region bounds are reversed");
    const double T = sp.tau_n(n);
    std::vector<lattice_point> out;
    const auto r_lo = static_cast<std::int64_t>(std::ceil(-n * R.s1));
    const auto r_hi = static_cast<std::int64_t>(std::floor(-n * R.s0));
    for (std::int64_t r = r_hi; r >= r_lo; --r) {
        const double shift = sp.rho * static_cast<double>(r);
        const auto c_lo = static_cast<std::int64_t>(std::ceil(R.x0 * T - shift));
        const auto c_hi = static_cast<std::int64_t>(std::floor(R.x1 * T - shift));
        for (std::int64_t c = c_lo; c <= c_hi; ++c) out.push_back({c, r});
    }
    return out;
}

std::vector<lattice_point> union_points(const std::vector<region>& regions, const scaling_params& sp, double n) {
    std::vector<lattice_point> out;
    for (const auto& R : regions)
        for (const auto& v : region_points(R, sp, n))
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    if (out.empty()) throw invalid_region("region contains no lattice points");
    return out;
}

double proportion_se(double p, double trials) { return std::sqrt(std::max(0.0, p * (1.0 - p)) / trials); }

}  // namespace

double ks_tail(double lambda) {
    if (!(lambda > 0.0)) return 1.0;
    double s = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        s += (j % 2 == 1 ? 2.0 : -2.0) * term;
    }
    return std::clamp(s, 0.0, 1.0);
}

ks_result ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw empty_sample("two-sample KS needs two nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() || j < b.size()) {
        double v;
        if (j == b.size() || (i < a.size() && a[i] <= b[j])) v = a[i];
        else v = b[j];
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return {d, ks_tail(std::sqrt(na * nb / (na + nb)) * d)};
}

ks_result ks_two_sample(const sample_batch& a, const sample_batch& b) { return ks_two_sample(a.values, b.values); }

power_fit loglog_fit(const std::vector<double>& sizes, const std::vector<double>& values) {
    if (sizes.size() != values.size()) throw invalid_param("sizes and values differ in length");
    if (sizes.size() < 3) throw insufficient_data("exponent fit needs at least three sizes");
    const double k = static_cast<double>(sizes.size());
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (!(sizes[i] > 0.0) || !(values[i] > 0.0)) throw invalid_param("exponent fit needs positive data");
        lx.push_back(std::log(sizes[i]));
        ly.push_back(std::log(values[i]));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw insufficient_data("exponent fit needs distinct sizes");
    power_fit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - f.intercept - f.slope * lx[i];
        ssr += e * e;
    }
    f.stderr_ = std::sqrt(ssr / (k - 2.0) / sxx);
    return f;
}

double sample_sd(const std::vector<double>& v) {
    if (v.size() < 2) throw insufficient_data("standard deviation needs two values");
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

power_fit exponent_fit(const model_spec& model, const std::vector<std::int64_t>& sizes, std::int64_t trials,
                       fit_statistic statistic, std::uint64_t seed, int threads) {
    if (sizes.size() < 3) throw insufficient_data("exponent fit needs at least three sizes");
    std::vector<double> xs, ys;
    for (std::int64_t n : sizes) {
        const bool geo = statistic == fit_statistic::geodesic_mid_sd;
        const auto batch = corner_trials(model, n, trials, rng::stream(seed, static_cast<std::uint64_t>(n)), threads, geo);
        xs.push_back(static_cast<double>(n));
        ys.push_back(sample_sd(geo ? batch.midpoint : batch.passage));
    }
    return loglog_fit(xs, ys);
}

sheet_grid prelimit_sheet(const lattice_env& env, const std::vector<std::int64_t>& starts,
                          const std::vector<std::int64_t>& ends) {
    if (starts.empty() || ends.empty()) throw empty_sample("sheet needs starts and ends");
    const std::int64_t last = *std::max_element(ends.begin(), ends.end());
    sheet_grid g;
    for (auto s : starts) g.xs.push_back(static_cast<double>(s));
    for (auto e : ends) g.ys.push_back(static_cast<double>(e));
    for (auto s : starts) {
        const lpp_table t(env, {s, env.n_max()}, {last, env.n_min()});
        for (auto e : ends) {
            if (e < s) throw unordered("sheet start lies right of an end");
            g.values.push_back(t(e, env.n_min()));
        }
    }
    return g;
}

shock_cells shock_measure(const sheet_grid& g) {
    shock_cells out;
    if (g.xs.size() < 2 || g.ys.size() < 2) return out;
    out.nx = g.xs.size() - 1;
    out.ny = g.ys.size() - 1;
    out.min = pos_inf;
    for (std::size_t i = 0; i < out.nx; ++i) {
        for (std::size_t j = 0; j < out.ny; ++j) {
            const double mu = g(i + 1, j + 1) + g(i, j) - g(i, j + 1) - g(i + 1, j);
            out.cells.push_back(mu);
            out.min = std::min(out.min, mu);
        }
    }
    return out;
}

std::array<double, 5> embed_graph_point(const landscape_point& r, double value) {
    if (std::isnan(value)) throw invalid_param("graph value is NaN");
    const double sep = std::hypot(r[0] - r[2], r[1] - r[3]);
    if (!(sep > 0.0)) throw invalid_param("graph point lies on the diagonal");
    const double norm = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3]);
    const double scale = sep * std::exp(-norm);
    double e;
    if (value == pos_inf) e = scale;
    else if (value == neg_inf) e = -scale;
    else e = scale * value / (1.0 + std::abs(value));
    return {r[0], r[1], r[2], r[3], e};
}

double graph_distance(const std::vector<landscape_point>& points, const std::vector<double>& f,
                      const std::vector<double>& g) {
    if (points.empty()) throw empty_sample("graph distance needs sample points");
    if (f.size() != points.size() || g.size() != points.size())
        throw invalid_param("sampled functions must share the sample set");
    std::vector<std::array<double, 5>> A, B;
    for (std::size_t i = 0; i < points.size(); ++i) {
        A.push_back(embed_graph_point(points[i], f[i]));
        B.push_back(embed_graph_point(points[i], g[i]));
    }
    auto dist = [](const std::array<double, 5>& u, const std::array<double, 5>& v) {
        double s = 0.0;
        for (std::size_t k = 0; k < 5; ++k) s += (u[k] - v[k]) * (u[k] - v[k]);
        return std::sqrt(s);
    };
    auto directed = [&](const std::vector<std::array<double, 5>>& X, const std::vector<std::array<double, 5>>& Y) {
        double worst = 0.0;
        for (const auto& x : X) {
            double best = pos_inf;
            for (const auto& y : Y) best = std::min(best, dist(x, y));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(A, B), directed(B, A));
}

maxineq_result maximal_inequality_mc(const maxineq_config& cfg, int threads) {
    if (cfg.model.kind != model_kind::exponential && cfg.model.kind != model_kind::geometric)
        throw invalid_param("maximal inequality runs on the geometric or exponential lattice model");
    if (cfg.trials < 1) throw invalid_param("trial count must be positive");
    if (!(cfg.eps > 0.0)) throw invalid_param("epsilon must be positive");
    if (!(cfg.sp < cfg.sq)) throw invalid_region("p must precede q in time");
    if (cfg.A.empty() || cfg.B.empty()) throw invalid_region("A and B must be nonempty");
    for (const auto* set : {&cfg.A, &cfg.B})
        for (const auto& R : *set)
            if (R.s0 < cfg.sp || R.s1 > cfg.sq) throw invalid_region("region leaves the time span of p and q");

    const scaling_params sp = scaling_params_for(cfg.model, cfg.rho);
    const double n = cfg.n;
    const lattice_point p = rescaled_point(sp, n, cfg.xp, cfg.sp);
    const lattice_point q = rescaled_point(sp, n, cfg.xq, cfg.sq);
    if (!ordered(p, q)) throw invalid_region("p and q are not ordered on the lattice");
    const auto A = union_points(cfg.A, sp, n);
    const auto B = union_points(cfg.B, sp, n);

    std::int64_t c_lo = p.x, c_hi = q.x;
    for (const auto* set : {&A, &B})
        for (const auto& v : *set) {
            c_lo = std::min(c_lo, v.x);
            c_hi = std::max(c_hi, v.x);
        }
    const std::int64_t W = c_hi - c_lo + 1, H = p.n - q.n + 1;
    auto idx = [&](lattice_point v) { return static_cast<std::size_t>((p.n - v.n) * W + (v.x - c_lo)); };
    auto h = [&](lattice_point v) {
        return -sp.alpha * static_cast<double>(v.n) + sp.beta * (static_cast<double>(v.x) + sp.rho * static_cast<double>(v.n));
    };
    const double scale = sp.chi_n(n);
    std::vector<char> in_a(static_cast<std::size_t>(W * H), 0);
    for (const auto& v : A) in_a[idx(v)] = 1;

    const auto T = static_cast<std::size_t>(cfg.trials);
    std::vector<char> event(T, 0), hit_a(T * A.size(), 0), hit_b(T * B.size(), 0);
    parallel_for(cfg.trials, threads, [&](std::int64_t trial) {
        const auto env = sample_model_env(cfg.model, {c_lo, q.n}, W, H,
                                          rng::trial_seed(cfg.seed, experiment_tag::maximal, trial));
        const std::size_t N = static_cast<std::size_t>(W * H);
        std::vector<double> fwd(N, neg_inf), bwd(N, neg_inf), multi(N, neg_inf);
        // Rows from p.n down to q.n, columns left to right.
        for (std::int64_t r = p.n; r >= q.n; --r) {
            for (std::int64_t c = c_lo; c <= c_hi; ++c) {
                const lattice_point v{c, r};
                const std::size_t u = idx(v);
                const double w = env.at(c, r);
                double pf = neg_inf, pm = neg_inf;
                if (c > c_lo) {
                    pf = fwd[u - 1];
                    pm = multi[u - 1];
                }
                if (r < p.n) {
                    pf = std::max(pf, fwd[u - static_cast<std::size_t>(W)]);
                    pm = std::max(pm, multi[u - static_cast<std::size_t>(W)]);
                }
                if (v == p) pf = 0.0;
                fwd[u] = pf == neg_inf ? neg_inf : pf + w;
                multi[u] = pm == neg_inf ? neg_inf : pm + w;
                if (in_a[u]) multi[u] = std::max(multi[u], h(v));
            }
        }
        for (std::int64_t r = q.n; r <= p.n; ++r) {
            for (std::int64_t c = c_hi; c >= c_lo; --c) {
                const lattice_point v{c, r};
                const std::size_t u = idx(v);
                double nx = neg_inf;
                if (c < c_hi) nx = bwd[u + 1];
                if (r > q.n) nx = std::max(nx, bwd[u + static_cast<std::size_t>(W)]);
                if (v == q) nx = 0.0;
                bwd[u] = nx == neg_inf ? neg_inf : nx + env.at(c, r);
            }
        }
        const double wp = env.at(p.x, p.n);
        auto d_from_p = [&](lattice_point v) { return (fwd[idx(v)] - wp - h(v) + h(p)) / scale; };
        auto d_to_q = [&](lattice_point v) { return (bwd[idx(v)] - env.at(v.x, v.n) - h(q) + h(v)) / scale; };
        double dab = neg_inf;
        for (const auto& b : B) dab = std::max(dab, (multi[idx(b)] - h(b)) / scale);
        const auto t = static_cast<std::size_t>(trial);
        event[t] = d_from_p(q) <= cfg.c - 2.0 * cfg.eps && cfg.c < dab;
        for (std::size_t i = 0; i < A.size(); ++i) hit_a[t * A.size() + i] = d_from_p(A[i]) < -cfg.eps;
        for (std::size_t i = 0; i < B.size(); ++i) hit_b[t * B.size() + i] = d_to_q(B[i]) < -cfg.eps;
    });

    const double trials = static_cast<double>(cfg.trials);
    maxineq_result res;
    res.points_a = A.size();
    res.points_b = B.size();
    res.lhs = static_cast<double>(std::count(event.begin(), event.end(), 1)) / trials;
    res.lhs_se = proportion_se(res.lhs, trials);
    auto sup_rate = [&](const std::vector<char>& hits, std::size_t m) {
        double best = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t k = 0;
            for (std::size_t t = 0; t < T; ++t) k += static_cast<std::size_t>(hits[t * m + i]);
            best = std::max(best, static_cast<double>(k) / trials);
        }
        return best;
    };
    const double ra = sup_rate(hit_a, A.size());
    const double rb = sup_rate(hit_b, B.size());
    res.rhs = ra + rb;
    res.rhs_se = std::hypot(proportion_se(ra, trials), proportion_se(rb, trials));
    res.pass = res.lhs <= res.rhs + 3.0 * (res.lhs_se + res.rhs_se);
    return res;
}

std::vector<std::pair<int, double>> busemann_profile(const line_env& f, double x, double y, double z,
                                                     const std::vector<int>& ks, double origin, double scale) {
    if (!(x > 0.0)) throw invalid_param("Busemann profile needs x > 0");
    const line_env W = melon(f);
    const auto lines = static_cast<int>(W.n_lines());
    std::vector<std::pair<int, double>> out;
    for (int k : ks) {
        if (k < 1 || k > lines) throw k_range_too_large("k = " + std::to_string(k) + " exceeds the line count");
        const double t = origin - scale * std::sqrt(static_cast<double>(k) / (2.0 * x));
        if (t < W.x_min() || t > std::min(y, z))
            throw k_range_too_large("start time for k = " + std::to_string(k) + " leaves the domain");
        const double a = line_lpp_value(W, {t, k}, {y, 1});
        const double b = line_lpp_value(W, {t, k}, {z, 1});
        out.emplace_back(k, a - b);
    }
    return out;
}

void write_stat_rows(std::ostream& os, const std::vector<stat_row>& rows) {
    os << "name,value,stderr,n,trials,seed\n";
    for (const auto& r : rows)
        os << r.name << ',' << fmt17(r.value) << ',' << fmt17(r.stderr_) << ',' << r.n << ',' << r.trials << ','
           << r.seed << '\n';
}

}  // namespace kpzlab
