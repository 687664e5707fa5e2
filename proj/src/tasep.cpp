#include "kpzlab/tasep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>

#include "kpzlab/core_metric.hpp"
#include "kpzlab/errors.hpp"
#include "kpzlab/rng.hpp"

namespace kpzlab {

namespace {

bool even(std::int64_t v) { return (v & 1) == 0; }

constexpr std::int64_t max_depth = std::int64_t{1} << 20;

std::vector<std::int64_t> wedge_padded(const height_function& f, std::int64_t pad) {
    std::vector<std::int64_t> h;
    h.reserve(f.h.size() + 2 * static_cast<std::size_t>(pad));
    for (std::int64_t j = pad; j >= 1; --j) h.push_back(f.h.front() - j);
    h.insert(h.end(), f.h.begin(), f.h.end());
    for (std::int64_t j = 1; j <= pad; ++j) h.push_back(f.h.back() - j);
    return h;
}

std::int64_t light_cone_pad(double light_cone, double t_end) {
    if (!(light_cone > 0.0)) throw invalid_param("light-cone constant must be positive");
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(light_cone * t_end)));
}

// Event-driven run on sites a, a+1, ...; frozen ends never flip, open ends
// treat the missing neighbour as lower. Returns one snapshot per record time.
std::vector<std::vector<std::int64_t>> simulate(const clock_field& clocks, std::int64_t a,
                                                std::vector<std::int64_t> h, bool frozen_ends,
                                                const std::vector<double>& times) {
    const auto W = static_cast<std::int64_t>(h.size());
    auto local_max = [&](std::int64_t i) {
        if (i == 0 || i == W - 1) {
            if (frozen_ends || W == 1) return false;
            const std::int64_t nb = i == 0 ? h[1] : h[static_cast<std::size_t>(W - 2)];
            return nb < h[static_cast<std::size_t>(i)];
        }
        const auto u = static_cast<std::size_t>(i);
        return h[u - 1] < h[u] && h[u + 1] < h[u];
    };

    using event = std::pair<double, std::int64_t>;
    std::priority_queue<event, std::vector<event>, std::greater<>> queue;
    std::vector<char> scheduled(h.size(), 0);
    auto schedule = [&](std::int64_t i, double now) {
        const auto u = static_cast<std::size_t>(i);
        if (scheduled[u] || !local_max(i)) return;
        scheduled[u] = 1;
        queue.emplace(now + clocks(h[u], a + i), i);
    };
    for (std::int64_t i = 0; i < W; ++i) schedule(i, 0.0);

    std::vector<std::vector<std::int64_t>> out;
    out.reserve(times.size());
    for (double r : times) {
        while (!queue.empty() && queue.top().first <= r) {
            const auto [now, i] = queue.top();
            queue.pop();
            const auto u = static_cast<std::size_t>(i);
            scheduled[u] = 0;
            h[u] -= 2;
            if (i > 0) schedule(i - 1, now);
            if (i + 1 < W) schedule(i + 1, now);
        }
        out.push_back(h);
    }
    return out;
}

// Heights at time t from the flip-time recursion on a finite window:
// T(x, k) = X(k, x) + max(T(x-1, k+1), T(x+1, k+1), 0 if k = h0(x)), -inf above
// h0. Frozen ends have T = +inf at and below h0; open ends see -inf outside.
// The height is the largest k with T(x, k) > t.
std::vector<std::int64_t> field_heights(const clock_field& clocks, std::int64_t a,
                                        const std::vector<std::int64_t>& h0, bool frozen_ends, double t) {
    const auto W = static_cast<std::int64_t>(h0.size());
    const std::int64_t top = *std::max_element(h0.begin(), h0.end());
    std::vector<double> prev(h0.size(), neg_inf), cur(h0.size());
    std::vector<std::int64_t> out(h0.size(), std::numeric_limits<std::int64_t>::min());
    std::int64_t unresolved = W;
    for (std::int64_t k = top; unresolved > 0; --k) {
        if (top - k > max_depth) throw window_too_small("flip-time recursion did not reach time t");
        for (std::int64_t i = 0; i < W; ++i) {
            const auto u = static_cast<std::size_t>(i);
            const std::int64_t x = a + i;
            double& T = cur[u];
            if (!even(x + k) || k > h0[u]) {
                T = neg_inf;
                continue;
            }
            if (frozen_ends && (i == 0 || i == W - 1)) {
                T = pos_inf;
            } else {
                double m = k == h0[u] ? 0.0 : neg_inf;
                if (i > 0) m = std::max(m, prev[u - 1]);
                if (i + 1 < W) m = std::max(m, prev[u + 1]);
                T = m == neg_inf ? neg_inf : clocks(k, x) + m;
            }
            if (out[u] == std::numeric_limits<std::int64_t>::min() && T > t) {
                out[u] = k;
                --unresolved;
            }
        }
        std::swap(prev, cur);
    }
    return out;
}

std::vector<std::int64_t> variational(const clock_field& clocks, std::int64_t a, const std::vector<std::int64_t>& f,
                                      bool frozen_ends, double t) {
    const auto W = static_cast<std::int64_t>(f.size());
    std::vector<std::int64_t> best(f.size(), std::numeric_limits<std::int64_t>::min());
    std::vector<std::int64_t> wedge(f.size());
    for (std::int64_t s = 0; s < W; ++s) {
        const std::int64_t peak = f[static_cast<std::size_t>(s)];
        for (std::int64_t i = 0; i < W; ++i) wedge[static_cast<std::size_t>(i)] = peak - std::abs(i - s);
        const auto h = field_heights(clocks, a, wedge, frozen_ends, t);
        for (std::size_t i = 0; i < h.size(); ++i) best[i] = std::max(best[i], h[i]);
    }
    return best;
}

void check_sources(const std::vector<lattice_site>& sources) {
    if (sources.empty()) throw invalid_param("source set is empty");
    for (const auto& p : sources)
        if (!even(p.x + p.n))
            throw parity_error("source (" + std::to_string(p.x) + ", " + std::to_string(p.n) +
                               ") is not an even lattice point");
}

cone_field padded_cone(const clock_field& clocks, const std::vector<lattice_site>& sources, std::int64_t a,
                       std::int64_t b, std::int64_t kappa_lo) {
    std::int64_t lo = a, hi = b, top = sources.front().n;
    for (const auto& p : sources) {
        lo = std::min(lo, p.x);
        hi = std::max(hi, p.x);
        top = std::max(top, p.n);
    }
    const std::int64_t depth = std::max<std::int64_t>(0, top - kappa_lo);
    return cone_field(clocks, sources, lo - depth, hi + depth, kappa_lo);
}

}  // namespace

std::int64_t height_function::operator()(std::int64_t x) const {
    if (!contains(x)) throw out_of_window("site " + std::to_string(x) + " is outside the height window");
    return h[static_cast<std::size_t>(x - a)];
}

void validate_height(const height_function& f) {
    if (f.h.empty()) throw invalid_param("height function has an empty window");
    for (std::size_t i = 0; i < f.h.size(); ++i) {
        const std::int64_t x = f.a + static_cast<std::int64_t>(i);
        if (!even(x + f.h[i]))
            throw invalid_param("height at site " + std::to_string(x) + " has the wrong parity");
        if (i > 0 && std::abs(f.h[i] - f.h[i - 1]) != 1)
            throw invalid_param("height increments must be +1 or -1");
    }
}

height_function narrow_wedge(lattice_point p, std::int64_t a, std::int64_t b, boundary_mode mode) {
    if (b < a) throw invalid_param("empty window");
    if (!even(p.x + p.n)) throw parity_error("wedge tip is not an even lattice point");
    height_function f{a, {}, mode};
    for (std::int64_t x = a; x <= b; ++x) f.h.push_back(p.n - std::abs(x - p.x));
    return f;
}

height_function flat_height(std::int64_t a, std::int64_t b, boundary_mode mode) {
    if (b < a) throw invalid_param("empty window");
    height_function f{a, {}, mode};
    for (std::int64_t x = a; x <= b; ++x) f.h.push_back(even(x) ? 0 : 1);
    return f;
}

height_function pointwise_max(const height_function& f, const height_function& g) {
    if (f.a != g.a || f.h.size() != g.h.size()) throw invalid_param("height windows differ");
    height_function out = f;
    for (std::size_t i = 0; i < out.h.size(); ++i) out.h[i] = std::max(f.h[i], g.h[i]);
    return out;
}

cone_field::cone_field(const clock_field& clocks, const std::vector<lattice_site>& sources, std::int64_t x_lo,
                       std::int64_t x_hi, std::int64_t kappa_lo)
    : x_lo_(x_lo), x_hi_(x_hi), k_lo_(kappa_lo), k_hi_(kappa_lo), w_(x_hi - x_lo + 1) {
    check_sources(sources);
    if (x_hi < x_lo) throw invalid_param("empty column range");
    for (const auto& p : sources) k_hi_ = std::max(k_hi_, p.n);
    const std::int64_t rows = k_hi_ - k_lo_ + 1;
    d_.assign(static_cast<std::size_t>(rows * w_), neg_inf);
    m_.assign(d_.size(), neg_inf);
    for (const auto& p : sources)
        if (p.n >= k_lo_ && p.x >= x_lo_ && p.x <= x_hi_) m_[index(p.x, p.n)] = 0.0;
    for (std::int64_t k = k_hi_; k >= k_lo_; --k) {
        for (std::int64_t x = x_lo_; x <= x_hi_; ++x) {
            if (!even(x + k)) continue;
            const std::size_t u = index(x, k);
            double m = m_[u];
            if (k < k_hi_) {
                if (x > x_lo_) m = std::max(m, d_[index(x - 1, k + 1)]);
                if (x < x_hi_) m = std::max(m, d_[index(x + 1, k + 1)]);
            }
            m_[u] = m;
            if (m != neg_inf) d_[u] = clocks(k, x) + m;
        }
    }
}

std::size_t cone_field::index(std::int64_t x, std::int64_t kappa) const {
    return static_cast<std::size_t>((k_hi_ - kappa) * w_ + (x - x_lo_));
}

double cone_field::operator()(std::int64_t x, std::int64_t kappa) const {
    if (kappa > k_hi_) return neg_inf;
    if (x < x_lo_ || x > x_hi_ || kappa < k_lo_) throw out_of_window("point outside the cone field");
    return d_[index(x, kappa)];
}

double cone_field::before(std::int64_t x, std::int64_t kappa) const {
    if (kappa > k_hi_) return neg_inf;
    if (x < x_lo_ || x > x_hi_ || kappa < k_lo_) throw out_of_window("point outside the cone field");
    return m_[index(x, kappa)];
}

bool ball_grid::operator()(std::int64_t x, std::int64_t kappa) const {
    if (x < window.a || x > window.b || kappa < window.kappa_lo || kappa > window.kappa_hi)
        throw out_of_window("point outside the ball window");
    const std::int64_t w = window.b - window.a + 1;
    return inside[static_cast<std::size_t>((window.kappa_hi - kappa) * w + (x - window.a))] != 0;
}

ball_grid backwards_ball(const clock_field& clocks, const std::vector<lattice_site>& sources, double t,
                         const ball_window& window) {
    check_sources(sources);
    if (window.b < window.a || window.kappa_hi < window.kappa_lo) throw invalid_param("empty ball window");
    const cone_field D = padded_cone(clocks, sources, window.a, window.b, window.kappa_lo);
    ball_grid g{window, {}};
    const std::int64_t w = window.b - window.a + 1;
    g.inside.assign(static_cast<std::size_t>((window.kappa_hi - window.kappa_lo + 1) * w), 0);
    for (std::int64_t k = window.kappa_hi; k >= window.kappa_lo; --k) {
        for (std::int64_t x = window.a; x <= window.b; ++x) {
            if (!even(x + k) || !(D.before(x, k) > t)) continue;
            if ((x == window.a || x == window.b) && window.a != window.b)
                throw window_too_small("backwards ball reaches the side of the window at site " +
                                       std::to_string(x));
            g.inside[static_cast<std::size_t>((window.kappa_hi - k) * w + (x - window.a))] = 1;
        }
    }
    return g;
}

height_function interface(const clock_field& clocks, const std::vector<lattice_site>& sources, double t,
                          std::int64_t a, std::int64_t b) {
    check_sources(sources);
    if (b < a) throw invalid_param("empty window");
    if (t < 0.0) throw invalid_param("interface radius must be nonnegative");
    std::int64_t top = sources.front().n;
    for (const auto& p : sources) top = std::max(top, p.n);
    for (std::int64_t depth = 16;; depth *= 2) {
        if (depth > max_depth) throw window_too_small("interface lies deeper than the search limit");
        const cone_field D = padded_cone(clocks, sources, a, b, top - depth);
        height_function out{a, {}, boundary_mode::frozen};
        bool complete = true;
        for (std::int64_t x = a; x <= b && complete; ++x) {
            std::int64_t found = std::numeric_limits<std::int64_t>::min();
            for (std::int64_t k = top; k >= top - depth; --k) {
                if (even(x + k) && D(x, k) > t) {
                    found = k;
                    break;
                }
            }
            if (found == std::numeric_limits<std::int64_t>::min()) complete = false;
            out.h.push_back(found);
        }
        if (complete) return out;
    }
}

tasep_trace tasep_direct(const clock_field& clocks, const height_function& h0, std::vector<double> record_times,
                         double light_cone) {
    validate_height(h0);
    for (double r : record_times)
        if (!(r >= 0.0) || !std::isfinite(r)) throw invalid_param("record times must be finite and nonnegative");
    std::sort(record_times.begin(), record_times.end());
    tasep_trace trace{record_times, {}};
    if (record_times.empty()) return trace;
    const double t_end = record_times.back();

    if (h0.mode == boundary_mode::frozen) {
        for (auto& h : simulate(clocks, h0.a, h0.h, true, record_times)) trace.snapshots.push_back({h0.a, h, h0.mode});
        return trace;
    }
    const std::int64_t pad = light_cone_pad(light_cone, t_end);
    const auto padded = wedge_padded(h0, pad);
    const auto upper = simulate(clocks, h0.a - pad, padded, true, record_times);
    const auto lower = simulate(clocks, h0.a - pad, padded, false, record_times);
    for (std::size_t j = 0; j < record_times.size(); ++j) {
        std::vector<std::int64_t> hu(upper[j].begin() + pad, upper[j].end() - pad);
        std::vector<std::int64_t> hl(lower[j].begin() + pad, lower[j].end() - pad);
        if (hu != hl)
            throw boundary_breach("padding of " + std::to_string(pad) + " sites is contaminated by time " +
                                  std::to_string(record_times[j]));
        trace.snapshots.push_back({h0.a, std::move(hu), h0.mode});
    }
    return trace;
}

height_function tasep_general(const clock_field& clocks, const height_function& f, double t, double light_cone) {
    validate_height(f);
    if (!(t >= 0.0) || !std::isfinite(t)) throw invalid_param("time must be finite and nonnegative");
    if (f.mode == boundary_mode::frozen) return {f.a, variational(clocks, f.a, f.h, true, t), f.mode};

    const std::int64_t pad = light_cone_pad(light_cone, t);
    const auto padded = wedge_padded(f, pad);
    const auto upper = variational(clocks, f.a - pad, padded, true, t);
    const auto lower = variational(clocks, f.a - pad, padded, false, t);
    std::vector<std::int64_t> hu(upper.begin() + pad, upper.end() - pad);
    std::vector<std::int64_t> hl(lower.begin() + pad, lower.end() - pad);
    if (hu != hl) throw boundary_breach("padding of " + std::to_string(pad) + " sites is contaminated");
    return {f.a, std::move(hu), f.mode};
}

height_function tasep_discrete(double p, const height_function& h0, std::int64_t steps, std::uint64_t seed) {
    if (!(p > 0.0 && p <= 1.0)) throw invalid_param("flip probability must lie in (0, 1]");
    if (steps < 0) throw invalid_param("step count must be nonnegative");
    validate_height(h0);
    const std::uint64_t s = rng::stream(seed, rng::tag::discrete_tasep);
    height_function h = h0;
    std::vector<std::size_t> flips;
    for (std::int64_t step = 1; step <= steps; ++step) {
        flips.clear();
        for (std::size_t i = 1; i + 1 < h.h.size(); ++i)
            if (h.h[i - 1] < h.h[i] && h.h[i + 1] < h.h[i] &&
                rng::uniform(s, step, h.a + static_cast<std::int64_t>(i)) <= p)
                flips.push_back(i);
        for (std::size_t i : flips) h.h[i] -= 2;
    }
    return h;
}

discrete_constants_t discrete_constants(double p) {
    if (!(p > 0.0 && p < 1.0)) throw invalid_param("discrete tasep constants need p in (0, 1)");
    const double q = 1.0 - p;
    const double sq = std::sqrt(q);
    const double c1 = std::cbrt(2.0) * std::pow(1.0 - sq, 3) / (std::cbrt(p) * std::pow(q, 1.0 / 6.0));
    const double c2 = std::cbrt(2.0) * std::pow(1.0 + sq, 2.0 / 3.0) / std::pow(q, 1.0 / 6.0);
    const double c3 = (1.0 + sq) / p;
    return {c1, c2, c3};
}

std::vector<std::pair<double, double>> rescale_height(const height_function& h, double tasep_time, double n,
                                                      rescale_mode mode, const std::vector<double>& ys) {
    if (!(n > 0.0)) throw invalid_param("n must be positive");
    if (h.h.empty()) throw invalid_param("height function has an empty window");
    const double n13 = std::cbrt(n);
    const double n23 = n13 * n13;
    const double shift = mode == rescale_mode::centered ? n23 * (tasep_time / (2.0 * n)) : 0.0;
    std::vector<std::pair<double, double>> out;
    out.reserve(ys.size());
    for (double y : ys) {
        const double s = 2.0 * n23 * y;
        if (!(s >= static_cast<double>(h.a) && s <= static_cast<double>(h.b())))
            throw out_of_window("rescaled point " + std::to_string(y) + " maps outside the height window");
        const double fl = std::floor(s);
        const auto i = static_cast<std::int64_t>(fl) - h.a;
        const double frac = s - fl;
        const auto u = static_cast<std::size_t>(i);
        double v = static_cast<double>(h.h[u]);
        if (frac > 0.0) v += frac * static_cast<double>(h.h[u + 1] - h.h[u]);
        out.emplace_back(y, v / n13 + shift);
    }
    return out;
}

}  // namespace kpzlab
