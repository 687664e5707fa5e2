#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kpzlab/env.hpp"

// Tasep height functions, the narrow wedge field of the rotated exponential
// metric and its interfaces. Points of the even lattice are written
// (x, kappa): site x, height kappa, with x + kappa even. The clock consumed
// when h(x) drops from kappa to kappa - 2 is clocks(kappa, x).
namespace kpzlab {

enum class boundary_mode {
    frozen,          // the two end sites never move; an exact finite system
    wedge_extended,  // the line extended by h(a - j) = h(a) - j, h(b + j) = h(b) - j
};

struct height_function {
    std::int64_t a = 0;              // leftmost site
    std::vector<std::int64_t> h;     // h[i] = height at site a + i
    boundary_mode mode = boundary_mode::frozen;

    std::int64_t b() const { return a + static_cast<std::int64_t>(h.size()) - 1; }
    bool contains(std::int64_t x) const { return x >= a && x <= b(); }
    std::int64_t operator()(std::int64_t x) const;  // throws out_of_window
    bool operator==(const height_function& o) const { return a == o.a && h == o.h; }
};

// Throws invalid_param unless |h(i) - h(i - 1)| = 1 and h(x) + x is even.
void validate_height(const height_function& f);

// N^p(x) = p.kappa - |x - p.x| on [a, b].
height_function narrow_wedge(lattice_point p, std::int64_t a, std::int64_t b,
                             boundary_mode mode = boundary_mode::frozen);
// Alternating heights h(x) = x mod 2 on [a, b].
height_function flat_height(std::int64_t a, std::int64_t b, boundary_mode mode = boundary_mode::frozen);
height_function pointwise_max(const height_function& f, const height_function& g);

// Point of the even lattice, x = site, n = height.
using lattice_site = lattice_point;

// D(c) for lattice points c below the sources: the largest clock sum over
// chains p = r_0, r_1, ..., r_k = c with unit diagonal steps down, counting
// every chain point including both ends. -inf off the cones.
class cone_field {
public:
    cone_field(const clock_field& clocks, const std::vector<lattice_site>& sources, std::int64_t x_lo,
               std::int64_t x_hi, std::int64_t kappa_lo);
    std::int64_t x_lo() const { return x_lo_; }
    std::int64_t x_hi() const { return x_hi_; }
    std::int64_t kappa_lo() const { return k_lo_; }
    std::int64_t kappa_hi() const { return k_hi_; }
    // D(x, kappa). Exact when every source-to-point chain stays inside the
    // computed columns; callers pad by the depth kappa_hi - kappa_lo.
    double operator()(std::int64_t x, std::int64_t kappa) const;
    // D(x, kappa) before the clock of (x, kappa) is added: the largest chain
    // sum that leaves out the last point; 0 at a source.
    double before(std::int64_t x, std::int64_t kappa) const;

private:
    std::size_t index(std::int64_t x, std::int64_t kappa) const;
    std::int64_t x_lo_, x_hi_, k_lo_, k_hi_, w_;
    std::vector<double> d_, m_;
};

struct ball_window {
    std::int64_t a = 0, b = 0;              // sites
    std::int64_t kappa_lo = 0, kappa_hi = 0;  // heights
};

struct ball_grid {
    ball_window window{};
    std::vector<char> inside;  // row-major from kappa_hi down, then site a..b
    bool operator()(std::int64_t x, std::int64_t kappa) const;
};

// Lattice points y of the window with d(y, x) > t for some x in S, where d sums
// the clocks of every chain point except y itself (so d(x, x) = 0). The ball
// is a downward set; throws window_too_small when a marked point sits on a
// side column, since the ball then continues outside the window.
ball_grid backwards_ball(const clock_field& clocks, const std::vector<lattice_site>& sources, double t,
                         const ball_window& window);

// I(x) = max{kappa : D(x, kappa) > t}, the top of the closed ball, on [a, b].
// At t = 0 with one source p this is the narrow wedge N^p. Exact on the
// infinite line.
height_function interface(const clock_field& clocks, const std::vector<lattice_site>& sources, double t,
                          std::int64_t a, std::int64_t b);

struct tasep_trace {
    std::vector<double> times;
    std::vector<height_function> snapshots;
};

// Event-driven continuous-time tasep. A site that becomes a local maximum of
// value kappa at time s flips at s + clocks(kappa, x). Frozen mode keeps the
// end sites fixed. Wedge-extended mode pads the window by ceil(light_cone *
// t_end) sites, runs the padded system with frozen and with open ends, and
// throws boundary_breach if they differ on the original window.
tasep_trace tasep_direct(const clock_field& clocks, const height_function& h0, std::vector<double> record_times,
                         double light_cone = 8.0);

// max over sites x of the narrow wedge fields h(t, .; (x, f(x))) under shared
// clocks, with the same boundary treatment as tasep_direct.
height_function tasep_general(const clock_field& clocks, const height_function& f, double t,
                              double light_cone = 8.0);

// Discrete-time tasep: every step each local maximum drops by 2 independently
// with probability p (p = 1 is deterministic). End sites are frozen.
height_function tasep_discrete(double p, const height_function& h0, std::int64_t steps, std::uint64_t seed);

struct discrete_constants_t {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};
// Throws invalid_param unless p lies in (0, 1).
discrete_constants_t discrete_constants(double p);

enum class rescale_mode { iota, centered };

// iota: y -> h(2 n^{2/3} y) / n^{1/3}; centered: n^{-1/3} h(2 n^{2/3} y) + n^{2/3} t
// for the snapshot at tasep time 2 n t. Linear interpolation between sites.
// Throws out_of_window.
std::vector<std::pair<double, double>> rescale_height(const height_function& h, double tasep_time, double n,
                                                      rescale_mode mode, const std::vector<double>& ys);

}  // namespace kpzlab
