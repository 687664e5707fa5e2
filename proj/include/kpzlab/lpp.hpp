#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "kpzlab/core_metric.hpp"
#include "kpzlab/env.hpp"

// Lattice last passage percolation. Paths take steps (x+1, n) or (x, n-1),
// so p -> q requires p.x <= q.x and p.n >= q.n. Both endpoint weights are
// collected.
namespace kpzlab {

struct path {
    std::vector<lattice_point> vertices;
};

enum class side { leftmost, rightmost };

bool ordered(lattice_point p, lattice_point q);

// Values G[p -> r] for every r in the rectangle [p.x, q.x] x [q.n, p.n].
class lpp_table {
public:
    lpp_table(const lattice_env& env, lattice_point p, lattice_point q);
    double operator()(std::int64_t x, std::int64_t n) const {
        return v_[static_cast<std::size_t>((p_.n - n) * w_ + (x - p_.x))];
    }
    lattice_point start() const { return p_; }
    lattice_point end() const { return q_; }

private:
    lattice_point p_, q_;
    std::int64_t w_;
    std::vector<double> v_;
};

double lpp_value(const lattice_env& env, lattice_point p, lattice_point q);

// G[p^k -> q^k]: path i runs from (p.x, p.n - k + i) to (q.x, q.n + i - 1),
// paths pairwise vertex-disjoint.
double lpp_multipoint(const lattice_env& env, lattice_point p, lattice_point q, int k);

path geodesic(const lattice_env& env, lattice_point p, lattice_point q, side s);

double path_weight(const lattice_env& env, const path& pi);

// pi is to the left of rho: every (x, l) in pi has some (y, m) in rho with
// l <= m and x <= y.
bool left_of(const path& pi, const path& rho);

// Rightmost geodesics for (x, n; y, m) and (x', n; y', m) with x <= x' and
// y <= y': true iff the first is left of the second and their intersection
// is a path. Throws contract_violation when the endpoints are not nested.
bool geodesic_monotonicity_check(const lattice_env& env, lattice_point p, lattice_point q,
                                 lattice_point p2, lattice_point q2);

// Lattice-embedded first passage value f[(x, m) ->_f (y, n)] over complementary
// paths (rows are mapped to lines as in embed_lattice).
double first_passage(const lattice_env& env, lattice_point p, lattice_point q);

// Planar Poisson last passage: the longest strictly increasing chain of points
// in [a1, c1] x [a2, c2], ignoring a point located exactly at a. -inf when the
// corners are not ordered.
double poisson_lpp(const point_set& P, std::pair<double, double> a, std::pair<double, double> c);

// Seppalainen-Johansson passage time: east steps (x, n) -> (x+1, n) cost the
// weight of (x, n), down steps are free; minimum over monotone paths.
double sj_passage_value(const lattice_env& env, lattice_point p, lattice_point q);

// Finite directed metric (negative sign) of last passage values among the
// given points, in the directed-metric convention d(a, c) = G[a -> c] - w(a)
// for a != c.
distance_table lpp_distance_table(const lattice_env& env, const std::vector<lattice_point>& points);

void write_path_csv(std::ostream& os, const path& pi);

}  // namespace kpzlab
