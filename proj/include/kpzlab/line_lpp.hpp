#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kpzlab/env.hpp"

// Last passage across a line environment. A path from (x, n) to (y, m) sits on
// line n from time x, jumps down one line at a time and ends on line m at time
// y; on line i over [s, e] it collects f_i(e) - f_i(s^-).
namespace kpzlab {

struct line_point {
    double x = 0.0;
    std::int64_t n = 1;
};

// f[(x, n) -> (y, m)]; -inf unless x <= y and n >= m. Throws out_of_domain.
double line_lpp_value(const line_env& env, line_point p, line_point q);

// f[(x, n)^k -> (y, m)^k]: k essentially disjoint paths (no two share a
// horizontal segment of positive length), every line point counted once.
// Jump times range over the breakpoints in [x, y], plus free jumps inside open
// gaps for pure-jump lines. For x = y the value is the vertical sum of jumps
// at x; for x < y and k above the number of lines it is -inf.
double line_multipoint(const line_env& env, line_point p, line_point q, int k);

// f[(x, n)^k -> (t, m)^k] for every grid time t in [x, y] (x, the
// breakpoints strictly inside, y), from one sweep. Throws unordered.
std::vector<std::pair<double, double>> line_multipoint_profile(const line_env& env, line_point p, line_point q,
                                                             int k);

// df([x, y] x [m, n]) = sum over lines m..n of f_i(y) - f_i(x^-).
double box_mass(const line_env& env, double x, std::int64_t m, double y, std::int64_t n);

// f[(x, m) ->_f (y, n)]: the minimum over complementary paths climbing from
// line m at time x to line n at time y. Throws bad_box unless x <= y, m <= n.
double line_first_passage(const line_env& env, double x, std::int64_t m, double y, std::int64_t n);

}  // namespace kpzlab
