#pragma once

#include <iosfwd>
#include <vector>

#include "kpzlab/env.hpp"
#include "kpzlab/line_lpp.hpp"

// The melon (RSK) transform of a pure-jump line environment on [0, horizon]
// with f_i(0^-) = 0:
//   Wf_k(y) = f[(0, n)^k -> (y, 1)^k] - f[(0, n)^(k-1) -> (y, 1)^(k-1)].
namespace kpzlab {

// Throws convention_error for piecewise-linear lines, a domain not starting
// at 0, or a nonzero base value.
line_env melon(const line_env& f);
// Lattice environments are embedded first; the window must start at x = 0.
line_env melon(const lattice_env& env);

struct isometry_row {
    int k = 1;
    double lhs = 0.0;  // f[(x, n)^k -> (y, 1)^k]
    double rhs = 0.0;  // Wf[(x, n)^k -> (y, 1)^k]
};

std::vector<isometry_row> isometry_check(const line_env& f, const line_env& w, double x, double y, int k_max);
std::vector<isometry_row> isometry_check(const line_env& f, double x, double y, int k_max);

struct ordering_violation {
    std::int64_t line = 0;  // Wf_{line-1}(y^-) < Wf_line(y)
    double y = 0.0;
};

// Checks Wf_{i-1}(y^-) >= Wf_i(y) at 0, at every breakpoint and at the horizon.
std::vector<ordering_violation> melon_ordering_violations(const line_env& w);

// CSV rows (line, y, value) at 0 and every breakpoint of the line.
void write_melon_csv(std::ostream& os, const line_env& w);

}  // namespace kpzlab
