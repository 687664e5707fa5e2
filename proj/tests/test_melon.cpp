#include "doctest.h"
#include "kpzlab/env.hpp"
#include "kpzlab/errors.hpp"
#include "kpzlab/line_lpp.hpp"
#include "kpzlab/lpp.hpp"
#include "kpzlab/melon.hpp"

using namespace kpzlab;

TEST_CASE("one line is its own melon") {
    const auto env = sample_lattice_env(dist_tag::geometric(1.0), {0, 1}, 6, 1, 4);
    const auto f = embed_lattice(env);
    const auto w = melon(f);
    for (double y = 0.0; y <= 5.0; y += 0.5) CHECK(w.value(1, y) == f.value(1, y));
}

TEST_CASE("zero environment has a zero melon") {
    const auto env = sample_lattice_env(dist_tag::constant(0.0), {0, 1}, 4, 3, 0);
    const auto w = melon(env);
    for (std::int64_t i = 1; i <= 3; ++i)
        for (double y = 0.0; y <= 3.0; y += 1.0) CHECK(w.value(i, y) == 0.0);
}

TEST_CASE("melon lines are multi-point increments") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto env = sample_lattice_env(dist_tag::geometric(1.0), {0, 1}, 5, 4, seed);
        const auto w = melon(env);
        for (std::int64_t y = 0; y < 5; ++y) {
            double prev = 0.0;
            // k disjoint lattice paths from column 0 to column y exist only for k <= y + 1
            for (int k = 1; k <= 4 && k <= y + 1; ++k) {
                const double v = lpp_multipoint(env, {0, 4}, {y, 1}, k);
                CHECK(w.value(k, static_cast<double>(y)) == v - prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("isometry, ordering and mass conservation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto env = sample_lattice_env(dist_tag::geometric(1.0), {0, 1}, 6, 5, seed);
        const auto f = embed_lattice(env);
        const auto w = melon(f);
        CHECK(melon_ordering_violations(w).empty());
        double total = 0.0;
        for (std::int64_t i = 1; i <= 5; ++i) total += w.value(i, 5.0);
        CHECK(total == env.total());
        for (double x = 0.0; x <= 5.0; x += 1.0)
            for (double y = x; y <= 5.0; y += 1.0)
                for (const auto& row : isometry_check(f, w, x, y, 3)) CHECK(row.lhs == row.rhs);
        double col = 0.0;
        for (std::int64_t i = 1; i <= 2; ++i) col += w.value(i, 0.0);
        CHECK(isometry_check(f, w, 0.0, 0.0, 2)[1].rhs == col);
    }
}

TEST_CASE("poisson line melons") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto f = sample_poisson_lines(4, 4.0, 1.0, seed);
        const auto w = melon(f);
        CHECK(melon_ordering_violations(w).empty());
        for (double x : {0.0, 1.0, 2.5})
            for (double y : {2.5, 4.0})
                for (const auto& row : isometry_check(f, w, x, y, 3)) CHECK(row.lhs == row.rhs);
    }
}

TEST_CASE("melon is idempotent on a melon") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto w = melon(sample_lattice_env(dist_tag::geometric(1.0), {0, 1}, 5, 4, seed));
        const auto ww = melon(w);
        for (std::int64_t i = 1; i <= 4; ++i)
            for (double y = 0.0; y <= 4.0; y += 1.0) CHECK(ww.value(i, y) == w.value(i, y));
    }
}

TEST_CASE("melon conventions are enforced") {
    const auto walk = sample_walk_lines(2, 1.0, 0.25, walk_increment::gaussian, 1);
    CHECK_THROWS_AS(melon(walk), convention_error);
    const auto shifted = sample_lattice_env(dist_tag::geometric(1.0), {1, 1}, 3, 3, 1);
    CHECK_THROWS_AS(melon(shifted), convention_error);
}
