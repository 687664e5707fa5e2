#include <algorithm>
#include <cmath>
#include <string>

#include "doctest.h"
#include "kpzlab/core_metric.hpp"
#include "kpzlab/env.hpp"
#include "kpzlab/errors.hpp"
#include "kpzlab/lpp.hpp"
#include "kpzlab/rng.hpp"
#include "oracles.hpp"

using namespace kpzlab;

namespace {

std::string id(std::int64_t x, std::int64_t n) { return std::to_string(x) + "," + std::to_string(n); }

// Random acyclic costs: edges only go from lower to higher index.
partial_costs random_dag(std::uint64_t seed, std::size_t n, metric_sign s) {
    partial_costs c;
    c.sign = s;
    for (std::size_t i = 0; i < n; ++i) c.ground_set.push_back("p" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (oracle::pick(seed, static_cast<std::int64_t>(i * n + j), 0, 2) != 0)
                c.entries[{i, j}] = static_cast<double>(oracle::pick(seed, static_cast<std::int64_t>(1000 + i * n + j), -5, 9));
    return c;
}

}  // namespace

TEST_CASE("single edge closure") {
    partial_costs c;
    c.set("a", "b", 4.0);
    const auto d = induce_metric(c);
    const auto a = d.index_of("a"), b = d.index_of("b");
    CHECK(d(a, b) == 4.0);
    CHECK(d(a, a) == 0.0);
    CHECK(d(b, a) == neg_inf);
}

TEST_CASE("unique chain closure") {
    partial_costs c;
    c.set("a", "b", 1.0);
    c.set("b", "c", 2.0);
    const auto d = induce_metric(c);
    CHECK(d(d.index_of("a"), d.index_of("c")) == 3.0);
}

TEST_CASE("cone costs on a lattice reproduce last passage values") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto env = sample_lattice_env(dist_tag::geometric(1.0), {0, 1}, 3, 3, seed);
        partial_costs c;
        for (std::int64_t x = 0; x < 3; ++x)
            for (std::int64_t n = 1; n <= 3; ++n) {
                c.set(id(x, n), id(x, n), 0.0);
                if (x + 1 < 3) c.set(id(x, n), id(x + 1, n), env(x + 1, n));
                if (n > 1) c.set(id(x, n), id(x, n - 1), env(x, n - 1));
            }
        const auto d = induce_metric(c);
        for (std::int64_t x = 0; x < 3; ++x)
            for (std::int64_t n = 1; n <= 3; ++n)
                for (std::int64_t y = 0; y < 3; ++y)
                    for (std::int64_t m = 1; m <= 3; ++m) {
                        const double v = d(d.index_of(id(x, n)), d.index_of(id(y, m)));
                        const double brute = oracle::lpp(env, {x, n}, {y, m});
                        if (brute == neg_inf) CHECK(v == neg_inf);
                        else CHECK(v + env(x, n) == brute);
                    }
    }
}

TEST_CASE("closure of random costs is a metric and idempotent") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        for (metric_sign s : {metric_sign::negative, metric_sign::positive}) {
            const auto d = induce_metric(random_dag(seed, 7, s));
            CHECK(verify_metric(d).empty());
            CHECK(induce_metric(as_costs(d)).dist == d.dist);
        }
    }
}

TEST_CASE("raising a cost never lowers a negative-sign distance") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto c = random_dag(seed, 6, metric_sign::negative);
        const auto before = induce_metric(c);
        auto it = c.entries.begin();
        std::advance(it, static_cast<long>(oracle::pick(seed, 9, 0, static_cast<std::int64_t>(c.entries.size()) - 1)));
        it->second += 3.0;
        const auto after = induce_metric(c);
        for (std::size_t i = 0; i < before.dist.size(); ++i) CHECK(after.dist[i] >= before.dist[i]);

        auto cp = random_dag(seed, 6, metric_sign::positive);
        const auto pb = induce_metric(cp);
        cp.entries.begin()->second += 3.0;
        const auto pa = induce_metric(cp);
        for (std::size_t i = 0; i < pb.dist.size(); ++i) CHECK(pa.dist[i] >= pb.dist[i]);
    }
}

TEST_CASE("improving cycles are rejected") {
    partial_costs c;
    c.set("a", "b", 1.0);
    c.set("b", "a", 1.0);
    CHECK_THROWS_AS(induce_metric(c), cycle_error);
    CHECK_THROWS_AS(induce_metric(partial_costs{}), empty_ground_set);
}

TEST_CASE("constructed triangle violation is reported") {
    distance_table t;
    t.ground_set = {"a", "b", "c"};
    t.sign = metric_sign::negative;
    t.dist = {0, 2, 3, neg_inf, 0, 2, neg_inf, neg_inf, 0};
    const auto bad = verify_metric(t);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == violating_triple{0, 1, 2});
}

TEST_CASE("additive metrics") {
    std::vector<std::string> g{"a", "b", "c", "d"};
    std::vector<double> h{0.5, -2.0, 7.25, 3.0};
    for (metric_sign s : {metric_sign::negative, metric_sign::positive}) {
        const auto t = additive_metric(g, h, s);
        CHECK(verify_metric(t).empty());
        const auto classes = equivalence_classes(t);
        REQUIRE(classes.size() == 1);
        CHECK(classes[0].size() == 4);
    }
}

TEST_CASE("a true metric has singleton classes") {
    distance_table t;
    t.ground_set = {"a", "b", "c"};
    t.sign = metric_sign::positive;
    t.dist = {0, 1, 2, 1, 0, 1, 2, 1, 0};
    CHECK(verify_metric(t).empty());
    CHECK(equivalence_classes(t).size() == 3);
}

TEST_CASE("equivalence classes on a geodesic agree with a pair scan") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto env = sample_lattice_env(dist_tag::geometric(1.0), {0, 1}, 5, 5, seed);
        const auto pi = geodesic(env, {0, 5}, {4, 1}, side::leftmost);
        const auto t = lpp_distance_table(env, pi.vertices);
        const auto classes = equivalence_classes(t);
        std::vector<std::size_t> owner(t.size());
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (auto i : classes[c]) owner[i] = c;
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t.size(); ++j) {
                const bool eq = std::isfinite(t(i, j)) && std::isfinite(t(j, i)) && t(i, j) + t(j, i) == 0.0;
                CHECK(eq == (owner[i] == owner[j]));
            }
    }
}

TEST_CASE("geodesic sets") {
    const auto env = make_lattice_env({1, 1}, 2, 2, {2, 1, 1, 5});
    const auto t = lpp_distance_table(env, {{1, 2}, {2, 2}, {2, 1}, {1, 1}});
    CHECK(is_geodesic_set(t, {{"1,2", "2,1"}}));
    CHECK(is_geodesic_set(t, {{"1,2", "2,2", "2,1"}}));
    CHECK_FALSE(is_geodesic_set(t, {{"1,2", "1,1", "2,1"}}));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto e = sample_lattice_env(dist_tag::geometric(1.0), {0, 1}, 6, 5, seed);
        for (side s : {side::leftmost, side::rightmost}) {
            const auto pi = geodesic(e, {0, 5}, {5, 1}, s);
            const auto d = lpp_distance_table(e, pi.vertices);
            geodesic_set g;
            for (const auto& v : pi.vertices) g.points.push_back(id(v.x, v.n));
            CHECK(is_geodesic_set(d, g));
        }
    }
}

TEST_CASE("pullbacks") {
    partial_costs c;
    c.set("a", "b", 1.0);
    c.set("b", "c", 2.0);
    c.set("a", "c", 5.0);
    const auto d = induce_metric(c);
    const auto same = pullback(d, d.ground_set, d.ground_set);
    CHECK(same.dist == d.dist);
    const auto flat = pullback(d, {"u", "v", "w"}, {"b", "b", "b"});
    for (double v : flat.dist) CHECK(v == 0.0);
    const auto perm = pullback(d, {"x", "y", "z"}, {"c", "a", "b"});
    CHECK(verify_metric(perm).empty());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(perm(i, j) == d(d.index_of(std::string(1, "cab"[i])), d.index_of(std::string(1, "cab"[j]))));
}
