#include "commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "kpzlab/core_metric.hpp"
#include "kpzlab/env.hpp"
#include "kpzlab/errors.hpp"
#include "kpzlab/experiments.hpp"
#include "kpzlab/line_lpp.hpp"
#include "kpzlab/lis.hpp"
#include "kpzlab/lpp.hpp"
#include "kpzlab/melon.hpp"
#include "kpzlab/rng.hpp"
#include "kpzlab/scaling.hpp"
#include "kpzlab/stats.hpp"
#include "kpzlab/tasep.hpp"

namespace kpzlab::cli {

namespace {

struct table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num(std::int64_t v) { return std::to_string(v); }

const std::set<std::string> common_keys = {"seed", "threads", "output", "format", "config"};
const std::set<std::string> env_keys = {"model", "gamma", "p", "c", "x0", "n0", "width", "height", "env_file"};

std::set<std::string> keys(std::initializer_list<const std::set<std::string>*> sets,
                           std::initializer_list<std::string> extra) {
    std::set<std::string> out;
    for (const auto* s : sets) out.insert(s->begin(), s->end());
    out.insert(extra.begin(), extra.end());
    return out;
}

int threads_of(const run_config& cfg) { return static_cast<int>(cfg.integer("threads", 0)); }

lattice_point point_of(const run_config& cfg, const std::string& key) {
    const auto v = cfg.int_list(key, {});
    if (v.size() != 2) throw config_error("key '" + key + "' needs two integers x,n");
    return {v[0], v[1]};
}

lattice_env env_of(const run_config& cfg, std::uint64_t seed) {
    if (cfg.has("env_file")) {
        std::ifstream in(cfg.str("env_file"));
        if (!in) throw config_error("cannot open environment file '" + cfg.str("env_file") + "'");
        return read_env_csv(in);
    }
    const std::string model = cfg.str("model", "geometric");
    double param = 0.0;
    if (model == "geometric") param = cfg.num("gamma", 1.0);
    else if (model == "bernoulli") param = cfg.num("p", 0.5);
    else if (model == "constant") param = cfg.num("c", 1.0);
    const dist_tag tag = parse_dist_tag(model, param);
    const std::int64_t width = cfg.integer("width", 8), height = cfg.integer("height", 8);
    if (width < 1 || height < 1) throw config_error("width and height must be positive");
    return sample_lattice_env(tag, {cfg.integer("x0", 0), cfg.integer("n0", 1)}, width, height, seed);
}

model_spec model_of(const std::string& name, const run_config& cfg) {
    const model_kind kind = parse_model(name);
    switch (kind) {
    case model_kind::geometric: return model_spec::geometric(cfg.num("gamma", 1.0));
    case model_kind::seppalainen_johansson: return model_spec::seppalainen_johansson(cfg.num("sj_p", 0.5));
    default: return {kind, 0.0};
    }
}

void emit(const run_config& cfg, const std::string& command, std::uint64_t seed, const table& t, std::ostream& out) {
    std::ofstream file;
    std::ostream* os = &out;
    if (cfg.has("output")) {
        file.open(cfg.str("output"));
        if (!file) throw config_error("cannot write '" + cfg.str("output") + "'");
        os = &file;
    }
    std::map<std::string, std::string> params;
    for (const auto& [k, v] : cfg.values())
        if (k != "output" && k != "threads" && k != "format" && k != "config" && k != "seed") params[k] = v;

    const std::string format = cfg.str("format", "csv");
    if (format == "json") {
        nlohmann::ordered_json j;
        j["meta"]["toolkit"] = "kpzlab";
        j["meta"]["version"] = KPZLAB_VERSION;
        j["meta"]["command"] = command;
        j["meta"]["seed"] = seed;
        j["meta"]["params"] = params;
        j["columns"] = t.columns;
        auto rows = nlohmann::ordered_json::array();
        for (const auto& r : t.rows) {
            auto row = nlohmann::ordered_json::array();
            for (const auto& c : r) {
                char* end = nullptr;
                const double v = std::strtod(c.c_str(), &end);
                if (!c.empty() && *end == '\0' && std::isfinite(v)) row.push_back(v);
                else row.push_back(c);
            }
            rows.push_back(row);
        }
        j["rows"] = rows;
        *os << j.dump(2) << '\n';
        return;
    }
    if (format != "csv") throw config_error("format must be csv or json");
    *os << "# kpzlab " << KPZLAB_VERSION << '\n';
    *os << "# command: " << command << '\n';
    *os << "# seed: " << seed << '\n';
    *os << "# params:";
    for (const auto& [k, v] : params) *os << ' ' << k << '=' << v;
    *os << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) *os << (i ? "," : "") << t.columns[i];
    *os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) *os << (i ? "," : "") << r[i];
        *os << '\n';
    }
}

// env -----------------------------------------------------------------------

int cmd_env(const run_config& cfg, std::ostream& out) {
    cfg.require_known(keys({&common_keys, &env_keys}, {"kind", "rate", "box", "lines", "horizon", "step", "increment"}));
    const std::uint64_t seed = cfg.seed(1);
    const std::string kind = cfg.str("kind", "lattice");
    table t;
    if (kind == "lattice") {
        const lattice_env env = env_of(cfg, seed);
        t.columns = {"x", "n", "weight"};
        for (std::int64_t n = env.n_min(); n <= env.n_max(); ++n)
            for (std::int64_t x = env.x_min(); x <= env.x_max(); ++x) t.rows.push_back({num(x), num(n), g17(env.at(x, n))});
    } else if (kind == "poisson") {
        const auto b = cfg.num_list("box", {0.0, 0.0, 10.0, 10.0});
        if (b.size() != 4) throw config_error("box needs x0,y0,x1,y1");
        const point_set P = sample_poisson_points(cfg.num("rate", 1.0), {b[0], b[1], b[2], b[3]}, seed);
        t.columns = {"x", "y"};
        for (const auto& [x, y] : P.points) t.rows.push_back({g17(x), g17(y)});
    } else if (kind == "poisson_lines" || kind == "walk_lines") {
        const std::int64_t lines = cfg.integer("lines", 4);
        const double horizon = cfg.num("horizon", 8.0);
        line_env f;
        if (kind == "poisson_lines") {
            f = sample_poisson_lines(lines, horizon, cfg.num("rate", 1.0), seed);
        } else {
            const std::string inc = cfg.str("increment", "gaussian");
            if (inc != "gaussian" && inc != "rademacher") throw config_error("increment must be gaussian or rademacher");
            f = sample_walk_lines(lines, horizon, cfg.num("step", 0.25),
                                  inc == "gaussian" ? walk_increment::gaussian : walk_increment::rademacher, seed);
        }
        t.columns = {"line", "t", "value"};
        for (std::int64_t i = 1; i <= static_cast<std::int64_t>(f.n_lines()); ++i) {
            t.rows.push_back({num(i), g17(f.x_min()), g17(f.value(i, f.x_min()))});
            for (double s : f.line(i).t)
                if (s > f.x_min()) t.rows.push_back({num(i), g17(s), g17(f.value(i, s))});
        }
    } else {
        throw config_error("kind must be lattice, poisson, poisson_lines or walk_lines");
    }
    emit(cfg, "env", seed, t, out);
    return 0;
}

// lpp -----------------------------------------------------------------------

int cmd_lpp(const run_config& cfg, std::ostream& out) {
    cfg.require_known(keys({&common_keys, &env_keys}, {"from", "to", "k", "metric"}));
    const std::uint64_t seed = cfg.seed(1);
    const lattice_env env = env_of(cfg, seed);
    const lattice_point p = cfg.has("from") ? point_of(cfg, "from") : lattice_point{env.x_min(), env.n_max()};
    const lattice_point q = cfg.has("to") ? point_of(cfg, "to") : lattice_point{env.x_max(), env.n_min()};
    const std::string metric = cfg.str("metric", "lpp");
    table t;
    t.columns = {"metric", "k", "value"};
    if (metric == "lpp") {
        for (auto k : cfg.int_list("k", {1}))
            t.rows.push_back({metric, num(k), g17(lpp_multipoint(env, p, q, static_cast<int>(k)))});
    } else if (metric == "first_passage") {
        t.rows.push_back({metric, "1", g17(first_passage(env, p, q))});
    } else if (metric == "sj") {
        t.rows.push_back({metric, "1", g17(sj_passage_value(env, p, q))});
    } else {
        throw config_error("metric must be lpp, first_passage or sj");
    }
    emit(cfg, "lpp", seed, t, out);
    return 0;
}

// melon ---------------------------------------------------------------------

int cmd_melon(const run_config& cfg, std::ostream& out, std::ostream& log) {
    cfg.require_known(keys({&common_keys, &env_keys}, {"kind", "lines", "horizon", "rate"}));
    const std::uint64_t seed = cfg.seed(1);
    const std::string kind = cfg.str("kind", "lattice");
    line_env f;
    if (kind == "lattice") f = embed_lattice(env_of(cfg, seed));
    else if (kind == "poisson_lines")
        f = sample_poisson_lines(cfg.integer("lines", 4), cfg.num("horizon", 8.0), cfg.num("rate", 1.0), seed);
    else throw config_error("kind must be lattice or poisson_lines");
    const line_env w = melon(f);
    std::stringstream ss;
    write_melon_csv(ss, w);
    table t;
    std::string line;
    std::getline(ss, line);
    t.columns = split_list(line);
    while (std::getline(ss, line))
        if (!line.empty()) t.rows.push_back(split_list(line));
    emit(cfg, "melon", seed, t, out);
    const auto bad = melon_ordering_violations(w);
    if (!bad.empty()) {
        log << "melon ordering fails on line " << bad.front().line << " at " << bad.front().y << '\n';
        return 1;
    }
    return 0;
}

// geodesic ------------------------------------------------------------------

int cmd_geodesic(const run_config& cfg, std::ostream& out) {
    cfg.require_known(keys({&common_keys, &env_keys}, {"from", "to", "side", "rescale", "rho", "n"}));
    const std::uint64_t seed = cfg.seed(1);
    const lattice_env env = env_of(cfg, seed);
    const lattice_point p = cfg.has("from") ? point_of(cfg, "from") : lattice_point{env.x_min(), env.n_max()};
    const lattice_point q = cfg.has("to") ? point_of(cfg, "to") : lattice_point{env.x_max(), env.n_min()};
    const std::string s = cfg.str("side", "rightmost");
    if (s != "leftmost" && s != "rightmost") throw config_error("side must be leftmost or rightmost");
    const path pi = geodesic(env, p, q, s == "leftmost" ? side::leftmost : side::rightmost);
    table t;
    if (cfg.integer("rescale", 0) != 0) {
        const std::string model = cfg.str("model", "geometric");
        const scaling_params sp = scaling_params_for(model_of(model, cfg), cfg.num("rho", 1.0));
        t.columns = {"index", "x", "s"};
        const auto pts = rescale_geodesic(pi, sp, cfg.num("n", static_cast<double>(env.height())));
        for (std::size_t i = 0; i < pts.size(); ++i) t.rows.push_back({num(static_cast<std::int64_t>(i)), g17(pts[i].first), g17(pts[i].second)});
    } else {
        t.columns = {"index", "x", "n"};
        for (std::size_t i = 0; i < pi.vertices.size(); ++i)
            t.rows.push_back({num(static_cast<std::int64_t>(i)), num(pi.vertices[i].x), num(pi.vertices[i].n)});
    }
    emit(cfg, "geodesic", seed, t, out);
    return 0;
}

// scale ---------------------------------------------------------------------

int cmd_scale(const run_config& cfg, std::ostream& out) {
    cfg.require_known(keys({&common_keys}, {"action", "models", "model", "gamma", "sj_p", "rho", "rhos", "n", "x", "s",
                                           "y", "t", "k", "centering"}));
    const std::uint64_t seed = cfg.seed(1);
    const std::string action = cfg.str("action", "table");
    table t;
    if (action == "table") {
        std::vector<model_spec> models;
        for (const auto& m : cfg.str_list("models", {"geometric", "exponential", "poisson_planar", "poisson_lines",
                                                     "brownian", "seppalainen_johansson"}))
            models.push_back(model_of(m, cfg));
        t.columns = {"model", "param", "rho", "sign", "alpha", "beta", "chi", "tau"};
        for (const auto& m : models) {
            // the SJ model needs rho > 1 / lambda, so its default direction is rho = 1 + 1 / lambda
            const double fallback = m.kind == model_kind::seppalainen_johansson ? 1.0 + 1.0 / sj_lambda(m.param) : 1.0;
            const auto rhos = cfg.num_list("rhos", cfg.num_list("rho", {fallback}));
            for (const auto& row : scale_table_rows({m}, rhos)) t.rows.push_back(split_list(row));
        }
    } else if (action == "value") {
        const model_spec m = model_of(cfg.str("model", "exponential"), cfg);
        const double rho = cfg.num("rho", 1.0), n = cfg.num("n", 64.0);
        const rescaled_query q{cfg.num("x", 0.0), cfg.num("s", 0.0), cfg.num("y", 0.0), cfg.num("t", 1.0)};
        const std::string c = cfg.str("centering", "standard");
        if (c != "standard" && c != "as_printed") throw config_error("centering must be standard or as_printed");
        const scaling_params sp = scaling_params_for(m, rho);
        const lattice_point a = rescaled_point(sp, n, q.x, q.s), b = rescaled_point(sp, n, q.y, q.t);
        if (!ordered(a, b)) throw config_error("rescaled endpoints are not ordered");
        const int k = static_cast<int>(cfg.integer("k", 1));
        const auto env = sample_model_env(m, {a.x, b.n}, b.x - a.x + 1, a.n - b.n + 1, seed);
        t.columns = {"model", "n", "k", "value"};
        t.rows.push_back({model_name(m.kind), g17(n), num(k),
                          g17(rescaled_value(env, sp, n, q, k, c == "standard" ? centering::standard : centering::as_printed))});
    } else {
        throw config_error("scale action must be table or value");
    }
    emit(cfg, "scale", seed, t, out);
    return 0;
}

// lis -----------------------------------------------------------------------

int cmd_lis(const run_config& cfg, std::ostream& out, std::ostream& log) {
    cfg.require_known(keys({&common_keys}, {"n", "variant", "report", "step", "indexing"}));
    const std::uint64_t seed = cfg.seed(1);
    const std::int64_t n = cfg.integer("n", 100);
    const std::string v = cfg.str("variant", "any");
    if (v != "any" && v != "leftmost") throw config_error("variant must be any or leftmost");
    const permutation perm = sample_permutation(n, seed);
    const auto sub = lis(perm, v == "any" ? lis_variant::any : lis_variant::leftmost);
    const std::string report = cfg.str("report", "summary");
    table t;
    if (report == "summary") {
        t.columns = {"n", "length", "lis_equals_lpp"};
        const bool ok = lis_equals_poisson_lpp(perm);
        t.rows.push_back({num(n), num(sub.length()), ok ? "1" : "0"});
        emit(cfg, "lis", seed, t, out);
        if (!ok) {
            log << "LIS length differs from the Poisson chain length\n";
            return 1;
        }
        return 0;
    }
    if (report == "indices") {
        t.columns = {"i", "index", "value"};
        for (std::int64_t i = 1; i <= sub.length(); ++i) {
            const auto idx = sub.indices[static_cast<std::size_t>(i - 1)];
            t.rows.push_back({num(i), num(idx), num(perm.sigma[static_cast<std::size_t>(idx - 1)])});
        }
    } else if (report == "rescaled") {
        const std::string ix = cfg.str("indexing", "two_sqrt_n");
        if (ix != "two_sqrt_n" && ix != "by_length") throw config_error("indexing must be two_sqrt_n or by_length");
        t.columns = {"t", "value"};
        for (const auto& [s, val] : rescaled_subsequence(sub, n, cfg.num("step", 0x1.0p-7),
                                                         ix == "two_sqrt_n" ? lis_indexing::two_sqrt_n : lis_indexing::by_length))
            t.rows.push_back({g17(s), g17(val)});
    } else {
        throw config_error("report must be summary, indices or rescaled");
    }
    emit(cfg, "lis", seed, t, out);
    return 0;
}

// tasep ---------------------------------------------------------------------

height_function initial_height(const run_config& cfg, std::int64_t a, std::int64_t b, boundary_mode mode) {
    const std::string init = cfg.str("init", "wedge@0");
    if (init == "flat") return flat_height(a, b, mode);
    if (init.rfind("wedge@", 0) == 0) {
        const std::int64_t x = parse_int("init", init.substr(6));
        return narrow_wedge({x, ((x % 2) + 2) % 2}, a, b, mode);
    }
    if (init.rfind("file:", 0) == 0) {
        std::ifstream in(init.substr(5));
        if (!in) throw config_error("cannot open height file '" + init.substr(5) + "'");
        std::string line;
        height_function h{0, {}, mode};
        bool first = true;
        std::int64_t last = 0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("site", 0) == 0) continue;
            const auto f = split_list(line);
            if (f.size() != 2) throw config_error("height file rows need site,height");
            const std::int64_t x = parse_int("init", f[0]);
            if (first) h.a = x;
            else if (x != last + 1) throw config_error("height file sites must be consecutive");
            first = false;
            last = x;
            h.h.push_back(parse_int("init", f[1]));
        }
        validate_height(h);
        return h;
    }
    throw config_error("init must be wedge@x, flat or file:path");
}

int cmd_tasep(const run_config& cfg, std::ostream& out) {
    cfg.require_known(keys({&common_keys}, {"mode", "p", "steps", "t", "init", "window", "boundary", "light_cone",
                                           "method", "n", "rescale", "ys"}));
    const std::uint64_t seed = cfg.seed(1);
    const auto win = cfg.int_list("window", {-32, 32});
    if (win.size() != 2 || win[1] < win[0]) throw config_error("window needs a,b with a <= b");
    const std::string bnd = cfg.str("boundary", "frozen");
    if (bnd != "frozen" && bnd != "wedge_extended") throw config_error("boundary must be frozen or wedge_extended");
    const boundary_mode mode = bnd == "frozen" ? boundary_mode::frozen : boundary_mode::wedge_extended;
    const height_function h0 = initial_height(cfg, win[0], win[1], mode);
    validate_height(h0);
    const std::string run_mode = cfg.str("mode", cfg.has("p") ? "discrete" : "continuous");

    std::vector<std::pair<double, height_function>> snaps;
    if (run_mode == "discrete") {
        const double p = cfg.num("p", 0.5);
        for (auto s : cfg.int_list("steps", {0, 1, 2, 4, 8}))
            snaps.emplace_back(static_cast<double>(s), tasep_discrete(p, h0, s, seed));
    } else if (run_mode == "continuous") {
        const clock_field clocks(seed);
        const auto times = cfg.num_list("t", {0.0, 1.0, 2.0, 4.0});
        const std::string method = cfg.str("method", "direct");
        const double lc = cfg.num("light_cone", 8.0);
        if (method == "direct") {
            const auto trace = tasep_direct(clocks, h0, times, lc);
            for (std::size_t j = 0; j < trace.times.size(); ++j) snaps.emplace_back(trace.times[j], trace.snapshots[j]);
        } else if (method == "variational") {
            for (double t : times) snaps.emplace_back(t, tasep_general(clocks, h0, t, lc));
        } else if (method == "interface") {
            const std::string init = cfg.str("init", "wedge@0");
            if (init.rfind("wedge@", 0) != 0) throw config_error("interface method needs init=wedge@x");
            const std::int64_t x = parse_int("init", init.substr(6));
            for (double t : times) snaps.emplace_back(t, interface(clocks, {{x, ((x % 2) + 2) % 2}}, t, win[0], win[1]));
        } else {
            throw config_error("method must be direct, variational or interface");
        }
    } else {
        throw config_error("mode must be continuous or discrete");
    }

    table t;
    if (cfg.has("rescale")) {
        const std::string r = cfg.str("rescale");
        if (r != "iota" && r != "centered") throw config_error("rescale must be iota or centered");
        const double n = cfg.num("n", 8.0);
        const auto ys = cfg.num_list("ys", {0.0});
        t.columns = {"time", "y", "value"};
        for (const auto& [time, h] : snaps)
            for (const auto& [y, v] : rescale_height(h, time, n, r == "iota" ? rescale_mode::iota : rescale_mode::centered, ys))
                t.rows.push_back({g17(time), g17(y), g17(v)});
    } else {
        t.columns = {"time", "site", "height"};
        for (const auto& [time, h] : snaps)
            for (std::int64_t x = h.a; x <= h.b(); ++x) t.rows.push_back({g17(time), num(x), num(h(x))});
    }
    emit(cfg, "tasep", seed, t, out);
    return 0;
}

// stats ---------------------------------------------------------------------

int cmd_stats(const run_config& cfg, std::ostream& out, std::ostream& log) {
    const std::uint64_t seed = cfg.seed(1);
    const std::string statistic = cfg.str("statistic", "universality");
    const int threads = threads_of(cfg);
    std::vector<stat_row> rows;
    int code = 0;
    if (statistic == "universality") {
        cfg.require_known(keys({&common_keys}, {"statistic", "gamma", "n", "trials"}));
        const double n = cfg.num("n", 256.0);
        const std::int64_t trials = cfg.integer("trials", 4000);
        const auto g = rescaled_onepoint_samples(model_spec::geometric(cfg.num("gamma", 1.0)), 1.0, n, {0, 0, 0, 1}, trials,
                                                 rng::stream(seed, 1), threads);
        const auto e = rescaled_onepoint_samples(model_spec::exponential(), 1.0, n, {0, 0, 0, 1}, trials,
                                                 rng::stream(seed, 2), threads);
        const auto r = ks_two_sample(g, e);
        rows.push_back({"ks_d", r.d, 0.0, static_cast<std::int64_t>(n), trials, seed});
        rows.push_back({"ks_p", r.p_value, 0.0, static_cast<std::int64_t>(n), trials, seed});
    } else if (statistic == "symmetry") {
        cfg.require_known(keys({&common_keys}, {"statistic", "x", "y", "t", "trials"}));
        const double x = cfg.num("x", -0.5), y = cfg.num("y", 0.25), t = cfg.num("t", 128.0);
        const std::int64_t trials = cfg.integer("trials", 4000);
        const auto a = rotated_poisson_samples(x, y, t, trials, rng::stream(seed, 1), threads);
        const auto b = rotated_poisson_samples(y, x, t, trials, rng::stream(seed, 2), threads);
        const auto r = ks_two_sample(a, b);
        rows.push_back({"ks_d", r.d, 0.0, static_cast<std::int64_t>(t), trials, seed});
        rows.push_back({"ks_p", r.p_value, 0.0, static_cast<std::int64_t>(t), trials, seed});
    } else if (statistic == "exponent") {
        cfg.require_known(keys({&common_keys}, {"statistic", "model", "gamma", "sizes", "trials", "fit"}));
        const std::string fit = cfg.str("fit", "sd_onepoint");
        if (fit != "sd_onepoint" && fit != "geodesic_mid_sd") throw config_error("fit must be sd_onepoint or geodesic_mid_sd");
        const std::int64_t trials = cfg.integer("trials", 2000);
        const auto sizes = cfg.int_list("sizes", {64, 128, 256, 512});
        const auto f = exponent_fit(model_of(cfg.str("model", "exponential"), cfg), sizes, trials,
                                    fit == "sd_onepoint" ? fit_statistic::sd_onepoint : fit_statistic::geodesic_mid_sd,
                                    seed, threads);
        rows.push_back({fit + "_slope", f.slope, f.stderr_, sizes.back(), trials, seed});
    } else if (statistic == "shock") {
        cfg.require_known(keys({&common_keys}, {"statistic", "gamma", "rows", "starts", "ends", "sheets"}));
        const std::int64_t sheets = cfg.integer("sheets", 50), height = cfg.integer("rows", 16);
        const auto starts = cfg.int_list("starts", {0, 15});
        const auto ends = cfg.int_list("ends", {15, 30});
        if (starts.size() != 2 || ends.size() != 2) throw config_error("starts and ends are ranges lo,hi");
        std::vector<std::int64_t> xs, ys;
        for (auto v = starts[0]; v <= starts[1]; ++v) xs.push_back(v);
        for (auto v = ends[0]; v <= ends[1]; ++v) ys.push_back(v);
        double worst = pos_inf;
        for (std::int64_t s = 0; s < sheets; ++s) {
            const auto env = sample_lattice_env(dist_tag::geometric(cfg.num("gamma", 1.0)), {0, 1}, ends[1] + 1, height,
                                                rng::trial_seed(seed, experiment_tag::sheet, s));
            worst = std::min(worst, shock_measure(prelimit_sheet(env, xs, ys)).min);
        }
        rows.push_back({"shock_min", worst, 0.0, height, sheets, seed});
        if (worst < 0.0) code = 1;
    } else if (statistic == "maxineq") {
        cfg.require_known(keys({&common_keys}, {"statistic", "name", "model", "gamma", "rho", "n", "xp", "sp", "xq", "sq",
                                               "A", "B", "c", "eps", "trials"}));
        const maxineq_config m = to_maxineq(cfg);
        const auto r = maximal_inequality_mc(m, threads);
        const auto n = static_cast<std::int64_t>(m.n);
        rows.push_back({m.name + "_lhs", r.lhs, r.lhs_se, n, m.trials, m.seed});
        rows.push_back({m.name + "_rhs", r.rhs, r.rhs_se, n, m.trials, m.seed});
        rows.push_back({m.name + "_pass", r.pass ? 1.0 : 0.0, 0.0, n, m.trials, m.seed});
        if (!r.pass) code = 1;
    } else if (statistic == "busemann") {
        cfg.require_known(keys({&common_keys}, {"statistic", "lines", "horizon", "rate", "x", "y", "z", "ks", "origin", "scale"}));
        const double horizon = cfg.num("horizon", 8.0);
        const auto f = sample_poisson_lines(cfg.integer("lines", 6), horizon, cfg.num("rate", 1.0), seed);
        std::vector<int> ks;
        for (auto k : cfg.int_list("ks", {1, 2, 3})) ks.push_back(static_cast<int>(k));
        for (const auto& [k, d] : busemann_profile(f, cfg.num("x", 1.0), cfg.num("y", horizon), cfg.num("z", horizon - 1.0),
                                                   ks, cfg.num("origin", horizon / 2.0), cfg.num("scale", 1.0)))
            rows.push_back({"busemann_k" + std::to_string(k), d, 0.0, static_cast<std::int64_t>(f.n_lines()), 1, seed});
    } else if (statistic == "graph_distance") {
        cfg.require_known(keys({&common_keys}, {"statistic", "n", "count"}));
        const std::int64_t n = cfg.integer("n", 32), count = cfg.integer("count", 10);
        if (count < 1) throw config_error("count must be positive");
        std::vector<landscape_point> pts;
        std::vector<double> f, g;
        const model_spec m = model_spec::exponential();
        for (int pass = 0; pass < 2; ++pass) {
            const double size = static_cast<double>(pass == 0 ? n : 2 * n);
            const scaling_params sp = scaling_params_for(m, 1.0);
            const lattice_point lo = rescaled_point(sp, size, -1.0, 0.0);
            const lattice_point hi = rescaled_point(sp, size, 1.0, 1.0);
            const auto env = sample_model_env(m, {lo.x, hi.n}, hi.x - lo.x + 1, lo.n - hi.n + 1,
                                              rng::stream(seed, static_cast<std::uint64_t>(pass)));
            for (std::int64_t i = 0; i < count; ++i)
                for (std::int64_t j = 0; j < count; ++j)
                    for (std::int64_t l = 1; l <= count; ++l) {
                        const double x = -0.5 + static_cast<double>(i) / static_cast<double>(count);
                        const double y = -0.5 + static_cast<double>(j) / static_cast<double>(count);
                        const double tt = static_cast<double>(l) / static_cast<double>(count);
                        const rescaled_query q{x, 0.0, y, tt};
                        if (pass == 0) pts.push_back({x, 0.0, y, tt});
                        const lattice_point a = rescaled_point(sp, size, x, 0.0), b = rescaled_point(sp, size, y, tt);
                        const double v = ordered(a, b) ? rescaled_value(env, sp, size, q) : neg_inf;
                        (pass == 0 ? f : g).push_back(v);
                    }
        }
        rows.push_back({"graph_distance", graph_distance(pts, f, g), 0.0, n, 1, seed});
    } else {
        throw config_error("statistic must be universality, symmetry, exponent, shock, maxineq, busemann or graph_distance");
    }
    std::stringstream ss;
    write_stat_rows(ss, rows);
    table t;
    std::string line;
    std::getline(ss, line);
    t.columns = split_list(line);
    while (std::getline(ss, line))
        if (!line.empty()) t.rows.push_back(split_list(line));
    emit(cfg, "stats", seed, t, out);
    if (code != 0) log << "statistic " << statistic << " failed its check\n";
    return code;
}

// verify --------------------------------------------------------------------

struct check_result {
    std::int64_t cases = 0, failures = 0;
    void record(bool ok) {
        ++cases;
        if (!ok) ++failures;
    }
};

check_result verify_isometry_and_ordering(std::uint64_t seed, check_result& ordering) {
    check_result r;
    for (std::int64_t trial = 0; trial < 20; ++trial) {
        const auto env = sample_lattice_env(dist_tag::geometric(1.0), {0, 1}, 6, 4, rng::trial_seed(seed, 1, trial));
        const line_env f = embed_lattice(env);
        const line_env w = melon(f);
        ordering.record(melon_ordering_violations(w).empty());
        for (int x = 0; x <= 5; ++x)
            for (int y = x; y <= 5; ++y)
                for (const auto& row : isometry_check(f, w, x, y, 3)) r.record(row.lhs == row.rhs);
    }
    return r;
}

check_result verify_quadrangle(std::uint64_t seed) {
    check_result r;
    std::vector<std::int64_t> xs, ys;
    for (std::int64_t v = 0; v <= 15; ++v) xs.push_back(v);
    for (std::int64_t v = 15; v <= 30; ++v) ys.push_back(v);
    for (std::int64_t trial = 0; trial < 10; ++trial) {
        const auto env = sample_lattice_env(dist_tag::geometric(1.0), {0, 1}, 31, 12, rng::trial_seed(seed, 2, trial));
        r.record(shock_measure(prelimit_sheet(env, xs, ys)).min >= 0.0);
    }
    return r;
}

check_result verify_composition(std::uint64_t seed) {
    check_result r;
    for (std::int64_t trial = 0; trial < 20; ++trial) {
        const std::uint64_t s = rng::trial_seed(seed, 3, trial);
        const auto env = sample_lattice_env(dist_tag::geometric(1.0), {0, 1}, 8, 8, s);
        std::vector<lattice_point> pts;
        for (std::int64_t i = 0; i < 8; ++i)
            pts.push_back({static_cast<std::int64_t>(rng::bounded(rng::stateless_hash(s, i, 0), 8)),
                           1 + static_cast<std::int64_t>(rng::bounded(rng::stateless_hash(s, i, 1), 8))});
        std::sort(pts.begin(), pts.end(), [](lattice_point a, lattice_point b) { return a.x != b.x ? a.x < b.x : a.n > b.n; });
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const distance_table d = lpp_distance_table(env, pts);
        r.record(verify_metric(d).empty() && induce_metric(as_costs(d)).dist == d.dist);
    }
    return r;
}

check_result verify_monotonicity(std::uint64_t seed) {
    check_result r;
    for (std::int64_t trial = 0; trial < 40; ++trial) {
        const std::uint64_t s = rng::trial_seed(seed, 4, trial);
        const auto env = sample_lattice_env(dist_tag::geometric(1.0), {0, 1}, 10, 8, s);
        auto pick = [&](int j, std::uint64_t m) { return static_cast<std::int64_t>(rng::bounded(rng::stateless_hash(s, j, 7), m)); };
        std::array<std::int64_t, 4> v{pick(0, 10), pick(1, 10), pick(2, 10), pick(3, 10)};
        std::sort(v.begin(), v.end());
        const std::int64_t x = v[0], x2 = v[1], y = v[2], y2 = v[3];
        const std::int64_t n = 8, m = 1 + pick(4, 8);
        r.record(geodesic_monotonicity_check(env, {x, n}, {y, m}, {x2, n}, {y2, m}));
        const path pi = geodesic(env, {x, n}, {y, m}, side::rightmost);
        r.record(path_weight(env, pi) == lpp_value(env, {x, n}, {y, m}));
    }
    return r;
}

check_result verify_duality(std::uint64_t seed) {
    check_result r;
    for (std::int64_t trial = 0; trial < 20; ++trial) {
        const std::uint64_t s = rng::trial_seed(seed, 5, trial);
        const auto env = sample_lattice_env(dist_tag::geometric(1.0), {0, 1}, 6, 5, s);
        const auto x = static_cast<std::int64_t>(rng::bounded(rng::stateless_hash(s, 0, 9), 3));
        const std::int64_t y = x + static_cast<std::int64_t>(rng::bounded(rng::stateless_hash(s, 1, 9), 3));
        const std::int64_t m = 1, n = 2 + static_cast<std::int64_t>(rng::bounded(rng::stateless_hash(s, 2, 9), 4));
        double mass = 0.0;
        for (std::int64_t row = m; row <= n; ++row)
            for (std::int64_t col = x; col <= y; ++col) mass += env.at(col, row);
        const double fp = first_passage(env, {x, m}, {y, n});
        const double mp = line_multipoint(embed_lattice(env), {static_cast<double>(x), n}, {static_cast<double>(y), m},
                                          static_cast<int>(n - m));
        r.record(mp + fp == mass);
    }
    return r;
}

check_result verify_lis(std::uint64_t seed) {
    check_result r;
    for (std::int64_t trial = 0; trial < 20; ++trial) {
        const permutation p = sample_permutation(5 + 9 * trial, rng::trial_seed(seed, 6, trial));
        r.record(lis_equals_poisson_lpp(p));
    }
    return r;
}

check_result verify_coupling(std::uint64_t seed) {
    check_result r;
    for (std::int64_t trial = 0; trial < 5; ++trial) {
        const clock_field clocks(rng::trial_seed(seed, 7, trial));
        const height_function h0 = narrow_wedge({0, 0}, -24, 24);
        const std::vector<double> times{0.0, 1.0, 2.0, 3.0};
        const auto trace = tasep_direct(clocks, h0, times);
        for (std::size_t j = 0; j < times.size(); ++j) {
            const auto I = interface(clocks, {{0, 0}}, times[j], -24, 24);
            r.record(I == trace.snapshots[j] && tasep_general(clocks, h0, times[j]) == I);
        }
    }
    return r;
}

int cmd_verify(const run_config& cfg, std::ostream& out, std::ostream& log) {
    cfg.require_known(keys({&common_keys}, {}));
    const std::uint64_t seed = cfg.seed(20240601);
    check_result ordering;
    const std::vector<std::pair<std::string, std::function<check_result()>>> checks = {
        {"isometry", [&] { return verify_isometry_and_ordering(seed, ordering); }},
        {"ordering", [&] { return ordering; }},
        {"quadrangle", [&] { return verify_quadrangle(seed); }},
        {"composition", [&] { return verify_composition(seed); }},
        {"monotonicity", [&] { return verify_monotonicity(seed); }},
        {"duality", [&] { return verify_duality(seed); }},
        {"lis_equals_lpp", [&] { return verify_lis(seed); }},
        {"coupling", [&] { return verify_coupling(seed); }},
    };
    table t;
    t.columns = {"check", "cases", "failures"};
    std::int64_t failures = 0;
    for (const auto& [name, run] : checks) {
        const check_result c = run();
        failures += c.failures;
        t.rows.push_back({name, num(c.cases), num(c.failures)});
        if (c.failures != 0) log << "verify: " << name << " failed " << c.failures << " of " << c.cases << '\n';
    }
    emit(cfg, "verify", seed, t, out);
    return failures == 0 ? 0 : 1;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"env", "lpp", "melon", "geodesic", "scale",
                                                   "lis", "tasep", "stats", "verify"};
    return names;
}

int run_command(const std::string& name, const run_config& cfg, std::ostream& out, std::ostream& log) {
    if (name == "env") return cmd_env(cfg, out);
    if (name == "lpp") return cmd_lpp(cfg, out);
    if (name == "melon") return cmd_melon(cfg, out, log);
    if (name == "geodesic") return cmd_geodesic(cfg, out);
    if (name == "scale") return cmd_scale(cfg, out);
    if (name == "lis") return cmd_lis(cfg, out, log);
    if (name == "tasep") return cmd_tasep(cfg, out);
    if (name == "stats") return cmd_stats(cfg, out, log);
    if (name == "verify") return cmd_verify(cfg, out, log);
    throw config_error("unknown subcommand '" + name + "'");
}

}  // namespace kpzlab::cli
