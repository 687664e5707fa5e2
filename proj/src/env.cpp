#include "kpzlab/env.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "kpzlab/errors.hpp"
#include "kpzlab/rng.hpp"

namespace kpzlab {

namespace {

void validate(const dist_tag& tag) {
    switch (tag.kind) {
        case weight_dist::geometric:
            if (!(tag.param > 0.0) || !std::isfinite(tag.param))
                throw invalid_param("geometric mean must be positive");
            break;
        case weight_dist::bernoulli:
            if (!(tag.param > 0.0 && tag.param < 1.0))
                throw invalid_param("bernoulli parameter must lie in (0,1)");
            break;
        case weight_dist::constant:
            if (!(tag.param >= 0.0) || !std::isfinite(tag.param))
                throw invalid_param("constant weight must be nonnegative");
            break;
        case weight_dist::exponential:
        case weight_dist::given:
            break;
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string dist_tag::name() const {
    switch (kind) {
        case weight_dist::geometric: return "geometric";
        case weight_dist::exponential: return "exponential";
        case weight_dist::bernoulli: return "bernoulli";
        case weight_dist::constant: return "constant";
        case weight_dist::given: return "given";
    }
    return "unknown";
}

bool dist_tag::integer_valued() const {
    return kind == weight_dist::geometric || kind == weight_dist::bernoulli ||
           (kind == weight_dist::constant && std::floor(param) == param);
}

dist_tag parse_dist_tag(const std::string& name, double param) {
    dist_tag t;
    if (name == "geometric") t = dist_tag::geometric(param);
    else if (name == "exponential") t = dist_tag::exponential();
    else if (name == "bernoulli") t = dist_tag::bernoulli(param);
    else if (name == "constant") t = dist_tag::constant(param);
    else throw invalid_param("unknown weight distribution '" + name + "'");
    validate(t);
    return t;
}

double draw_weight(const dist_tag& tag, std::uint64_t seed, std::int64_t x, std::int64_t n) {
    const double u = rng::uniform(seed, x, n);
    switch (tag.kind) {
        case weight_dist::geometric:
            return std::floor(std::log(u) / std::log(tag.param / (tag.param + 1.0)));
        case weight_dist::exponential:
            return -std::log(u);
        case weight_dist::bernoulli:
            return u <= tag.param ? 1.0 : 0.0;
        case weight_dist::constant:
            return tag.param;
        case weight_dist::given:
            break;
    }
    throw invalid_param("explicit-weight environments cannot be sampled");
}

lattice_env::lattice_env(lattice_point origin, std::int64_t width, std::int64_t height, dist_tag tag,
                         std::uint64_t seed, std::vector<double> weights)
    : origin_(origin), width_(width), height_(height), tag_(tag), seed_(seed), weights_(std::move(weights)) {
    if (width <= 0 || height <= 0) throw invalid_param("environment dimensions must be positive");
    if (weights_.size() != static_cast<std::size_t>(width * height))
        throw invalid_param("weight array does not match the environment dimensions");
    for (double w : weights_)
        if (!(w >= 0.0) || !std::isfinite(w)) throw invalid_param("weights must be finite and nonnegative");
}

double lattice_env::operator()(std::int64_t x, std::int64_t n) const {
    if (!contains(x, n))
        throw out_of_window("cell (" + std::to_string(x) + "," + std::to_string(n) + ") is outside the window");
    return at(x, n);
}

double lattice_env::total() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

lattice_env sample_lattice_env(const dist_tag& tag, lattice_point origin, std::int64_t width,
                               std::int64_t height, std::uint64_t seed) {
    validate(tag);
    if (tag.kind == weight_dist::given) throw invalid_param("explicit-weight environments cannot be sampled");
    if (width <= 0 || height <= 0) throw invalid_param("environment dimensions must be positive");
    std::vector<double> w(static_cast<std::size_t>(width * height));
    std::size_t i = 0;
    for (std::int64_t n = origin.n; n < origin.n + height; ++n)
        for (std::int64_t x = origin.x; x < origin.x + width; ++x) w[i++] = draw_weight(tag, seed, x, n);
    return lattice_env(origin, width, height, tag, seed, std::move(w));
}

lattice_env make_lattice_env(lattice_point origin, std::int64_t width, std::int64_t height,
                             std::vector<double> weights) {
    return lattice_env(origin, width, height, dist_tag{weight_dist::given, 0.0}, 0, std::move(weights));
}

void write_env_csv(std::ostream& os, const lattice_env& env) {
    os << "# kpzlab lattice_env\n";
    os << "tag," << env.tag().name() << ',' << fmt17(env.tag().param) << '\n';
    os << "seed," << env.seed() << '\n';
    os << "origin," << env.origin().x << ',' << env.origin().n << '\n';
    os << "dims," << env.width() << ',' << env.height() << '\n';
    for (std::int64_t n = env.n_min(); n <= env.n_max(); ++n) {
        for (std::int64_t x = env.x_min(); x <= env.x_max(); ++x) {
            if (x != env.x_min()) os << ',';
            os << fmt17(env.at(x, n));
        }
        os << '\n';
    }
}

lattice_env read_env_csv(std::istream& is) {
    std::string line;
    auto fields = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string f;
        while (std::getline(ss, f, ',')) out.push_back(f);
        return out;
    };
    auto next = [&]() {
        while (std::getline(is, line))
            if (!line.empty() && line[0] != '#') return fields(line);
        throw invalid_param("truncated environment dump");
    };
    try {
        auto tag_f = next();
        auto seed_f = next();
        auto origin_f = next();
        auto dims_f = next();
        if (tag_f.size() != 3 || tag_f[0] != "tag" || seed_f.size() != 2 || origin_f.size() != 3 ||
            dims_f.size() != 3)
            throw invalid_param("malformed environment header");
        dist_tag tag{weight_dist::given, std::stod(tag_f[2])};
        if (tag_f[1] != "given") tag = parse_dist_tag(tag_f[1], std::stod(tag_f[2]));
        const std::uint64_t seed = std::stoull(seed_f[1]);
        const lattice_point origin{std::stoll(origin_f[1]), std::stoll(origin_f[2])};
        const std::int64_t w = std::stoll(dims_f[1]);
        const std::int64_t h = std::stoll(dims_f[2]);
        std::vector<double> values;
        for (std::int64_t r = 0; r < h; ++r) {
            auto row = next();
            if (static_cast<std::int64_t>(row.size()) != w) throw invalid_param("row width mismatch");
            for (const auto& f : row) values.push_back(std::stod(f));
        }
        return lattice_env(origin, w, h, tag, seed, std::move(values));
    } catch (const std::logic_error&) {
        throw invalid_param("unparseable number in environment dump");
    }
}

point_set sample_poisson_points(double rate, const box2& box, std::uint64_t seed) {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw invalid_param("Poisson rate must be positive");
    if (!(box.x1 > box.x0) || !(box.y1 > box.y0)) throw invalid_param("Poisson box must be nonempty");
    const double w = box.x1 - box.x0;
    const double h = box.y1 - box.y0;
    // Cells with mean about 4 keep the inversion sampler cheap and exact.
    const auto nx = static_cast<std::int64_t>(std::max(1.0, std::ceil(w * std::sqrt(rate) / 2.0)));
    const auto ny = static_cast<std::int64_t>(std::max(1.0, std::ceil(h * std::sqrt(rate) / 2.0)));
    const double cw = w / static_cast<double>(nx);
    const double ch = h / static_cast<double>(ny);
    const double mean = rate * cw * ch;
    const std::uint64_t counts = rng::stream(seed, rng::tag::poisson_points);
    const std::uint64_t places = rng::stream(counts, 1);

    point_set out;
    out.box = box;
    out.seed = seed;
    for (std::int64_t i = 0; i < nx; ++i) {
        for (std::int64_t j = 0; j < ny; ++j) {
            const std::int64_t cell = i * ny + j;
            const std::int64_t k = rng::poisson_small(mean, rng::uniform(counts, cell, 0));
            for (std::int64_t a = 0; a < k; ++a) {
                const double px = box.x0 + (static_cast<double>(i) + 1.0 - rng::uniform(places, cell, 2 * a)) * cw;
                const double py = box.y0 + (static_cast<double>(j) + 1.0 - rng::uniform(places, cell, 2 * a + 1)) * ch;
                out.points.emplace_back(std::min(px, box.x1), std::min(py, box.y1));
            }
        }
    }
    std::sort(out.points.begin(), out.points.end());
    out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
    return out;
}

line_env::line_env(line_kind kind, double x_min, double x_max, std::vector<line_fn> lines)
    : kind_(kind), x_min_(x_min), x_max_(x_max), lines_(std::move(lines)) {
    if (!(x_max >= x_min)) throw invalid_param("line domain must satisfy x_min <= x_max");
    if (lines_.empty()) throw invalid_param("line environment needs at least one line");
    for (auto& f : lines_) {
        if (f.t.size() != f.v.size()) throw invalid_param("breakpoint and value lists differ in length");
        for (std::size_t i = 0; i < f.t.size(); ++i) {
            if (f.t[i] < x_min || f.t[i] > x_max) throw invalid_param("breakpoint outside the domain");
            if (i > 0 && !(f.t[i] > f.t[i - 1])) throw invalid_param("breakpoints must strictly increase");
        }
        if (kind_ == line_kind::jump) {
            f.cum.resize(f.v.size());
            double s = f.base;
            for (std::size_t i = 0; i < f.v.size(); ++i) {
                if (!(f.v[i] > 0.0)) throw invalid_param("jumps must be strictly positive");
                s += f.v[i];
                f.cum[i] = s;
            }
        } else {
            if (f.t.empty() || f.t.front() != x_min || f.t.back() != x_max)
                throw invalid_param("piecewise-linear knots must span the domain");
            f.base = f.v.front();
        }
    }
}

double line_env::value(std::int64_t i, double s) const {
    if (i < 1 || i > static_cast<std::int64_t>(lines_.size())) throw out_of_domain("line index out of range");
    if (s < x_min_ || s > x_max_) throw out_of_domain("time outside the line domain");
    const line_fn& f = line(i);
    if (kind_ == line_kind::jump) {
        const auto k = std::upper_bound(f.t.begin(), f.t.end(), s) - f.t.begin();
        return k == 0 ? f.base : f.cum[static_cast<std::size_t>(k - 1)];
    }
    const auto k = std::upper_bound(f.t.begin(), f.t.end(), s) - f.t.begin();
    if (k >= static_cast<std::ptrdiff_t>(f.t.size())) return f.v.back();
    const auto j = static_cast<std::size_t>(k - 1);
    const double lam = (s - f.t[j]) / (f.t[j + 1] - f.t[j]);
    return f.v[j] + lam * (f.v[j + 1] - f.v[j]);
}

double line_env::left(std::int64_t i, double s) const {
    if (kind_ == line_kind::linear) return value(i, s);
    if (i < 1 || i > static_cast<std::int64_t>(lines_.size())) throw out_of_domain("line index out of range");
    if (s < x_min_ || s > x_max_) throw out_of_domain("time outside the line domain");
    const line_fn& f = line(i);
    const auto k = std::lower_bound(f.t.begin(), f.t.end(), s) - f.t.begin();
    return k == 0 ? f.base : f.cum[static_cast<std::size_t>(k - 1)];
}

std::vector<double> line_env::breakpoints(double a, double b) const {
    std::vector<double> out;
    for (const auto& f : lines_)
        for (double t : f.t)
            if (t >= a && t <= b) out.push_back(t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

line_env embed_lattice(const lattice_env& env) {
    std::vector<line_fn> lines(static_cast<std::size_t>(env.height()));
    for (std::int64_t n = env.n_min(); n <= env.n_max(); ++n) {
        line_fn& f = lines[static_cast<std::size_t>(n - env.n_min())];
        for (std::int64_t x = env.x_min(); x <= env.x_max(); ++x) {
            const double w = env.at(x, n);
            if (w > 0.0) {
                f.t.push_back(static_cast<double>(x));
                f.v.push_back(w);
            }
        }
    }
    return line_env(line_kind::jump, static_cast<double>(env.x_min()), static_cast<double>(env.x_max()),
                    std::move(lines));
}

line_env sample_poisson_lines(std::int64_t n, double horizon, double rate, std::uint64_t seed) {
    if (n < 1) throw invalid_param("need at least one line");
    if (!(horizon > 0.0)) throw invalid_param("horizon must be positive");
    if (!(rate > 0.0) || !std::isfinite(rate)) throw invalid_param("rate must be positive");
    const std::uint64_t s = rng::stream(seed, rng::tag::poisson_lines);
    std::vector<line_fn> lines(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i) {
        line_fn& f = lines[static_cast<std::size_t>(i - 1)];
        double t = 0.0;
        for (std::int64_t j = 0;; ++j) {
            t += rng::exponential(s, i, j) / rate;
            if (t > horizon) break;
            if (!f.t.empty() && t <= f.t.back()) continue;
            f.t.push_back(t);
            f.v.push_back(1.0);
        }
    }
    return line_env(line_kind::jump, 0.0, horizon, std::move(lines));
}

line_env sample_walk_lines(std::int64_t n, double horizon, double step, walk_increment inc,
                           std::uint64_t seed) {
    if (n < 1) throw invalid_param("need at least one line");
    if (!(horizon > 0.0) || !(step > 0.0)) throw invalid_param("horizon and step must be positive");
    const auto steps = std::max<std::int64_t>(1, std::llround(horizon / step));
    const double h = horizon / static_cast<double>(steps);
    const double sd = std::sqrt(h);
    const std::uint64_t s = rng::stream(seed, rng::tag::walk_lines);
    std::vector<line_fn> lines(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i) {
        line_fn& f = lines[static_cast<std::size_t>(i - 1)];
        f.t.reserve(static_cast<std::size_t>(steps + 1));
        double y = 0.0;
        f.t.push_back(0.0);
        f.v.push_back(0.0);
        for (std::int64_t j = 0; j < steps; ++j) {
            const double z = inc == walk_increment::gaussian ? rng::gaussian(s, i, j)
                                                             : (rng::uniform(s, i, j) <= 0.5 ? 1.0 : -1.0);
            y += sd * z;
            f.t.push_back(j + 1 == steps ? horizon : h * static_cast<double>(j + 1));
            f.v.push_back(y);
        }
    }
    return line_env(line_kind::linear, 0.0, horizon, std::move(lines));
}

double clock_field::operator()(std::int64_t kappa, std::int64_t x) const {
    if (((kappa + x) % 2 + 2) % 2 != 0)
        throw parity_error("clock (" + std::to_string(kappa) + "," + std::to_string(x) + ") is not an even lattice point");
    return -std::log(rng::uniform(seed_, kappa, x));
}

}  // namespace kpzlab
