#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

// Random environments. Every sampler is a pure function of its arguments.
namespace kpzlab {

struct lattice_point {
    std::int64_t x = 0;
    std::int64_t n = 0;
    bool operator==(const lattice_point&) const = default;
};

enum class weight_dist { geometric, exponential, bernoulli, constant, given };

struct dist_tag {
    weight_dist kind = weight_dist::exponential;
    double param = 0.0;  // geometric: mean gamma; bernoulli: p; constant: c

    static dist_tag geometric(double gamma) { return {weight_dist::geometric, gamma}; }
    static dist_tag exponential() { return {weight_dist::exponential, 1.0}; }
    static dist_tag bernoulli(double p) { return {weight_dist::bernoulli, p}; }
    static dist_tag constant(double c) { return {weight_dist::constant, c}; }

    std::string name() const;
    bool integer_valued() const;
};

dist_tag parse_dist_tag(const std::string& name, double param);

// Validates the tag and draws the weight of cell (x, n). The uniform
// u = uniform(seed, x, n) lies in (0, 1]; the weight is F^{-1}(1 - u), so
// geometric and exponential draws from one seed are co-monotone.
double draw_weight(const dist_tag& tag, std::uint64_t seed, std::int64_t x, std::int64_t n);

class lattice_env {
public:
    lattice_env() = default;
    lattice_env(lattice_point origin, std::int64_t width, std::int64_t height, dist_tag tag,
                std::uint64_t seed, std::vector<double> weights);

    lattice_point origin() const { return origin_; }
    std::int64_t width() const { return width_; }
    std::int64_t height() const { return height_; }
    std::int64_t x_min() const { return origin_.x; }
    std::int64_t x_max() const { return origin_.x + width_ - 1; }
    std::int64_t n_min() const { return origin_.n; }
    std::int64_t n_max() const { return origin_.n + height_ - 1; }
    const dist_tag& tag() const { return tag_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<double>& weights() const { return weights_; }

    bool contains(std::int64_t x, std::int64_t n) const {
        return x >= x_min() && x <= x_max() && n >= n_min() && n <= n_max();
    }
    bool contains(lattice_point p) const { return contains(p.x, p.n); }
    // Throws out_of_window.
    double operator()(std::int64_t x, std::int64_t n) const;
    double at(std::int64_t x, std::int64_t n) const {
        return weights_[static_cast<std::size_t>((n - origin_.n) * width_ + (x - origin_.x))];
    }
    double total() const;

private:
    lattice_point origin_{};
    std::int64_t width_ = 0;
    std::int64_t height_ = 0;
    dist_tag tag_{};
    std::uint64_t seed_ = 0;
    std::vector<double> weights_;  // row-major: row n, then column x
};

lattice_env sample_lattice_env(const dist_tag& tag, lattice_point origin, std::int64_t width,
                               std::int64_t height, std::uint64_t seed);

// Explicit weights, row-major starting at row origin.n. Used for fixtures.
lattice_env make_lattice_env(lattice_point origin, std::int64_t width, std::int64_t height,
                             std::vector<double> weights);

void write_env_csv(std::ostream& os, const lattice_env& env);
lattice_env read_env_csv(std::istream& is);

struct box2 {
    double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
    double area() const { return (x1 - x0) * (y1 - y0); }
};

struct point_set {
    std::vector<std::pair<double, double>> points;  // lexicographically sorted
    box2 box{};
    std::uint64_t seed = 0;
};

point_set sample_poisson_points(double rate, const box2& box, std::uint64_t seed);

enum class line_kind { jump, linear };

// One line of a line environment.
//   jump:   t = jump locations (strictly increasing), v = jump sizes (> 0),
//           f(s) = base + sum of v over t <= s; base is f(x_min^-).
//   linear: t = knots (strictly increasing, spanning the domain), v = values.
struct line_fn {
    double base = 0.0;
    std::vector<double> t;
    std::vector<double> v;
    std::vector<double> cum;  // jump lines: base + prefix sums of v
};

class line_env {
public:
    line_env() = default;
    line_env(line_kind kind, double x_min, double x_max, std::vector<line_fn> lines);

    line_kind kind() const { return kind_; }
    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t n_lines() const { return lines_.size(); }
    // Lines are indexed 1..n_lines().
    const line_fn& line(std::int64_t i) const { return lines_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<line_fn>& lines() const { return lines_; }

    double value(std::int64_t i, double s) const;  // f_i(s)
    double left(std::int64_t i, double s) const;   // f_i(s^-); at x_min this is the base value
    double jump(std::int64_t i, double s) const { return value(i, s) - left(i, s); }
    // Sorted union of breakpoints of all lines inside [a, b].
    std::vector<double> breakpoints(double a, double b) const;

private:
    line_kind kind_ = line_kind::jump;
    double x_min_ = 0.0;
    double x_max_ = 0.0;
    std::vector<line_fn> lines_;
};

// Lattice embedding: row n becomes line n - n_min + 1 with f(x_min^-) = 0 and
// a jump of size G(r, n) at every integer r where the weight is positive.
line_env embed_lattice(const lattice_env& env);

line_env sample_poisson_lines(std::int64_t n, double horizon, double rate, std::uint64_t seed);

enum class walk_increment { gaussian, rademacher };

line_env sample_walk_lines(std::int64_t n, double horizon, double step, walk_increment inc,
                           std::uint64_t seed);

class clock_field {
public:
    explicit clock_field(std::uint64_t seed) : seed_(seed) {}
    std::uint64_t seed() const { return seed_; }
    // Exp(1) clock at the even lattice point (kappa, x). Throws parity_error.
    double operator()(std::int64_t kappa, std::int64_t x) const;

private:
    std::uint64_t seed_;
};

}  // namespace kpzlab
