#include "kpzlab/scaling.hpp"

#include <cmath>
#include <cstdio>

#include "kpzlab/core_metric.hpp"
#include "kpzlab/errors.hpp"

namespace kpzlab {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw invalid_param(std::string(what) + " must be positive and finite");
}

void validate(const model_spec& m, double rho) {
    require_positive(rho, "rho");
    if (m.kind == model_kind::geometric) require_positive(m.param, "geometric mean gamma");
    if (m.kind == model_kind::seppalainen_johansson) {
        if (!(m.param > 0.0 && m.param < 1.0)) throw invalid_param("SJ parameter p must lie in (0, 1)");
        if (!(rho * sj_lambda(m.param) > 1.0))
            throw inadmissible_direction("SJ needs rho > 1 / lambda");
    }
}

double gamma_bar(double gamma) { return std::sqrt(gamma * (1.0 + gamma)); }

// std::cbrt is only faithfully rounded (glibc returns 16^{1/3} one ulp high),
// so pick the neighbour whose cube is closest, compared in quad precision.
double cube_root(double v) {
    if (v < 0.0) return -cube_root(-v);
    const double y = std::cbrt(v);
    if (v == 0.0 || !std::isfinite(v)) return y;
    auto miss = [v](double c) {
        const __float128 q = c;
        const __float128 d = q * q * q - static_cast<__float128>(v);
        return d < 0 ? -d : d;
    };
    double best = y;
    for (double c : {std::nextafter(y, 0.0), std::nextafter(y, HUGE_VAL)})
        if (miss(c) < miss(best)) best = c;
    return best;
}

}  // namespace

std::string model_name(model_kind m) {
    switch (m) {
        case model_kind::geometric: return "geometric";
        case model_kind::exponential: return "exponential";
        case model_kind::poisson_planar: return "poisson_planar";
        case model_kind::poisson_lines: return "poisson_lines";
        case model_kind::brownian: return "brownian";
        case model_kind::seppalainen_johansson: return "seppalainen_johansson";
    }
    return "unknown";
}

model_kind parse_model(const std::string& name) {
    for (auto m : {model_kind::geometric, model_kind::exponential, model_kind::poisson_planar,
                   model_kind::poisson_lines, model_kind::brownian, model_kind::seppalainen_johansson})
        if (model_name(m) == name) return m;
    if (name == "sj") return model_kind::seppalainen_johansson;
    if (name == "poisson") return model_kind::poisson_planar;
    throw invalid_param("unknown model '" + name + "'");
}

double sj_lambda(double p) { return (1.0 - p) / p; }

double arctic_value(const model_spec& model, double m, double n) {
    require_positive(n, "n");
    if (!(m >= 0.0)) throw invalid_param("m (or t) must be nonnegative");
    switch (model.kind) {
        case model_kind::geometric: {
            require_positive(model.param, "geometric mean gamma");
            const double g = model.param;
            return (m + n) * g + 2.0 * std::sqrt(m * n * g * (1.0 + g));
        }
        case model_kind::exponential: return n + m + 2.0 * std::sqrt(n * m);
        case model_kind::poisson_lines: return m + 2.0 * std::sqrt(m * n);
        case model_kind::brownian:
        case model_kind::poisson_planar: return 2.0 * std::sqrt(m * n);
        case model_kind::seppalainen_johansson: {
            if (!(model.param > 0.0 && model.param < 1.0)) throw invalid_param("SJ parameter p must lie in (0, 1)");
            const double lam = sj_lambda(model.param);
            if (!(m * lam > n)) throw inadmissible_direction("SJ arctic curve needs m * lambda > n");
            const double r = std::sqrt(m * lam) - std::sqrt(n);
            return r * r / (1.0 + lam);
        }
    }
    throw invalid_param("unknown model");
}

std::pair<double, double> arctic_derivatives(const model_spec& model, double rho) {
    validate(model, rho);
    const double sr = std::sqrt(rho);
    const double r32 = rho * sr;
    switch (model.kind) {
        case model_kind::geometric: {
            const double gb = gamma_bar(model.param);
            return {model.param + gb / sr, -gb / (2.0 * r32)};
        }
        case model_kind::exponential:
        case model_kind::poisson_lines: return {1.0 + 1.0 / sr, -1.0 / (2.0 * r32)};
        case model_kind::brownian:
        case model_kind::poisson_planar: return {1.0 / sr, -1.0 / (2.0 * r32)};
        case model_kind::seppalainen_johansson: {
            const double lam = sj_lambda(model.param);
            const double sl = std::sqrt(lam);
            return {(lam - sl / sr) / (1.0 + lam), sl / (2.0 * (1.0 + lam) * r32)};
        }
    }
    throw invalid_param("unknown model");
}

double scaling_params::chi_n(double n) const { return chi * std::cbrt(n); }
double scaling_params::tau_n(double n) const { return tau * std::cbrt(n * n); }

scaling_params scaling_params_for(const model_spec& model, double rho) {
    validate(model, rho);
    const auto [g1, g2] = arctic_derivatives(model, rho);
    double tau3 = 0.0, chi3 = 0.0;
    switch (model.kind) {
        case model_kind::geometric: {
            const double a = g1 * (1.0 + g1);
            tau3 = 2.0 * a / (g2 * g2);
            chi3 = a * a / (-2.0 * g2);
            break;
        }
        case model_kind::exponential:
            tau3 = 2.0 * g1 * g1 / (g2 * g2);
            chi3 = g1 * g1 * g1 * g1 / (-2.0 * g2);
            break;
        case model_kind::poisson_lines:
        case model_kind::poisson_planar:
            tau3 = 2.0 * g1 / (g2 * g2);
            chi3 = g1 * g1 / (-2.0 * g2);
            break;
        case model_kind::brownian:
            tau3 = 2.0 / (g2 * g2);
            chi3 = 1.0 / (-2.0 * g2);
            break;
        case model_kind::seppalainen_johansson: {
            const double a = g1 * (1.0 - g1);
            tau3 = 2.0 * a / (g2 * g2);
            chi3 = a * a / (-2.0 * g2);
            break;
        }
    }
    scaling_params sp;
    sp.model = model;
    sp.rho = rho;
    sp.alpha = arctic_value(model, rho, 1.0);
    sp.beta = g1;
    sp.tau = cube_root(tau3);
    sp.chi = cube_root(chi3);
    sp.sign = sp.chi < 0.0 ? -1 : 1;
    return sp;
}

scaling_params table_params(const model_spec& model, double rho) {
    validate(model, rho);
    const double sr = std::sqrt(rho);
    const double r32 = rho * sr;
    double chi3 = 0.0, alpha = 0.0, beta = 0.0, ratio = 0.0;  // ratio = chi / tau^2
    switch (model.kind) {
        case model_kind::seppalainen_johansson: {
            const double lam = sj_lambda(model.param);
            const double sl = std::sqrt(lam);
            const double a = std::sqrt(lam * rho) - 1.0;
            const double b = sr + sl;
            chi3 = -sl * a * a * b * b / (sr * (lam + 1.0) * (lam + 1.0) * (lam + 1.0));
            alpha = a * a / (lam + 1.0);
            beta = (lam - std::sqrt(lam / rho)) / (lam + 1.0);
            ratio = -sl / (4.0 * (lam + 1.0) * r32);
            break;
        }
        case model_kind::geometric: {
            const double g = model.param;
            const double gb = gamma_bar(g);
            const double c = gb * (1.0 + rho) + (2.0 * g + 1.0) * sr;
            chi3 = gb * c * c / sr;
            alpha = g * (rho + 1.0) + 2.0 * gb * sr;
            beta = g + gb / sr;
            ratio = gb / (4.0 * r32);
            break;
        }
        case model_kind::exponential: {
            const double c = sr + 1.0;
            chi3 = c * c * c * c / sr;
            alpha = c * c;
            beta = 1.0 + 1.0 / sr;
            ratio = 1.0 / (4.0 * r32);
            break;
        }
        case model_kind::poisson_planar:
            chi3 = sr;
            alpha = 2.0 * sr;
            beta = 1.0 / sr;
            ratio = 1.0 / (4.0 * r32);
            break;
        case model_kind::brownian:
            chi3 = r32;
            alpha = 2.0 * sr;
            beta = 1.0 / sr;
            ratio = 1.0 / (4.0 * r32);
            break;
        case model_kind::poisson_lines:
            chi3 = sr * (1.0 + sr) * (1.0 + sr);
            alpha = rho + 2.0 * sr;
            beta = 1.0 + 1.0 / sr;
            ratio = 1.0 / (4.0 * r32);
            break;
    }
    scaling_params sp;
    sp.model = model;
    sp.rho = rho;
    sp.alpha = alpha;
    sp.beta = beta;
    sp.chi = cube_root(chi3);
    sp.tau = std::sqrt(sp.chi / ratio);
    sp.sign = sp.chi < 0.0 ? -1 : 1;
    return sp;
}

poisson_box_params poisson_box(double t) {
    require_positive(t, "t");
    return {cube_root(8.0 * t * t), cube_root(t)};
}

lattice_point rescaled_point(const scaling_params& sp, double n, double x, double s) {
    return {static_cast<std::int64_t>(std::floor(sp.rho * n * s + sp.tau_n(n) * x)),
            static_cast<std::int64_t>(std::floor(-n * s))};
}

double rescaled_value(const lattice_env& env, const scaling_params& sp, double n, const rescaled_query& q, int k,
                      centering c) {
    if (!(q.s < q.t)) return neg_inf;
    if (k < 1) throw invalid_param("k must be at least 1");
    const lattice_point a = rescaled_point(sp, n, q.x, q.s);
    const lattice_point b = rescaled_point(sp, n, q.y, q.t);
    double x = lpp_multipoint(env, a, b, k);
    if (k > 1) x -= lpp_multipoint(env, a, b, k - 1);
    if (x == neg_inf) return neg_inf;
    const double time_coef = c == centering::standard ? sp.alpha : sp.beta;
    const double space_coef = c == centering::standard ? sp.beta : sp.alpha;
    return (x - time_coef * (q.t - q.s) * n - space_coef * sp.tau * (q.y - q.x) * std::cbrt(n * n)) / sp.chi_n(n);
}

std::vector<std::pair<double, double>> rescale_geodesic(const path& pi, const scaling_params& sp, double n) {
    std::vector<std::pair<double, double>> out;
    out.reserve(pi.vertices.size());
    const double tn = sp.tau_n(n);
    for (const auto& v : pi.vertices) {
        const double c = static_cast<double>(v.x);
        const double r = static_cast<double>(v.n);
        out.emplace_back((c + sp.rho * r) / tn, r == 0.0 ? 0.0 : -r / n);
    }
    return out;
}

plane_image embed_plane_to_lattice(double x, double y) {
    const bool xi = std::floor(x) == x;
    const bool yi = std::floor(y) == y;
    auto to_int = [](double v) { return static_cast<std::int64_t>(v); };
    plane_image out;
    if (xi && yi) {
        out.a = out.b = {to_int(x), to_int(-y)};
    } else if (!xi && yi) {
        out.is_edge = true;
        out.a = {to_int(std::floor(x)), to_int(-y)};
        out.b = {to_int(std::ceil(x)), to_int(-y)};
    } else if (xi) {
        out.is_edge = true;
        out.a = {to_int(x), to_int(std::ceil(-y))};
        out.b = {to_int(x), to_int(std::floor(-y))};
    } else {
        out.is_edge = true;
        out.a = {to_int(std::ceil(x)), to_int(std::ceil(-y))};
        out.b = {to_int(std::ceil(x)), to_int(std::floor(-y))};
    }
    return out;
}

std::vector<std::string> scale_table_rows(const std::vector<model_spec>& models, const std::vector<double>& rhos) {
    std::vector<std::string> rows;
    char buf[512];
    for (const auto& m : models) {
        for (double rho : rhos) {
            const scaling_params sp = scaling_params_for(m, rho);
            std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g", model_name(m.kind).c_str(),
                          m.param, rho, sp.sign, sp.alpha, sp.beta, sp.chi, sp.tau);
            rows.emplace_back(buf);
        }
    }
    return rows;
}

}  // namespace kpzlab
