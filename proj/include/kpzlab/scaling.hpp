#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kpzlab/env.hpp"
#include "kpzlab/lpp.hpp"

// Arctic curves and KPZ scaling parameters of the integrable models.
namespace kpzlab {

enum class model_kind { geometric, exponential, poisson_planar, poisson_lines, brownian, seppalainen_johansson };

std::string model_name(model_kind m);
model_kind parse_model(const std::string& name);  // throws invalid_param

struct model_spec {
    model_kind kind = model_kind::exponential;
    // geometric: mean gamma; seppalainen_johansson: p, with lambda = (1 - p) / p.
    double param = 0.0;

    static model_spec geometric(double gamma) { return {model_kind::geometric, gamma}; }
    static model_spec exponential() { return {model_kind::exponential, 0.0}; }
    static model_spec poisson_planar() { return {model_kind::poisson_planar, 0.0}; }
    static model_spec poisson_lines() { return {model_kind::poisson_lines, 0.0}; }
    static model_spec brownian() { return {model_kind::brownian, 0.0}; }
    static model_spec seppalainen_johansson(double p) { return {model_kind::seppalainen_johansson, p}; }
};

double sj_lambda(double p);

// Deterministic approximation g of the last passage value across n lines
// (m columns, or time t for the line and planar models). Throws
// inadmissible_direction (SJ: m * lambda <= n) or invalid_param.
double arctic_value(const model_spec& model, double m_or_t, double n);

struct scaling_params {
    model_spec model{};
    double rho = 1.0;
    int sign = 1;  // sign of chi; -1 only for the SJ model
    double alpha = 0.0, beta = 0.0, chi = 0.0, tau = 0.0;

    double chi_n(double n) const;  // chi n^{1/3}
    double tau_n(double n) const;  // tau n^{2/3}
};

// alpha = g, beta = g', and tau^3, chi^3 from the model recipe in terms of
// g, g', g'' at rho (n = 1). Derivatives are closed forms.
scaling_params scaling_params_for(const model_spec& model, double rho);

// Closed forms of the parameter table.
scaling_params table_params(const model_spec& model, double rho);

// First and second derivative of the arctic curve at rho (n = 1).
std::pair<double, double> arctic_derivatives(const model_spec& model, double rho);

// Planar Poisson at scale t: tau_t^3 = 8 t^2, chi_t^3 = t.
struct poisson_box_params {
    double tau = 0.0, chi = 0.0;
};
poisson_box_params poisson_box(double t);

// (x, s)_n = (floor(rho n s + tau n^{2/3} x), floor(-n s)).
lattice_point rescaled_point(const scaling_params& sp, double n, double x, double s);

struct rescaled_query {
    double x = 0.0, s = 0.0, y = 0.0, t = 1.0;
};

// standard: (X - alpha (t - s) n - beta tau (y - x) n^{2/3}) / (chi n^{1/3}).
// as_printed swaps alpha and beta in the two centering terms.
enum class centering { standard, as_printed };

// Rescaled k-th multi-point increment; -inf when s >= t.
double rescaled_value(const lattice_env& env, const scaling_params& sp, double n, const rescaled_query& q, int k = 1,
                      centering c = centering::standard);

// Inverse of the floor map: (c, r) -> ((c + rho r) / (tau n^{2/3}), -r / n).
std::vector<std::pair<double, double>> rescale_geodesic(const path& pi, const scaling_params& sp, double n);

struct plane_image {
    bool is_edge = false;
    lattice_point a{}, b{};  // b == a for a vertex
};

// The plane-to-lattice embedding: integer points go to (x, -y), other points
// to the lattice edge containing them, with the sign flip on the second
// coordinate.
plane_image embed_plane_to_lattice(double x, double y);

// CSV rows "model,param,rho,sign,alpha,beta,chi,tau" for each model and rho.
std::vector<std::string> scale_table_rows(const std::vector<model_spec>& models, const std::vector<double>& rhos);

}  // namespace kpzlab
