#include "drchm/model.hpp"

#include <cmath>

namespace drchm {

ModelParams::ModelParams(double beta_, double gamma_, double gamma_prime_, double n_)
    : beta(beta_), gamma(gamma_), gamma_prime(gamma_prime_), n(n_) {
    validate(*this);
}

void validate(const ModelParams& p) {
    if (!(p.beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (!(p.gamma > 0.0 && p.gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0,1)");
    if (!(p.gamma_prime > 0.0 && p.gamma_prime < 1.0))
        throw std::invalid_argument("gamma_prime must lie in (0,1)");
    if (!(p.n >= 0.0)) throw std::invalid_argument("n must be nonnegative");
    if (p.gamma == 0.5) throw RegimeError("gamma = 1/2 is not covered by either regime");
}

double spatial_radius(const ModelParams& p, double u, double w) {
    if (!(u > 0.0) || !(w > 0.0)) throw std::domain_error("weights must be positive");
    return p.beta * std::pow(u, -p.gamma) * std::pow(w, -p.gamma_prime);
}

bool spatially_connected(const ModelParams& p, const Vertex& v, const Interaction& i) {
    return std::abs(v.x - i.z) <= spatial_radius(p, v.u, i.w);
}

bool is_edge(const ModelParams& p, const Vertex& v, const Interaction& i) {
    return v.b <= i.r && i.r <= v.b + v.l && spatially_connected(p, v, i);
}

bool is_connected(const ModelParams& p, const Vertex& v, const Interaction& i, double t) {
    return i.r <= t && t <= v.b + v.l && is_edge(p, v, i);
}

double spatial_nbhd_size(const ModelParams& p, double u) {
    if (!(u > 0.0)) throw std::domain_error("weight must be positive");
    return p.c_tilde() * std::pow(u, -p.gamma);
}

double temporal_nbhd_size(const Vertex& v, double t) {
    return (v.b <= t && t <= v.b + v.l) ? t - v.b : 0.0;
}

double pm_temporal_nbhd_size(const Vertex& v, double t, Sign s) {
    if (s == Sign::plus) return v.b <= t ? std::min(v.b + v.l, t) - v.b : 0.0;
    return v.b + v.l <= t ? v.l : 0.0;
}

std::string to_string(Regime r) { return r == Regime::gaussian ? "gaussian" : "stable"; }

}  // namespace drchm
