#pragma once

#include <stdexcept>
#include <string>

namespace drchm {

struct RegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

enum class Regime { gaussian, stable };

struct ModelParams {
    double beta = 0.25;
    double gamma = 0.2;
    double gamma_prime = 0.2;
    double n = 100.0;

    ModelParams() = default;
    ModelParams(double beta_, double gamma_, double gamma_prime_, double n_);

    Regime regime() const { return gamma < 0.5 ? Regime::gaussian : Regime::stable; }
    // 2 beta / (1 - gamma')
    double c_tilde() const { return 2.0 * beta / (1.0 - gamma_prime); }
};

// throws std::invalid_argument / RegimeError on bad fields
void validate(const ModelParams& p);

struct Vertex {
    double x = 0.0;
    double u = 1.0;
    double b = 0.0;
    double l = 1.0;
    double death() const { return b + l; }
};

struct Interaction {
    double z = 0.0;
    double w = 1.0;
    double r = 0.0;
};

enum class Sign { plus, minus };

double spatial_radius(const ModelParams& p, double u, double w);
bool spatially_connected(const ModelParams& p, const Vertex& v, const Interaction& i);
// pair is an edge at some time: spatial rule and b <= r <= b + l
bool is_edge(const ModelParams& p, const Vertex& v, const Interaction& i);
bool is_connected(const ModelParams& p, const Vertex& v, const Interaction& i, double t);

double spatial_nbhd_size(const ModelParams& p, double u);
double temporal_nbhd_size(const Vertex& v, double t);
double pm_temporal_nbhd_size(const Vertex& v, double t, Sign s);

std::string to_string(Regime r);

}  // namespace drchm
