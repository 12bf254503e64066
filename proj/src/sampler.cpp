#include "drchm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drchm/rng.hpp"

namespace drchm {

TruncationError::TruncationError(double bound_, double tolerance_)
    : std::runtime_error("missed-edge bound " + std::to_string(bound_) + " exceeds tolerance " +
                         std::to_string(tolerance_) + "; lower w_min"),
      bound(bound_),
      tolerance(tolerance_) {}

void validate(const SamplerConfig& c) {
    if (!(c.w_min > 0.0 && c.w_min <= 1.0)) throw std::invalid_argument("w_min must lie in (0,1]");
    if (!(c.missed_edge_tolerance > 0.0))
        throw std::invalid_argument("missed_edge_tolerance must be positive");
    if (!(c.band_ratio > 0.0 && c.band_ratio < 1.0))
        throw std::invalid_argument("band_ratio must lie in (0,1)");
}

VertexSample sample_vertices(const ModelParams& p, const SamplerConfig& c, std::uint64_t stream) {
    Rng rng(c.master_seed, stream, StreamTag::vertices);
    VertexSample vs;
    if (!(p.n > 0.0)) return vs;
    const auto n_alive = rng.poisson(p.n);
    const auto n_born = rng.poisson(p.n);
    vs.vertices.reserve(n_alive + n_born);
    for (std::uint64_t k = 0; k < n_alive; ++k) {
        Vertex v;
        v.x = rng.uniform(0.0, p.n);
        v.u = rng.uniform_oc();
        const double age = rng.exponential();
        const double residual = rng.exponential();
        v.b = -age;
        v.l = age + residual;
        vs.vertices.push_back(v);
    }
    for (std::uint64_t k = 0; k < n_born; ++k) {
        Vertex v;
        v.x = rng.uniform(0.0, p.n);
        v.u = rng.uniform_oc();
        v.b = rng.uniform_oc();
        v.l = rng.exponential();
        vs.vertices.push_back(v);
    }
    vs.n_alive_at_zero = n_alive;
    for (const auto& v : vs.vertices) {
        vs.u_min = std::min(vs.u_min, v.u);
        vs.b_min = std::min(vs.b_min, v.b);
    }
    return vs;
}

static double bound_unit(const ModelParams& p, const VertexSample& vs) {
    double s = 0.0;
    for (const auto& v : vs.vertices) {
        const double span = std::min(v.death(), 1.0) - v.b;
        if (span > 0.0) s += std::pow(v.u, -p.gamma) * span;
    }
    return p.c_tilde() * s;
}

double missed_edge_bound(const ModelParams& p, const VertexSample& vs, double w_min) {
    return bound_unit(p, vs) * std::pow(w_min, 1.0 - p.gamma_prime);
}

double w_min_for_tolerance(const ModelParams& p, const VertexSample& vs, double tol) {
    const double b1 = bound_unit(p, vs);
    if (b1 <= tol) return 1.0;
    return std::pow(tol / b1, 1.0 / (1.0 - p.gamma_prime));
}

InteractionSample sample_interactions(const ModelParams& p, const SamplerConfig& c,
                                      const VertexSample& vs, std::uint64_t stream) {
    InteractionSample out;
    double w_min = c.w_min;
    if (c.auto_w_min) w_min = std::min(w_min, w_min_for_tolerance(p, vs, c.missed_edge_tolerance));
    out.w_min = w_min;
    if (vs.vertices.empty()) return out;
    out.missed_edge_bound = missed_edge_bound(p, vs, w_min);
    // small slack for the pow round trip in auto mode
    if (out.missed_edge_bound > c.missed_edge_tolerance * (1.0 + 1e-9))
        throw TruncationError(out.missed_edge_bound, c.missed_edge_tolerance);
    if (w_min >= 1.0) return out;

    Rng rng(c.master_seed, stream, StreamTag::interactions);
    const double t_lo = vs.b_min;
    const double span = 1.0 - t_lo;
    const double u_fac = p.beta * std::pow(vs.u_min, -p.gamma);
    double w_hi = 1.0;
    while (w_hi > w_min) {
        const double w_lo = std::max(w_hi * c.band_ratio, w_min);
        const double margin = u_fac * std::pow(w_lo, -p.gamma_prime);
        const double z_lo = -margin;
        const double z_len = p.n + 2.0 * margin;
        const auto cnt = rng.poisson(z_len * (w_hi - w_lo) * span);
        for (std::uint64_t k = 0; k < cnt; ++k) {
            Interaction i;
            i.z = z_lo + z_len * rng.uniform();
            // (w_lo, w_hi]
            i.w = w_hi - (w_hi - w_lo) * rng.uniform();
            i.r = t_lo + span * rng.uniform();
            out.interactions.push_back(i);
        }
        w_hi = w_lo;
    }
    return out;
}

double jump_tail_rate(const ModelParams& p, double a) {
    return std::pow(p.c_tilde(), 1.0 / p.gamma) * std::pow(a, -1.0 / p.gamma);
}

double jump_threshold(const ModelParams& p, double epsilon) {
    return p.c_tilde() * std::pow(epsilon, p.gamma);
}

std::vector<LimitPoint> sample_jump_band(const ModelParams& p, double j_lo, double j_hi,
                                         const SamplerConfig& c, std::uint64_t stream,
                                         std::uint64_t substream) {
    if (!(p.gamma > 0.5)) throw std::domain_error("limit points need gamma > 1/2");
    if (!(j_lo > 0.0) || !(j_hi > j_lo)) throw std::domain_error("bad jump band");
    Rng rng(c.master_seed, stream, StreamTag::limit, substream);
    const double inv_g = 1.0 / p.gamma;
    const double tail_lo = std::pow(j_lo, -inv_g);
    const double tail_hi = std::isinf(j_hi) ? 0.0 : std::pow(j_hi, -inv_g);
    const double rate = std::pow(p.c_tilde(), inv_g) * (tail_lo - tail_hi);
    auto draw_j = [&] { return std::pow(tail_hi + rng.uniform_oc() * (tail_lo - tail_hi), -p.gamma); };

    std::vector<LimitPoint> pts;
    const auto n_alive = rng.poisson(rate);
    const auto n_born = rng.poisson(rate);
    pts.reserve(n_alive + n_born);
    for (std::uint64_t k = 0; k < n_alive; ++k) {
        LimitPoint q;
        q.j = draw_j();
        const double age = rng.exponential();
        q.b = -age;
        q.l = age + rng.exponential();
        pts.push_back(q);
    }
    for (std::uint64_t k = 0; k < n_born; ++k) {
        LimitPoint q;
        q.j = draw_j();
        q.b = rng.uniform_oc();
        q.l = rng.exponential();
        pts.push_back(q);
    }
    return pts;
}

std::vector<LimitPoint> sample_limit_points(const ModelParams& p, double epsilon,
                                            const SamplerConfig& c, std::uint64_t stream) {
    if (!(p.gamma > 0.5)) throw std::domain_error("limit points need gamma > 1/2");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::domain_error("epsilon must lie in (0,1]");
    return sample_jump_band(p, jump_threshold(p, epsilon), std::numeric_limits<double>::infinity(),
                            c, stream);
}

}  // namespace drchm
