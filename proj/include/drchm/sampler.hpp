#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "drchm/model.hpp"

namespace drchm {

struct TruncationError : std::runtime_error {
    double bound;
    double tolerance;
    TruncationError(double bound_, double tolerance_);
};

struct SamplerConfig {
    std::uint64_t master_seed = 1;
    double w_min = 1e-3;
    double missed_edge_tolerance = 0.05;
    double band_ratio = 0.5;
    // lower w_min per replicate until the missed-edge bound meets the tolerance
    bool auto_w_min = false;
};

void validate(const SamplerConfig& c);

struct VertexSample {
    std::vector<Vertex> vertices;  // the first n_alive_at_zero are alive at time 0
    std::size_t n_alive_at_zero = 0;
    double u_min = 1.0;
    double b_min = 0.0;
};

struct InteractionSample {
    std::vector<Interaction> interactions;
    double w_min = 1.0;
    double missed_edge_bound = 0.0;
};

struct LimitPoint {
    double j = 0.0;
    double b = 0.0;
    double l = 0.0;
    double death() const { return b + l; }
};

VertexSample sample_vertices(const ModelParams& p, const SamplerConfig& c, std::uint64_t stream);

// expected number of edges with w < w_min, summed over the sample
double missed_edge_bound(const ModelParams& p, const VertexSample& vs, double w_min);
// largest w_min whose bound is <= tol
double w_min_for_tolerance(const ModelParams& p, const VertexSample& vs, double tol);

InteractionSample sample_interactions(const ModelParams& p, const SamplerConfig& c,
                                      const VertexSample& vs, std::uint64_t stream);

// nu([a, inf)) = c~^{1/g} a^{-1/g}
double jump_tail_rate(const ModelParams& p, double a);
double jump_threshold(const ModelParams& p, double epsilon);

// points with j in [j_lo, j_hi) and lifetime meeting [0,1]
std::vector<LimitPoint> sample_jump_band(const ModelParams& p, double j_lo, double j_hi,
                                         const SamplerConfig& c, std::uint64_t stream,
                                         std::uint64_t substream = 0);

std::vector<LimitPoint> sample_limit_points(const ModelParams& p, double epsilon,
                                            const SamplerConfig& c, std::uint64_t stream);

}  // namespace drchm
