#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "drchm/model.hpp"
#include "drchm/oracles.hpp"
#include "drchm/paths.hpp"
#include "drchm/sampler.hpp"

namespace drchm {

struct FactorizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// (c1 + c3 + c2 (2 + h)) e^{-h}; pass other constants to use the adjudicated set
double gaussian_covariance(const ModelParams& p, double lag,
                           const std::optional<CovarianceConstants>& constants = std::nullopt);

struct GaussianGrid {
    std::vector<double> grid_times;
    Eigen::MatrixXd covariance;
    Eigen::MatrixXd factor;  // lower triangular, factor * factor^T = covariance + jitter I
    double jitter = 0.0;
};

GaussianGrid make_gaussian_grid(const ModelParams& p, const std::vector<double>& times,
                                const std::optional<CovarianceConstants>& constants = std::nullopt);
GaussianGrid make_gaussian_grid(const std::vector<double>& times, const Eigen::MatrixXd& cov);

std::vector<double> sample_gaussian_path(const GaussianGrid& g, std::uint64_t master_seed,
                                         std::uint64_t stream);

// S*(t) = sum J (t - B) over points alive at t
LinearPath stable_path(const std::vector<LimitPoint>& pts);

struct StablePathSample {
    std::vector<LimitPoint> points;
    double epsilon = 1.0;
    LinearPath raw;       // S*_eps
    LinearPath centered;  // S*_eps - E S*_eps
};

StablePathSample sample_stable_path(const ModelParams& p, double epsilon, const SamplerConfig& c,
                                    std::uint64_t stream);

struct RefinementReport {
    std::vector<double> eps;
    // distances[k][r]: sup distance between levels k and k+1 in replicate r
    std::vector<std::vector<double>> distances;
    std::vector<double> median;
    std::vector<double> q10;
    std::vector<double> q90;
    // largest violation of the band identity over all replicates
    double max_identity_error = 0.0;
};

// levels share the point set: finer levels add smaller jumps only
RefinementReport epsilon_refinement_study(const ModelParams& p, const std::vector<double>& eps,
                                          int reps, const SamplerConfig& c,
                                          std::uint64_t first_stream = 0);

}  // namespace drchm
