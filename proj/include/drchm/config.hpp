#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "drchm/model.hpp"
#include "drchm/quadrature.hpp"
#include "drchm/sampler.hpp"

namespace drchm {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
    std::string kind = "simulate";
    ModelParams model;
    SamplerConfig sampler;
    QuadratureConfig quad;
    int replicates = 100;
    int workers = 1;
    std::vector<double> eval_times{0.25, 0.5, 0.75};
    std::string out_dir = ".";
    bool write_paths = false;

    // covariance lags are measured from lag_base
    double lag_base = 0.3;
    std::vector<double> lags{0.0, 0.2, 0.5};
    std::vector<double> n_ladder;  // empty list skips the ladder part
    int batches = 10;

    double epsilon = 0.005;
    std::vector<double> eps_sequence{0.1, 0.05, 0.025, 0.0125};
    int limit_replicates = 20000;  // limit-path draws: KS reference per batch, limit moments
    int hill_k = 0;  // 0: ceil(sqrt(count))
    int jump_sample_size = 100000;
    double mark_exponent = 2.0 / 3.0;  // u_n = n^-mark_exponent
};

ExperimentConfig default_config(const std::string& kind);
// JSON text; unknown keys raise ConfigError
ExperimentConfig parse_config(const std::string& json_text, const std::string& kind);
ExperimentConfig load_config(const std::string& path, const std::string& kind);
void validate(const ExperimentConfig& c);

}  // namespace drchm
