#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <thread>
#include <vector>

#include "drchm/config.hpp"
#include "drchm/limit_processes.hpp"
#include "drchm/oracles.hpp"
#include "drchm/paths.hpp"
#include "drchm/stats.hpp"

namespace drchm {

// Runs f(i) for i in [0, count) on `workers` threads. Each index owns its
// output slot, so results never depend on scheduling.
template <class F>
void parallel_for(std::size_t count, int workers, F&& f) {
    const auto nw = static_cast<std::size_t>(workers < 1 ? 1 : workers);
    if (nw == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(nw, count); ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    f(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

struct ReplicateOptions {
    bool keep_path = false;
    bool mark_split = false;
    double mark_threshold = 0.0;  // u below this counts as low mark
    bool identities = false;      // plus/minus and low/high recombination
    bool brute_force = false;     // compare indexed pairing to all pairs
};

struct ReplicateResult {
    std::vector<double> s;     // S_n at the eval times
    std::vector<double> low;   // S_n^<= at the eval times
    std::vector<double> high;  // S_n^>= at the eval times
    double high_sup_centered = 0.0;  // sup |S_n^>= - E S_n^>=| (unscaled)
    double missed_edge_bound = 0.0;
    double w_min = 0.0;
    std::size_t vertices = 0;
    std::size_t interactions = 0;
    std::size_t edges = 0;
    double pm_identity_error = 0.0;
    double mark_identity_error = 0.0;
    bool brute_force_equal = true;
    StepPath path;
};

// E S_n^>=(t) for threshold u_thr, given interactions truncated at w_min
double high_mark_mean(const ModelParams& p, double u_thr, double w_min);

ReplicateResult run_replicate(const ModelParams& p, const SamplerConfig& c, std::uint64_t stream,
                              const std::vector<double>& times, const ReplicateOptions& o);
std::vector<ReplicateResult> run_replicates(const ModelParams& p, const SamplerConfig& c, int count,
                                            std::uint64_t first_stream, const std::vector<double>& times,
                                            const ReplicateOptions& o, int workers);

// scaling used for bar S_n: sqrt(n) for the Gaussian regime, n^gamma otherwise
double fluctuation_scale(const ModelParams& p);

struct TimeVariance {
    double t = 0.0;
    MomentSummary raw;  // of S_n(t)
    MomentSummary emp;  // of bar S_n(t)
    double oracle = 0.0;  // oracle_variance / n
    double z = 0.0;
    NormalityResult normality;
    bool normality_rejects = false;  // at 99.9%
};
struct CovarianceRow {
    double t1 = 0.0, t2 = 0.0;
    CovEstimate emp;
    CovarianceOracle oracle;
    double z_limit = 0.0;
    double z_window = 0.0;
};
struct GaussianReport {
    ModelParams model;
    int replicates = 0;
    double max_missed_edge_bound = 0.0;
    double mean_oracle = 0.0;
    std::vector<TimeVariance> variance;
    std::vector<CovarianceRow> covariance;
    VarianceAdjudication adjudication;
    std::vector<double> n_ladder;
    std::vector<std::vector<double>> low_mark_var;  // [batch][ladder index]
    double low_mark_decreasing_fraction = 0.0;
};
GaussianReport run_validate_gaussian(const ExperimentConfig& cfg, std::ostream* jsonl = nullptr);

struct StableReport {
    ModelParams model;
    HillResult hill_j;
    std::size_t j_count = 0;
    HillResult hill_s;
    int s_replicates = 0;
    double limit_mean_emp = 0.0, limit_mean_se = 0.0, limit_mean_oracle = 0.0;
    double band_var_emp = 0.0, band_var_se = 0.0, band_var_oracle = 0.0;
    std::vector<double> n_ladder;
    std::vector<std::vector<double>> ks;  // [batch][ladder index]
    double ks_decreasing_fraction = 0.0;
    std::vector<double> high_mark_median;  // per ladder entry, n^-gamma scaled
    RefinementReport refinement;
};
StableReport run_validate_stable(const ExperimentConfig& cfg, std::ostream* jsonl = nullptr);

struct MarksReport {
    int replicates = 0;
    double max_pm_error = 0.0;
    double max_mark_error = 0.0;
    int brute_force_checked = 0;
    int brute_force_mismatches = 0;
};
MarksReport run_validate_marks(const ExperimentConfig& cfg, std::ostream* jsonl = nullptr);

struct SimulateReport {
    std::vector<MomentSummary> raw;     // per eval time
    std::vector<MomentSummary> scaled;  // bar S_n
    double mean_oracle = 0.0;
    double max_missed_edge_bound = 0.0;
};
// path CSVs go to cfg.out_dir when cfg.write_paths
SimulateReport run_simulate(const ExperimentConfig& cfg, std::ostream* jsonl = nullptr);

void run_oracle_report(const ExperimentConfig& cfg, std::ostream& jsonl);
void run_sample_limit(const ExperimentConfig& cfg, std::ostream& jsonl);

// dispatch on cfg.kind; writes <out_dir>/<kind>.jsonl
void run_experiment(const ExperimentConfig& cfg);

}  // namespace drchm
