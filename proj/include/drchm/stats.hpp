#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace drchm {

struct MomentSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
    // jackknife; +inf when count is too small
    double mean_se = 0.0;
    double variance_se = 0.0;
    double skewness_se = 0.0;
    double kurtosis_se = 0.0;
};

MomentSummary summarize(const std::vector<double>& x);
std::string to_jsonl(const MomentSummary& m, const std::string& label);

struct CovEstimate {
    double cov = 0.0;
    double se = 0.0;
};
CovEstimate cross_covariance(const std::vector<double>& a, const std::vector<double>& b);

struct NormalityResult {
    double skew_z = 0.0;
    double kurt_z = 0.0;
    double omnibus = 0.0;
    double p_value = 1.0;  // chi-square with 2 dof
};
NormalityResult normality_statistic(const std::vector<double>& x);
// upper quantile of chi-square(2)
double chi2_2_quantile(double level);

struct HillResult {
    double alpha_hat = 0.0;
    double se = 0.0;
    std::size_t k = 0;
    bool degenerate = false;  // all top order statistics equal
};
HillResult hill_tail_index(const std::vector<double>& x, std::size_t k);
HillResult hill_tail_index(const std::vector<double>& x);  // k = ceil(sqrt(count))

double ks_distance(std::vector<double> a, std::vector<double> b);

double quantile(std::vector<double> x, double q);
double median(std::vector<double> x);

}  // namespace drchm
