#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drchm/model.hpp"
#include "drchm/quadrature.hpp"

namespace drchm {

struct CovarianceConstants {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

// closed forms; RegimeError unless gamma, gamma' < 1/2
CovarianceConstants covariance_constants(const ModelParams& p);
// constants that make (c1 + c3 + c2 (2 + h)) e^{-h} agree with the quadrature oracle
CovarianceConstants adjudicated_constants(const ModelParams& p, const QuadratureConfig& q = {});

double mean_edge_count(const ModelParams& p);

// int_{u_lo}^1 min(a, c u^-gamma) du
double capped_radius_integral(double a, double c, double gamma, double u_lo);
// int_0^1 dw int_R dz g(z,w)^m with g(z,w) = int_{u_lo}^1 |[0,n] cap [z-R, z+R]| du
double window_pair_integral(const ModelParams& p, int m, double u_lo, const QuadratureConfig& q);

struct VarianceTerms {
    double single = 0.0;   // int |N|
    double squared = 0.0;  // int |N|^2
    double pair = 0.0;     // int int |N(p1,p2)|
    double total() const { return single + squared + pair; }
};
VarianceTerms oracle_variance_terms(const ModelParams& p, double t, const QuadratureConfig& q = {});
// Var S_n(t) for the window [0,n]
double oracle_variance(const ModelParams& p, double t, const QuadratureConfig& q = {});

struct CovarianceOracle {
    double var_a = 0.0;
    double cov_ab = 0.0;
    double cov_ac = 0.0;
    double value = 0.0;         // n -> inf limit of Cov(bar S_n(t1), bar S_n(t2))
    double window_value = 0.0;  // same with the pair term of the finite window [0,n]
    double printed = 0.0;       // (c1 + c3 + c2 (2 + h)) e^{-h}
};
CovarianceOracle oracle_covariance(const ModelParams& p, double t1, double t2,
                                   const QuadratureConfig& q = {});

double printed_covariance(const ModelParams& p, double lag);
// limit of Var/n as stated alongside the mean computation
double printed_variance_alt(const ModelParams& p);

struct VarianceAdjudication {
    double oracle = 0.0;
    double printed_covariance_lag0 = 0.0;
    double printed_variance_alt = 0.0;
    bool matches_covariance_form = false;
    bool matches_variance_form = false;
    std::string verdict;
};
VarianceAdjudication adjudicate_variance(const ModelParams& p, const QuadratureConfig& q = {},
                                         double match_rtol = 1e-6);

double stable_mean(const ModelParams& p, double epsilon);
// the other printed exponent, kept for the discrepancy report
double stable_mean_alt(const ModelParams& p, double epsilon);
// int_{threshold}^inf j nu(dj), by quadrature
double stable_mean_quadrature(const ModelParams& p, double epsilon, const QuadratureConfig& q = {});
// variance at a fixed time of the part with jumps J in [eps_lo, eps_hi]
double stable_band_variance(const ModelParams& p, double eps_hi, double eps_lo);

struct LemmaCheck {
    std::string lemma_id;
    std::string kind;  // "equality", "bound", "finite"
    int draws = 0;
    double max_rel_err = 0.0;  // equality parts
    double max_ratio = 0.0;    // bound parts: numeric / bound
    int bound_violations = 0;
};
std::vector<LemmaCheck> lemma_catalog_check(const QuadratureConfig& q = {}, int draws = 20,
                                            std::uint64_t seed = 7);
std::string to_jsonl(const LemmaCheck& c);

}  // namespace drchm
