#include "drchm/limit_processes.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "drchm/rng.hpp"
#include "drchm/stats.hpp"

namespace drchm {

double gaussian_covariance(const ModelParams& p, double lag,
                           const std::optional<CovarianceConstants>& constants) {
    const auto c = constants ? *constants : covariance_constants(p);
    if (!(p.gamma < 0.5) || !(p.gamma_prime < 0.5)) throw RegimeError("Gaussian limit needs gamma, gamma' < 1/2");
    const double h = std::abs(lag);
    return (c.c1 + c.c3 + c.c2 * (2.0 + h)) * std::exp(-h);
}

GaussianGrid make_gaussian_grid(const std::vector<double>& times, const Eigen::MatrixXd& cov) {
    const auto m = static_cast<Eigen::Index>(times.size());
    if (m == 0 || m > 512) throw std::invalid_argument("grid must have 1..512 points");
    if (cov.rows() != m || cov.cols() != m) throw std::invalid_argument("covariance shape");
    GaussianGrid g;
    g.grid_times = times;
    g.covariance = cov;
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        const double jmax = 1e-10 * cov.trace() / static_cast<double>(m);
        double j = jmax * 1e-4;
        for (; j <= jmax * (1.0 + 1e-12); j *= 10.0) {
            llt.compute(cov + j * Eigen::MatrixXd::Identity(m, m));
            if (llt.info() == Eigen::Success) break;
        }
        if (llt.info() != Eigen::Success) throw FactorizationError("covariance not PSD within jitter budget");
        g.jitter = j;
    }
    g.factor = llt.matrixL();
    return g;
}

GaussianGrid make_gaussian_grid(const ModelParams& p, const std::vector<double>& times,
                                const std::optional<CovarianceConstants>& constants) {
    const auto m = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXd k(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            k(i, j) = gaussian_covariance(p, times[static_cast<std::size_t>(i)] - times[static_cast<std::size_t>(j)],
                                          constants);
    return make_gaussian_grid(times, k);
}

std::vector<double> sample_gaussian_path(const GaussianGrid& g, std::uint64_t master_seed,
                                         std::uint64_t stream) {
    Rng rng(master_seed, stream, StreamTag::gaussian);
    Eigen::VectorXd z(g.factor.rows());
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
    const Eigen::VectorXd x = g.factor.triangularView<Eigen::Lower>() * z;
    return {x.data(), x.data() + x.size()};
}

LinearPath stable_path(const std::vector<LimitPoint>& pts) {
    // (time, value jump, slope change)
    std::vector<std::tuple<double, double, double>> ev;
    double v0 = 0.0, s0 = 0.0;
    for (const auto& q : pts) {
        const double d = q.death();
        if (q.b > 1.0 || d < 0.0) continue;
        if (q.b <= 0.0) {
            v0 += q.j * (0.0 - q.b);
            s0 += q.j;
        } else {
            ev.emplace_back(q.b, 0.0, q.j);
        }
        if (d > 0.0 && d < 1.0) ev.emplace_back(d, -q.j * (d - q.b), -q.j);
    }
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
    LinearPath p;
    p.values[0] = v0;
    p.slopes[0] = s0;
    double t = 0.0, v = v0, s = s0;
    for (std::size_t k = 0; k < ev.size();) {
        const double tau = std::get<0>(ev[k]);
        v += s * (tau - t);
        for (; k < ev.size() && std::get<0>(ev[k]) == tau; ++k) {
            v += std::get<1>(ev[k]);
            s += std::get<2>(ev[k]);
        }
        t = tau;
        p.times.push_back(tau);
        p.values.push_back(v);
        p.slopes.push_back(s);
    }
    return p;
}

StablePathSample sample_stable_path(const ModelParams& p, double epsilon, const SamplerConfig& c,
                                    std::uint64_t stream) {
    StablePathSample s;
    s.epsilon = epsilon;
    s.points = sample_limit_points(p, epsilon, c, stream);
    s.raw = stable_path(s.points);
    s.centered = normalize_path(s.raw, stable_mean(p, epsilon), 1.0);
    return s;
}

RefinementReport epsilon_refinement_study(const ModelParams& p, const std::vector<double>& eps,
                                          int reps, const SamplerConfig& c, std::uint64_t first_stream) {
    if (!(p.gamma > 0.5)) throw std::domain_error("refinement study needs gamma > 1/2");
    for (std::size_t k = 0; k < eps.size(); ++k) {
        if (!(eps[k] > 0.0 && eps[k] <= 1.0)) throw std::domain_error("epsilon must lie in (0,1]");
        if (k > 0 && !(eps[k] < eps[k - 1])) throw std::invalid_argument("eps must be strictly decreasing");
    }
    RefinementReport rep;
    rep.eps = eps;
    const std::size_t L = eps.size();
    rep.distances.assign(L > 0 ? L - 1 : 0, std::vector<double>(static_cast<std::size_t>(reps)));
    for (int r = 0; r < reps; ++r) {
        const auto stream = first_stream + static_cast<std::uint64_t>(r);
        const auto all = sample_limit_points(p, eps.back(), c, stream);
        std::vector<LinearPath> lv(L);
        for (std::size_t k = 0; k < L; ++k) {
            const double thr = jump_threshold(p, eps[k]);
            std::vector<LimitPoint> sub;
            for (const auto& q : all)
                if (q.j >= thr) sub.push_back(q);
            lv[k] = normalize_path(stable_path(sub), stable_mean(p, eps[k]), 1.0);
        }
        for (std::size_t k = 0; k + 1 < L; ++k) {
            rep.distances[k][static_cast<std::size_t>(r)] = sup_norm_distance(lv[k + 1], lv[k]);
            // the finer level minus the coarser one is the centred band on its own
            const double lo = jump_threshold(p, eps[k + 1]), hi = jump_threshold(p, eps[k]);
            std::vector<LimitPoint> band;
            for (const auto& q : all)
                if (q.j >= lo && q.j < hi) band.push_back(q);
            const auto bp = normalize_path(stable_path(band), stable_mean(p, eps[k + 1]) - stable_mean(p, eps[k]), 1.0);
            for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const double e = std::abs((lv[k + 1](t) - lv[k](t)) - bp(t));
                rep.max_identity_error = std::max(rep.max_identity_error, e);
            }
        }
    }
    for (const auto& d : rep.distances) {
        rep.median.push_back(median(d));
        rep.q10.push_back(quantile(d, 0.1));
        rep.q90.push_back(quantile(d, 0.9));
    }
    return rep;
}

}  // namespace drchm
