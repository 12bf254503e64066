#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "drchm/rng.hpp"
#include "drchm/stats.hpp"

using namespace drchm;

namespace {

std::vector<double> normals(std::uint64_t seed, std::size_t n) {
    Rng rng(seed, 0);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();
    return x;
}

}  // namespace

TEST_CASE("moment summary against direct formulas") {
    const std::vector<double> x{1.0, 2.0, 4.0, 8.0, 3.0, 5.0};
    const auto m = summarize(x);
    const double mean = 23.0 / 6.0;
    double v = 0.0;
    for (double a : x) v += (a - mean) * (a - mean);
    CHECK(m.count == 6);
    CHECK(m.mean == doctest::Approx(mean));
    CHECK(m.variance == doctest::Approx(v / 5.0));
    CHECK(std::isfinite(m.mean_se));
}

TEST_CASE("jackknife standard error of the mean is the classical one") {
    const auto x = normals(3, 500);
    const auto m = summarize(x);
    CHECK(m.mean_se == doctest::Approx(std::sqrt(m.variance / 500.0)).epsilon(1e-9));
}

TEST_CASE("tiny samples give infinite standard errors") {
    const auto m = summarize({1.5});
    CHECK(m.mean == 1.5);
    CHECK(std::isinf(m.mean_se));
    CHECK(std::isinf(m.variance_se));
    CHECK(std::isinf(summarize({1.0, 2.0}).variance_se));
}

TEST_CASE("cross covariance") {
    const auto a = normals(1, 10000), b = normals(2, 10000);
    CHECK(cross_covariance(a, a).cov == doctest::Approx(summarize(a).variance));
    const auto c = cross_covariance(a, b);
    CHECK(std::abs(c.cov) < 4.0 * c.se);
    std::vector<double> ab(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) ab[i] = a[i] + b[i];
    const auto d = cross_covariance(a, ab);
    CHECK(std::abs(d.cov - summarize(a).variance) < 4.0 * d.se);
    CHECK_THROWS(cross_covariance(a, std::vector<double>(3, 0.0)));
}

TEST_CASE("normality omnibus self-test") {
    const double crit = chi2_2_quantile(0.999);
    CHECK(crit == doctest::Approx(13.8155).epsilon(1e-4));
    int accept = 0, reject = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        if (normality_statistic(normals(100 + s, 10000)).omnibus < crit) ++accept;
        Rng rng(500 + s, 0);
        std::vector<double> e(10000);
        for (auto& v : e) v = rng.exponential();
        if (normality_statistic(e).omnibus > crit) ++reject;
    }
    CHECK(accept >= 99);
    CHECK(reject >= 99);
    const auto r = normality_statistic(normals(9, 2000));
    CHECK(r.p_value == doctest::Approx(std::exp(-r.omnibus / 2.0)));
    CHECK_THROWS(normality_statistic(std::vector<double>(1000, 2.0)));
    CHECK_THROWS(normality_statistic(normals(1, 50)));
}

TEST_CASE("Hill estimator") {
    Rng rng(12, 0);
    std::vector<double> x(100000);
    for (auto& v : x) v = std::pow(rng.uniform_oc(), -1.0 / 2.0);
    const auto h = hill_tail_index(x, 500);
    CHECK(std::abs(h.alpha_hat - 2.0) < 4.0 * h.se);
    CHECK(h.k == 500);
    CHECK(hill_tail_index(x).k == 317);
    const auto d = hill_tail_index(std::vector<double>(1000, 3.0));
    CHECK(d.degenerate);
    CHECK(std::isinf(d.alpha_hat));
    CHECK_THROWS(hill_tail_index(x, 5));
    CHECK_THROWS(hill_tail_index(std::vector<double>(100, 1.0), 60));
}

TEST_CASE("KS distance") {
    const auto a = normals(5, 1000);
    CHECK(ks_distance(a, a) == 0.0);
    auto b = a;
    b[10] += 100.0;
    CHECK(ks_distance(a, b) <= 1.0 / 1000.0 + 1e-15);
    Rng rng(7, 0);
    std::vector<double> u(20000), w(20000);
    for (auto& v : u) v = rng.uniform();
    for (auto& v : w) v = 0.5 + rng.uniform();
    CHECK(ks_distance(u, w) == doctest::Approx(0.5).epsilon(0.03));
    CHECK_THROWS(ks_distance({}, a));
}

TEST_CASE("quantiles") {
    std::vector<double> x{5, 1, 4, 2, 3};
    CHECK(median(x) == 3.0);
    CHECK(quantile(x, 0.0) == 1.0);
    CHECK(quantile(x, 1.0) == 5.0);
    CHECK(quantile(x, 0.25) == 2.0);
}
