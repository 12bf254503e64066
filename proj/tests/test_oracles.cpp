#include <cmath>

#include "doctest.h"
#include "drchm/model.hpp"
#include "drchm/oracles.hpp"
#include "drchm/quadrature.hpp"
#include "drchm/rng.hpp"

using namespace drchm;

namespace {
const ModelParams G{0.25, 0.2, 0.2, 100.0};
const ModelParams S{0.25, 0.7, 0.2, 100.0};
}  // namespace

TEST_CASE("quadrature wrappers") {
    QuadratureConfig q;
    CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0, q) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, {0.3}, q) ==
          doctest::Approx(0.29).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x); }, 1.0, INFINITY, q) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    CHECK(integrate_singular([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, q) ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(integrate_to_inf([](double x) { return 1.0 / (x * x); }, 2.0, q) == doctest::Approx(0.5).epsilon(1e-10));
    // narrow subintervals must converge without exhausting the depth budget
    CHECK(integrate([](double) { return 3.0; }, 1e-12, 2e-12, q) == doctest::Approx(3e-12).epsilon(1e-12));
}

TEST_CASE("mean edge count") {
    CHECK(mean_edge_count(G) == doctest::Approx(78.125));
    CHECK(mean_edge_count(ModelParams{1e-12, 0.2, 0.2, 100}) == doctest::Approx(0.0));
    CHECK(mean_edge_count(ModelParams{0.25, 0.2, 0.2, 200}) == doctest::Approx(2.0 * mean_edge_count(G)));
}

TEST_CASE("mean edge count by Monte Carlo over the vertex/time integral") {
    // E S_n(t) = n int du |N(u)| * int db dl e^-l |N_t(b,l)|; drawing age and residual
    // from Exp(1) makes the importance weight 1, leaving |N_t| = age
    Rng rng(21, 0);
    double acc = 0.0;
    const int m = 200000;
    for (int k = 0; k < m; ++k) {
        const double u = rng.uniform_oc();
        const double age = rng.exponential();
        const double l = age + rng.exponential();
        acc += spatial_nbhd_size(G, u) * temporal_nbhd_size(Vertex{0, u, 0.5 - age, l}, 0.5);
    }
    CHECK(acc / m * G.n == doctest::Approx(78.125).epsilon(0.01));
}

TEST_CASE("capped radius integral") {
    QuadratureConfig q;
    Rng rng(3, 0);
    for (int k = 0; k < 30; ++k) {
        const double a = rng.uniform(0.01, 3.0), c = rng.uniform(0.05, 1.0), g = rng.uniform(0.05, 0.95);
        const double ul = k % 3 == 0 ? 0.0 : rng.uniform(0.0, 0.5);
        const double us = std::pow(c / a, 1.0 / g);
        // split at the kink where the cap switches off
        double split = integrate_singular([&](double u) { return std::min(a, c * std::pow(u, -g)); }, ul, 1.0, q);
        if (us > ul && us < 1.0)
            split = integrate([&](double u) { return std::min(a, c * std::pow(u, -g)); }, us, 1.0, q) +
                    integrate_singular([&](double u) { return std::min(a, c * std::pow(u, -g)); }, ul, us, q);
        CHECK(capped_radius_integral(a, c, g, ul) == doctest::Approx(split).epsilon(1e-8));
    }
}

TEST_CASE("window pair integral with m = 1 is n times the neighbourhood size") {
    QuadratureConfig q;
    for (double gp : {0.2, 0.6, 0.9})
        for (double ul : {0.0, 0.05}) {
            const ModelParams p{0.5, 0.2, gp, 30.0};
            const double exact = p.n * 2 * p.beta / (1 - p.gamma) / (1 - gp) * (1 - std::pow(ul, 1 - p.gamma));
            CHECK(window_pair_integral(p, 1, ul, q) == doctest::Approx(exact).epsilon(1e-9));
        }
}

TEST_CASE("variance oracle") {
    QuadratureConfig q;
    const ModelParams p1{0.25, 0.2, 0.2, 1.0};
    QuadratureConfig fine = q;
    fine.rel_tolerance = 1e-10;
    const double v = oracle_variance(p1, 0.5, q);
    CHECK(v > 0.0);
    CHECK(oracle_variance(p1, 0.5, fine) == doctest::Approx(v).epsilon(1e-6));
    // stationarity in time
    CHECK(oracle_variance(p1, 0.9, q) == doctest::Approx(v).epsilon(1e-8));
    const double v50 = oracle_variance(ModelParams{0.25, 0.2, 0.2, 50}, 0.5, q) / 50;
    const double v400 = oracle_variance(ModelParams{0.25, 0.2, 0.2, 400}, 0.5, q) / 400;
    CHECK(std::abs(v50 - v400) / v400 < 0.02);
}

TEST_CASE("variance terms scale with beta") {
    QuadratureConfig q;
    const ModelParams a{0.25, 0.2, 0.2, 1e5}, b{0.5, 0.2, 0.2, 1e5};
    const auto ta = oracle_variance_terms(a, 0.5, q), tb = oracle_variance_terms(b, 0.5, q);
    CHECK(tb.single / ta.single == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(tb.squared / ta.squared == doctest::Approx(4.0).epsilon(1e-8));
    // the pair term is homogeneous only up to window edge effects of relative size R/n
    CHECK(tb.pair / ta.pair == doctest::Approx(4.0).epsilon(1e-4));
}

TEST_CASE("covariance oracle consistency") {
    QuadratureConfig q;
    const auto c0 = oracle_covariance(G, 0.5, 0.5, q);
    CHECK(c0.window_value == doctest::Approx(oracle_variance(G, 0.5, q) / G.n).epsilon(1e-7));
    // Richardson extrapolation in 1/n of the finite-window variance
    const double v1 = oracle_variance(ModelParams{0.25, 0.2, 0.2, 1000}, 0.5, q) / 1000;
    const double v2 = oracle_variance(ModelParams{0.25, 0.2, 0.2, 2000}, 0.5, q) / 2000;
    CHECK(2 * v2 - v1 == doctest::Approx(c0.value).epsilon(1e-6));
    CHECK(c0.value == doctest::Approx(2.408854166666).epsilon(1e-8));
}

TEST_CASE("printed closed form") {
    CHECK(printed_covariance(G, 0.0) == doctest::Approx(2.734375));
    CHECK(printed_covariance(G, 1.0) == doctest::Approx(1.2456).epsilon(1e-4));
    CHECK(printed_covariance(G, 50.0) < 1e-18);
    for (double h = 0; h < 10; h += 0.5) CHECK(printed_covariance(G, h) > 0.0);
    const auto c = covariance_constants(G);
    CHECK(c.c1 == doctest::Approx(0.78125));
    CHECK(c.c2 == doctest::Approx(0.651041666).epsilon(1e-8));
    CHECK(c.c3 == doctest::Approx(0.651041666).epsilon(1e-8));
    CHECK_THROWS_AS(covariance_constants(S), RegimeError);
}

TEST_CASE("covariance decays as an affine function times e^-h") {
    QuadratureConfig q;
    std::vector<double> h, y;
    for (int k = 1; k <= 9; ++k) {
        h.push_back(k / 10.0);
        y.push_back(oracle_covariance(G, 0.05, 0.05 + k / 10.0, q).value * std::exp(k / 10.0));
    }
    // least squares line
    double mh = 0, my = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        mh += h[i] / h.size();
        my += y[i] / h.size();
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        sxy += (h[i] - mh) * (y[i] - my);
        sxx += (h[i] - mh) * (h[i] - mh);
    }
    const double slope = sxy / sxx, icpt = my - slope * mh;
    for (std::size_t i = 0; i < h.size(); ++i) CHECK(std::abs(icpt + slope * h[i] - y[i]) / y[i] < 1e-3);
    // the slope is the pair-term constant
    CHECK(slope == doctest::Approx(covariance_constants(G).c2).epsilon(1e-6));
}

TEST_CASE("variance adjudication") {
    const auto v = adjudicate_variance(G);
    CHECK(v.oracle == doctest::Approx(2.408854166666).epsilon(1e-8));
    CHECK(v.printed_covariance_lag0 == doctest::Approx(2.734375));
    CHECK_FALSE(v.matches_covariance_form);
    CHECK_FALSE(v.matches_variance_form);
    CHECK_FALSE(v.verdict.empty());
    const auto a = adjudicated_constants(G);
    CHECK(a.c1 == doctest::Approx(0.78125));
    CHECK(a.c2 == doctest::Approx(covariance_constants(G).c2).epsilon(1e-7));
    CHECK(a.c3 == doctest::Approx(covariance_constants(G).c3 / 2).epsilon(1e-7));
}

TEST_CASE("stable mean") {
    CHECK(stable_mean(S, 0.01) == doctest::Approx(8.294).epsilon(1e-4));
    CHECK(stable_mean(S, 1.0) == doctest::Approx(0.625 / 0.3));
    CHECK(stable_mean(S, 0.005) / stable_mean(S, 0.01) == doctest::Approx(std::pow(2.0, 0.3)));
    QuadratureConfig q;
    for (double e : {1.0, 0.1, 0.01, 0.001})
        CHECK(stable_mean_quadrature(S, e, q) == doctest::Approx(stable_mean(S, e)).epsilon(1e-7));
    CHECK(std::abs(stable_mean_alt(S, 0.01) - stable_mean(S, 0.01)) > 1.0);
}

TEST_CASE("stable band variance") {
    CHECK(stable_band_variance(S, 0.1, 0.01) == doctest::Approx(0.5015).epsilon(2e-4));
    CHECK_THROWS(stable_band_variance(S, 0.1, 0.1));
    CHECK(stable_band_variance(S, 0.1, 0.1 * (1 - 1e-12)) < 1e-11);
    double sum = 0.0, hi = 1.0;
    for (int k = 0; k < 200; ++k) {
        sum += stable_band_variance(S, hi, hi / 2);
        hi /= 2;
    }
    const double total = 2 * std::pow(S.c_tilde(), 1 / S.gamma) / (2 * S.gamma - 1);
    CHECK(sum == doctest::Approx(total).epsilon(1e-10));
    // independent route: int over the band of j^2 nu(dj) times int (t-b)^2 e^-(t-b) db;
    // the band bounds are jump sizes
    QuadratureConfig q;
    const double lo = 0.01, up = 0.1;
    const double dens = std::pow(S.c_tilde(), 1 / S.gamma) / S.gamma;
    const double jm = integrate([&](double j) { return j * j * dens * std::pow(j, -1 / S.gamma - 1); }, lo, up, q);
    CHECK(stable_band_variance(S, 0.1, 0.01) == doctest::Approx(jm * 2.0).epsilon(1e-8));
}
