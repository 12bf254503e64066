#include "drchm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace drchm {

namespace bq = boost::math::quadrature;

namespace {

using GK = bq::gauss_kronrod<double, 31>;

// Boost 1.74 compares the unscaled local error with a scaled tolerance, so
// narrow subintervals never converge; only the fixed rule is used here.
double gk_adaptive(const Integrand& f, double a, double b, int levels, double rel, double abs_tol) {
    double err = 0.0;
    const double est = GK::integrate(f, a, b, 0, rel, &err);
    err *= 0.5 * std::abs(b - a);
    if (levels > 0 && err > abs_tol && err > rel * std::abs(est)) {
        const double mid = 0.5 * (a + b);
        if (mid > a && mid < b)
            return gk_adaptive(f, a, mid, levels - 1, rel, 0.5 * abs_tol) +
                   gk_adaptive(f, mid, b, levels - 1, rel, 0.5 * abs_tol);
    }
    return est;
}

double gk_finite(const Integrand& f, double a, double b, const QuadratureConfig& q) {
    double err = 0.0;
    const double top = GK::integrate(f, a, b, 0, q.rel_tolerance, &err);
    return gk_adaptive(f, a, b, q.max_subdivisions, q.rel_tolerance, q.rel_tolerance * std::abs(top));
}

}  // namespace

double integrate(const Integrand& f, double a, double b, const QuadratureConfig& q) {
    if (a == b) return 0.0;
    if (a > b) return -integrate(f, b, a, q);
    if (std::isinf(a) && std::isinf(b))
        return integrate(f, a, 0.0, q) + integrate(f, 0.0, b, q);
    if (std::isinf(b)) {
        // x = a + t / (1 - t)
        Integrand g = [&](double t) {
            const double s = 1.0 - t;
            return s > 0.0 ? f(a + t / s) / (s * s) : 0.0;
        };
        return gk_finite(g, 0.0, 1.0, q);
    }
    if (std::isinf(a)) {
        Integrand g = [&](double t) {
            const double s = 1.0 - t;
            return s > 0.0 ? f(b - t / s) / (s * s) : 0.0;
        };
        return gk_finite(g, 0.0, 1.0, q);
    }
    return gk_finite(f, a, b, q);
}

double integrate(const Integrand& f, double a, double b, std::vector<double> breaks,
                 const QuadratureConfig& q) {
    std::sort(breaks.begin(), breaks.end());
    double lo = a, s = 0.0;
    for (double c : breaks) {
        if (!(c > lo) || !(c < b)) continue;
        s += integrate(f, lo, c, q);
        lo = c;
    }
    return s + integrate(f, lo, b, q);
}

namespace {

// the double-exponential rules extend their tables lazily, so nested calls
// each get their own instance
template <class Rule>
struct NestPool {
    std::vector<std::unique_ptr<Rule>> rules;
    std::size_t depth = 0;
    template <class... Args>
    Rule& acquire(Args... args) {
        if (rules.size() <= depth) rules.push_back(std::make_unique<Rule>(args...));
        return *rules[depth++];
    }
    void release() { --depth; }
};

}  // namespace

double integrate_singular(const Integrand& f, double a, double b, const QuadratureConfig& q) {
    if (a == b) return 0.0;
    thread_local NestPool<bq::tanh_sinh<double>> pool;
    auto& ts = pool.acquire(static_cast<std::size_t>(15));
    struct Guard {
        decltype(pool)& p;
        ~Guard() { p.release(); }
    } g{pool};
    return ts.integrate(f, a, b, q.rel_tolerance);
}

double integrate_to_inf(const Integrand& f, double a, const QuadratureConfig& q) {
    thread_local NestPool<bq::exp_sinh<double>> pool;
    auto& es = pool.acquire(static_cast<std::size_t>(9));
    struct Guard {
        decltype(pool)& p;
        ~Guard() { p.release(); }
    } g{pool};
    // far out an integrable tail can only be 0; inf * 0 there is rounding, not a singularity
    return es.integrate(
        [&](double x) {
            const double v = f(a + x);
            return (!std::isfinite(v) && a + x > 1e30) ? 0.0 : v;
        },
        0.0,
                        std::numeric_limits<double>::infinity(), q.rel_tolerance);
}

}  // namespace drchm
