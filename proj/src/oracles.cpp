#include "drchm/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace drchm {

namespace {

void require_gaussian(const ModelParams& p) {
    if (!(p.gamma < 0.5) || !(p.gamma_prime < 0.5))
        throw RegimeError("covariance oracle needs gamma < 1/2 and gamma' < 1/2");
}

void require_stable(const ModelParams& p) {
    if (!(p.gamma > 0.5)) throw std::domain_error("stable quantities need gamma > 1/2");
}

QuadratureConfig tighter(const QuadratureConfig& q, double f = 1e-2) {
    QuadratureConfig r = q;
    r.rel_tolerance = std::max(q.rel_tolerance * f, 1e-14);
    return r;
}

// int_0^1 (c~ u^-g)^k du
double spatial_power(const ModelParams& p, double k, double u_lo, const QuadratureConfig& q) {
    const double ct = p.c_tilde();
    return integrate_singular([&](double u) { return std::pow(ct * std::pow(u, -p.gamma), k); },
                              u_lo, 1.0, q);
}

// int_0^1 dw (int_0^1 2 beta u^-g w^-g' du)^2, the per-length pair constant
double spatial_pair_limit(const ModelParams& p, const QuadratureConfig& q) {
    const auto qi = tighter(q);
    return integrate_singular(
        [&](double w) {
            const double inner = integrate_singular(
                [&](double u) {
                    return 2.0 * p.beta * std::pow(u, -p.gamma) * std::pow(w, -p.gamma_prime);
                },
                0.0, 1.0, qi);
            return inner * inner;
        },
        0.0, 1.0, q);
}

double surv(double x) { return x <= 0.0 ? 1.0 : std::exp(-x); }

// int_{-inf}^{r} S(t - b) db, numerically
double alive_through(double r, double t, const QuadratureConfig& q) {
    return integrate_to_inf([&](double a) { return surv(t - (r - a)); }, 0.0, q);
}

}  // namespace

CovarianceConstants covariance_constants(const ModelParams& p) {
    require_gaussian(p);
    const double b2 = 2.0 * p.beta;
    CovarianceConstants c;
    c.c1 = b2 / ((1 - p.gamma) * (1 - p.gamma_prime));
    c.c2 = b2 * b2 / ((1 - 2 * p.gamma) * (1 - p.gamma_prime) * (1 - p.gamma_prime));
    c.c3 = b2 * b2 / ((1 - p.gamma) * (1 - p.gamma) * (1 - 2 * p.gamma_prime));
    return c;
}

CovarianceConstants adjudicated_constants(const ModelParams& p, const QuadratureConfig& q) {
    require_gaussian(p);
    // K(h) e^h is affine in h; read the constants off the oracle at two lags
    const auto k0 = oracle_covariance(p, 0.0, 0.0, q);
    const auto k1 = oracle_covariance(p, 0.0, 1.0, q);
    CovarianceConstants c;
    c.c1 = spatial_power(p, 1.0, 0.0, q);
    c.c2 = k1.value * std::exp(1.0) - k0.value;
    c.c3 = k0.value - c.c1 - 2.0 * c.c2;
    return c;
}

double mean_edge_count(const ModelParams& p) {
    return 2.0 * p.beta / ((1 - p.gamma) * (1 - p.gamma_prime)) * p.n;
}

double capped_radius_integral(double a, double c, double gamma, double u_lo) {
    if (!(a > 0.0)) return 0.0;
    const double us = std::pow(c / a, 1.0 / gamma);
    const double m = std::clamp(us, u_lo, 1.0);
    return a * (m - u_lo) + c * (1.0 - std::pow(m, 1.0 - gamma)) / (1.0 - gamma);
}

double window_pair_integral(const ModelParams& p, int m, double u_lo, const QuadratureConfig& q) {
    const double n = p.n, g = p.gamma;
    const double e = 1.0 / g - 1.0;
    const auto qi = tighter(q);
    const double inf = std::numeric_limits<double>::infinity();
    auto outer = [&](double w) {
        const double c = p.beta * std::pow(w, -p.gamma_prime);
        const double cap = u_lo > 0.0 ? c * std::pow(u_lo, -g) : inf;
        auto H = [&](double a) { return capped_radius_integral(a, c, g, u_lo); };
        auto inside = [&](double z) { return std::pow(H(z) + H(n - z), m); };
        // Outside the window, at distance d = c + y. The difference H(d+n) - H(d)
        // is written as the integral of H' over [y, y+n] in offsets from c, which
        // stays accurate when c >> n.
        const double cap_off = u_lo > 0.0 ? c * (std::pow(u_lo, -g) - 1.0) : inf;
        auto slope_part = [&](double y1, double len) {  // int over [c+y1, c+y1+len] of (c/a)^(1/g)
            const double lead = std::pow(1.0 + y1 / c, -e);
            return c / e * lead * -std::expm1(-e * std::log1p(len / (c + y1)));
        };
        // lengths are formed without y + n, which rounds away n once y >> n
        auto outside_y = [&](double y) {
            double diff;
            if (y >= 0.0) {
                const double len = std::min(n, cap_off - y);
                diff = len > 0.0 ? slope_part(y, len) - u_lo * len : 0.0;
            } else {
                const double flat = std::min(-y, c) - std::max(-y - n, 0.0);
                const double len = std::min(y + n, cap_off);
                diff = (1.0 - u_lo) * std::max(flat, 0.0);
                if (len > 0.0) diff += slope_part(0.0, len) - u_lo * len;
            }
            return std::pow(std::max(diff, 0.0), m);
        };
        double s = integrate(inside, 0.0, 0.5 * n, {c, cap, n - c, n - cap}, qi);
        // d in [0, c - n]: the whole interval [d, d+n] lies in the flat part
        double o = std::max(c - n, 0.0) * std::pow(n * (1.0 - u_lo), m);
        const double y_lo = -std::min(n, c);
        // past y ~ c the tail decays on the scale c
        const double y_top = std::isinf(cap_off) ? std::max(n, c) : cap_off;
        o += integrate(outside_y, y_lo, y_top, {0.0, cap_off - n, -n, n, c}, qi);
        if (std::isinf(cap_off))
            o += c * integrate_to_inf([&](double x) { return outside_y(c * x); }, y_top / c, qi);
        return 2.0 * (s + o);
    };
    // w = s^k flattens the w^-gamma' blow-up at 0; kinks where c or cap crosses n/2, n
    const double gp = p.gamma_prime;
    const double k = 1.0 / (1.0 - (m * gp < 1.0 ? m * gp : gp));
    std::vector<double> br;
    for (double lvl : {0.5 * n, n}) {
        for (double scale : {1.0, u_lo > 0.0 ? std::pow(u_lo, -g) : 0.0}) {
            if (!(scale > 0.0)) continue;
            const double w = std::pow(p.beta * scale / lvl, 1.0 / gp);
            if (w > 0.0 && w < 1.0) br.push_back(std::pow(w, 1.0 / k));
        }
    }
    return integrate(
        [&](double s) {
            if (!(s > 0.0)) return 0.0;
            return outer(std::pow(s, k)) * k * std::pow(s, k - 1.0);
        },
        0.0, 1.0, br, q);
}

VarianceTerms oracle_variance_terms(const ModelParams& p, double t, const QuadratureConfig& q) {
    require_gaussian(p);
    const auto qi = tighter(q);
    VarianceTerms v;
    const double t1 = integrate_to_inf([](double a) { return a * surv(a); }, 0.0, q);
    const double t2 = integrate_to_inf([](double a) { return a * a * surv(a); }, 0.0, q);
    const double tp = integrate_to_inf(
        [&](double s) {
            const double tau = alive_through(t - s, t, qi);
            return tau * tau;
        },
        0.0, q);
    v.single = p.n * spatial_power(p, 1.0, 0.0, q) * t1;
    v.squared = p.n * spatial_power(p, 2.0, 0.0, q) * t2;
    v.pair = window_pair_integral(p, 2, 0.0, q) * tp;
    return v;
}

double oracle_variance(const ModelParams& p, double t, const QuadratureConfig& q) {
    return oracle_variance_terms(p, t, q).total();
}

CovarianceOracle oracle_covariance(const ModelParams& p, double t1, double t2,
                                   const QuadratureConfig& q) {
    require_gaussian(p);
    if (!(t1 <= t2)) throw std::invalid_argument("need t1 <= t2");
    const auto qi = tighter(q);
    const double h = t2 - t1;
    const double s1 = spatial_power(p, 1.0, 0.0, q);
    const double s2 = spatial_power(p, 2.0, 0.0, q);
    const double sp = spatial_pair_limit(p, q);

    // vertex born at t1 - a, alive through t2
    const double ta1 = integrate_to_inf([&](double a) { return a * surv(a + h); }, 0.0, q);
    const double ta2 = integrate_to_inf([&](double a) { return a * a * surv(a + h); }, 0.0, q);
    const double tac = integrate_to_inf([&](double a) { return a * h * surv(a + h); }, 0.0, q);
    // interactions at r = t1 - s shared by two vertices
    const double taa = integrate_to_inf(
        [&](double s) {
            const double ta = alive_through(t1 - s, t2, qi);
            return ta * ta;
        },
        0.0, q);
    const double tab = integrate_to_inf(
        [&](double s) {
            const double r = t1 - s;
            const double ta = alive_through(r, t2, qi);
            const double tb = integrate_to_inf(
                [&](double a) { return surv(t1 - (r - a)) - surv(t2 - (r - a)); }, 0.0, qi);
            return ta * tb;
        },
        0.0, q);

    CovarianceOracle o;
    o.var_a = s1 * ta1 + s2 * ta2 + sp * taa;
    o.cov_ab = sp * tab;
    o.cov_ac = s2 * tac;
    o.value = o.var_a + o.cov_ab + o.cov_ac;
    if (p.n > 0.0) {
        const double spn = window_pair_integral(p, 2, 0.0, q) / p.n;
        o.window_value = o.value + (spn - sp) * (taa + tab);
    }
    o.printed = printed_covariance(p, h);
    return o;
}

double printed_covariance(const ModelParams& p, double lag) {
    const auto c = covariance_constants(p);
    const double h = std::abs(lag);
    return (c.c1 + c.c3 + c.c2 * (2.0 + h)) * std::exp(-h);
}

double printed_variance_alt(const ModelParams& p) {
    const auto c = covariance_constants(p);
    return c.c1 + c.c2 + 0.5 * c.c3;
}

VarianceAdjudication adjudicate_variance(const ModelParams& p, const QuadratureConfig& q,
                                         double match_rtol) {
    VarianceAdjudication a;
    a.oracle = oracle_covariance(p, 0.5, 0.5, q).value;
    a.printed_covariance_lag0 = printed_covariance(p, 0.0);
    a.printed_variance_alt = printed_variance_alt(p);
    a.matches_covariance_form =
        std::abs(a.printed_covariance_lag0 - a.oracle) <= match_rtol * std::abs(a.oracle);
    a.matches_variance_form =
        std::abs(a.printed_variance_alt - a.oracle) <= match_rtol * std::abs(a.oracle);
    if (a.matches_covariance_form && a.matches_variance_form)
        a.verdict = "both";
    else if (a.matches_covariance_form)
        a.verdict = "covariance form (c1 + 2 c2 + c3)";
    else if (a.matches_variance_form)
        a.verdict = "variance form (c1 + c2 + c3/2)";
    else
        a.verdict = "neither; quadrature gives c1 + 2 c2 + c3/2";
    return a;
}

double stable_mean(const ModelParams& p, double epsilon) {
    require_stable(p);
    if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
    return p.c_tilde() * std::pow(epsilon, -(1.0 - p.gamma)) / (1.0 - p.gamma);
}

double stable_mean_alt(const ModelParams& p, double epsilon) {
    require_stable(p);
    return std::pow(p.c_tilde(), 1.0 / p.gamma) * std::pow(epsilon, -(1.0 / p.gamma - 1.0)) /
           (1.0 - p.gamma);
}

double stable_mean_quadrature(const ModelParams& p, double epsilon, const QuadratureConfig& q) {
    require_stable(p);
    const double a = p.c_tilde() * std::pow(epsilon, p.gamma);
    const double k = std::pow(p.c_tilde(), 1.0 / p.gamma) / p.gamma;
    // j nu'(j) = k j^{-1/g}; substitute j = a / v^g to tame the tail. Logs keep the
    // v -> 0 end from forming 0 * inf
    const double jm = integrate_singular(
        [&](double v) {
            if (v <= 0.0) return 0.0;
            const double lj = std::log(a) - p.gamma * std::log(v);
            const double ldj = std::log(a * p.gamma) - (p.gamma + 1.0) * std::log(v);
            return std::exp(std::log(k) - lj / p.gamma + ldj);
        },
        0.0, 1.0, q);
    const double age = integrate_to_inf([](double x) { return x * surv(x); }, 0.0, q);
    return jm * age;
}

double stable_band_variance(const ModelParams& p, double eps_hi, double eps_lo) {
    require_stable(p);
    if (!(eps_lo > 0.0) || !(eps_hi > eps_lo) || eps_hi > 1.0)
        throw std::domain_error("need 0 < eps_lo < eps_hi <= 1");
    const double e = 2.0 - 1.0 / p.gamma;
    return 2.0 * std::pow(p.c_tilde(), 1.0 / p.gamma) / (2.0 * p.gamma - 1.0) *
           (std::pow(eps_hi, e) - std::pow(eps_lo, e));
}

std::string to_jsonl(const LemmaCheck& c) {
    nlohmann::ordered_json j;
    j["lemma_id"] = c.lemma_id;
    j["kind"] = c.kind;
    j["draws"] = c.draws;
    j["max_rel_err"] = c.max_rel_err;
    j["max_ratio"] = c.max_ratio;
    j["bound_violations"] = c.bound_violations;
    return j.dump();
}

}  // namespace drchm
