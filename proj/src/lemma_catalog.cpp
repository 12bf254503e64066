#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "drchm/oracles.hpp"
#include "drchm/rng.hpp"

namespace drchm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double surv(double x) { return x <= 0.0 ? 1.0 : std::exp(-x); }

double ind(bool c) { return c ? 1.0 : 0.0; }

QuadratureConfig tighter(const QuadratureConfig& q) {
    QuadratureConfig r = q;
    r.rel_tolerance = std::max(q.rel_tolerance * 1e-2, 1e-13);
    return r;
}

// int_0^inf f, split at kinks; the tail past the last kink uses exp_sinh
double half_line(const Integrand& f, std::vector<double> breaks, const QuadratureConfig& q) {
    double top = 1.0;
    for (double b : breaks)
        if (std::isfinite(b)) top = std::max(top, b);
    return integrate(f, 0.0, top, breaks, q) + integrate_to_inf(f, top, q);
}

// int_0^hi f with an endpoint singularity at 0 and interior kinks
double from_zero(const Integrand& f, double hi, std::vector<double> breaks, const QuadratureConfig& q) {
    std::sort(breaks.begin(), breaks.end());
    double first = hi;
    for (double b : breaks)
        if (b > 0.0 && b < hi) {
            first = b;
            break;
        }
    double s = integrate_singular(f, 0.0, first, q);
    if (first < hi) s += integrate(f, first, hi, breaks, q);
    return s;
}

double overlap(double d, double r1, double r2) {
    const double lo = std::max(-r1, d - r2), hi = std::min(r1, d + r2);
    return std::max(hi - lo, 0.0);
}

// int_0^n 2 (n - D) D^k (a + s D) dD over [lo, hi]
double poly_piece(double n, int k, double a, double s, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    auto P = [&](int e) { return (std::pow(hi, e + 1) - std::pow(lo, e + 1)) / (e + 1); };
    // 2 (n - D)(a + s D) D^k = 2 [n a D^k + (n s - a) D^{k+1} - s D^{k+2}]
    return 2.0 * (n * a * P(k) + (n * s - a) * P(k + 1) - s * P(k + 2));
}

// int_0^n 2 (n - D) D^k overlap(D; R1, R2) dD
double window_overlap_moment(double n, int k, double r1, double r2) {
    const double inner = std::min(std::abs(r1 - r2), n);
    const double outer = std::min(r1 + r2, n);
    return poly_piece(n, k, 2.0 * std::min(r1, r2), 0.0, 0.0, inner) +
           poly_piece(n, k, r1 + r2, -1.0, inner, outer);
}

struct Accum {
    LemmaCheck c;
    void equal(double num, double ref) {
        ++c.draws;
        const double e = std::abs(num - ref) / (ref != 0.0 ? std::abs(ref) : 1.0);
        c.max_rel_err = std::max(c.max_rel_err, std::isfinite(e) ? e : kInf);
        if (!(e <= 1e-6)) ++c.bound_violations;
    }
    void bound(double num, double bnd, double slack = 1e-6) {
        ++c.draws;
        c.max_ratio = std::max(c.max_ratio, num / bnd);
        if (!(num <= bnd * (1.0 + slack))) ++c.bound_violations;
    }
    void finite(double num) {
        ++c.draws;
        c.max_ratio = std::max(c.max_ratio, num);
        if (!std::isfinite(num)) ++c.bound_violations;
    }
};

Accum make(const std::string& id, const std::string& kind) {
    Accum a;
    a.c.lemma_id = id;
    a.c.kind = kind;
    return a;
}

ModelParams draw_params(Rng& rng, double g_lo, double g_hi, double gp_lo, double gp_hi) {
    ModelParams p;
    p.beta = rng.uniform(0.1, 1.0);
    p.gamma = rng.uniform(g_lo, g_hi);
    if (p.gamma == 0.5) p.gamma = 0.49;
    p.gamma_prime = rng.uniform(gp_lo, gp_hi);
    p.n = 1.0;
    return p;
}

// int over the plus/minus neighbourhood of an interaction time r at time t,
// over vertices with b + l >= 0
double pm_time_weight(double r, double t, Sign s, const QuadratureConfig& q) {
    if (r > t) return 0.0;
    const double lo0 = std::max(r, 0.0);
    auto f = [&](double a) {  // b = r - a
        const double b = r - a;
        if (s == Sign::plus) return surv(lo0 - b);
        return std::max(surv(lo0 - b) - surv(t - b), 0.0);
    };
    return half_line(f, {r > 0 ? r : 0.0}, q);
}

// |N^pm(p; t)| with p = (b, l)
double pm_size(double b, double l, double t, Sign s) {
    if (s == Sign::plus) return b <= t ? std::min(b + l, t) - b : 0.0;
    return b + l <= t ? l : 0.0;
}

// int over T^{0<=} of phi(|N^pm(p;t)|), b <= t, numerically in (b, l)
double pm_power_integral(double t, Sign s, const std::function<double(double)>& phi,
                         const QuadratureConfig& q) {
    const auto qi = tighter(q);
    auto outer = [&](double a) {  // b = t - a
        const double b = t - a;
        const double l_lo = std::max(0.0, -b);
        const double kink = t - b;  // b + l = t
        auto g = [&](double l) { return phi(pm_size(b, l, t, s)) * std::exp(-l); };
        double v = 0.0;
        if (kink > l_lo) v += integrate(g, l_lo, kink, qi);
        if (s == Sign::plus) v += integrate_to_inf(g, std::max(kink, l_lo), qi);
        return v;
    };
    return half_line(outer, {t}, q);
}

}  // namespace

std::vector<LemmaCheck> lemma_catalog_check(const QuadratureConfig& q, int draws, std::uint64_t seed) {
    Rng rng(seed, 0, StreamTag::misc);
    const auto qi = tighter(q);
    std::vector<LemmaCheck> out;
    const Sign signs[2] = {Sign::plus, Sign::minus};
    auto sgn = [](Sign s) { return s == Sign::plus ? "_plus" : "_minus"; };

    {  // size of the spatial neighbourhood
        auto a = make("spatial_size", "equality");
        for (int k = 0; k < draws; ++k) {
            auto p = draw_params(rng, 0.05, 0.95, 0.05, 0.95);
            const double u = rng.uniform(0.01, 1.0);
            const double num = integrate_singular(
                [&](double w) { return 2.0 * spatial_radius(p, u, w > 0 ? w : 1e-300); }, 0.0, 1.0, q);
            a.equal(num, spatial_nbhd_size(p, u));
        }
        out.push_back(a.c);
    }
    {  // common neighbourhood of two vertices
        auto a = make("spatial_common_pair_bound", "bound");
        for (int k = 0; k < draws; ++k) {
            auto p = draw_params(rng, 0.05, 0.95, 0.05, 0.95);
            const double u1 = rng.uniform(0.01, 1.0), u2 = rng.uniform(0.01, 1.0);
            const double d = rng.uniform(0.05, 5.0);
            const double f1 = p.beta * std::pow(u1, -p.gamma), f2 = p.beta * std::pow(u2, -p.gamma);
            auto f = [&](double w) {
                const double ww = std::pow(w, -p.gamma_prime);
                return overlap(d, f1 * ww, f2 * ww);
            };
            const double wk1 = std::pow((f1 + f2) / d, 1.0 / p.gamma_prime);
            const double wk2 = std::pow(std::abs(f1 - f2) / d, 1.0 / p.gamma_prime);
            const double num = from_zero(f, 1.0, {wk1, wk2}, q);
            const double bnd = 2.0 * std::pow(2.0 * p.beta, 1.0 / p.gamma_prime) / (1.0 - p.gamma_prime) *
                               std::pow(d, -(1.0 / p.gamma_prime - 1.0)) *
                               std::pow(u1 * u2, -p.gamma / p.gamma_prime);
            a.bound(num, bnd);
        }
        out.push_back(a.c);
    }
    {  // spatial neighbourhood of an interaction
        auto a = make("spatial_size_interaction", "equality");
        for (int k = 0; k < draws; ++k) {
            auto p = draw_params(rng, 0.05, 0.95, 0.05, 0.95);
            const double w = rng.uniform(0.01, 1.0);
            const double ul = k % 4 == 0 ? 0.0 : rng.uniform(0.0, 0.9);
            const double num = integrate_singular(
                [&](double u) { return 2.0 * spatial_radius(p, u > 0 ? u : 1e-300, w); }, ul, 1.0, q);
            const double ref = 2.0 * p.beta / (1.0 - p.gamma) * std::pow(w, -p.gamma_prime) *
                               (1.0 - std::pow(ul, 1.0 - p.gamma));
            a.equal(num, ref);
        }
        out.push_back(a.c);
    }
    {  // powers of the spatial size
        auto a = make("spatial_size_power", "equality");
        for (int k = 0; k < draws; ++k) {
            const double al = rng.uniform(0.2, 3.0);
            const bool lower = k % 2 == 1;
            const double ghi = lower ? 0.95 : std::min(0.95, 1.0 / al - 0.05);
            auto p = draw_params(rng, 0.02, ghi, 0.05, 0.95);
            if (lower && std::abs(p.gamma * al - 1.0) < 1e-3) p.gamma *= 0.9;
            const double len = rng.uniform(0.5, 10.0);
            const double ul = lower ? rng.uniform(0.01, 0.9) : 0.0;
            const double ct = p.c_tilde();
            const double num = len * integrate_singular(
                                         [&](double u) { return std::pow(ct * std::pow(u, -p.gamma), al); },
                                         ul, 1.0, q);
            const double ref = std::pow(ct, al) * len / (1.0 - al * p.gamma) *
                               (1.0 - (lower ? std::pow(ul, 1.0 - al * p.gamma) : 0.0));
            a.equal(num, ref);
        }
        out.push_back(a.c);
    }
    {  // common neighbourhoods of m vertices in a window
        auto a2 = make("window_common_per_n_bound", "bound");
        auto a3 = make("window_common_low_cut_bound", "bound");
        auto a4 = make("window_common_total_bound", "bound");
        for (int k = 0; k < draws; ++k) {
            const int m = 1 + k % 3;
            auto p = draw_params(rng, 0.05, 0.8, 0.05, std::min(0.9, 1.0 / m - 0.05));
            p.n = rng.uniform(1.0, 30.0);
            const double lim = std::pow(2.0 * p.beta / (1.0 - p.gamma), m) / (1.0 - m * p.gamma_prime);
            const double full = window_pair_integral(p, m, 0.0, q);
            a2.bound(full / p.n, lim);
            a4.bound(full, lim * p.n);
            const double un = std::pow(p.n, -rng.uniform(0.1, 0.9));
            a3.bound(window_pair_integral(p, m, un, q) / p.n, lim);
        }
        out.push_back(a2.c);
        out.push_back(a3.c);
        out.push_back(a4.c);
    }
    for (int part : {5, 6}) {  // weighted common neighbourhoods of vertex pairs
        auto a = make(part == 5 ? "pair_weighted_common_bound" : "pair_weighted_common_cut_bound", "bound");
        QuadratureConfig q3 = q;
        q3.rel_tolerance = std::max(q.rel_tolerance, 1e-5);  // ample for a bound check
        for (int k = 0; k < draws; ++k) {
            const int m1 = k % 2, m2 = (k / 2) % 2, m3 = (k / 4) % 2;
            const double glim = 1.0 / (1 + std::max(m1, m2) + m3);
            auto p = part == 5 ? draw_params(rng, 0.05, glim - 0.03, 0.05, 1.0 / (2 + m3) - 0.03)
                               : draw_params(rng, 0.55, 0.95, 0.05, 1.0 / (2 + m3) - 0.03);
            p.n = rng.uniform(1.0, 10.0);
            const double ul = part == 5 ? 0.0 : rng.uniform(0.05, 0.9);
            const double ct = p.c_tilde();
            auto inner_w = [&](double u1, double u2) {
                const double f1 = p.beta * std::pow(u1, -p.gamma), f2 = p.beta * std::pow(u2, -p.gamma);
                auto f = [&](double w) {
                    const double ww = std::pow(w, -p.gamma_prime);
                    return window_overlap_moment(p.n, m3, f1 * ww, f2 * ww);
                };
                const double wa = std::pow((f1 + f2) / p.n, 1.0 / p.gamma_prime);
                const double wb = std::pow(std::abs(f1 - f2) / p.n, 1.0 / p.gamma_prime);
                return from_zero(f, 1.0, {wa, wb}, q3);
            };
            const double num = integrate_singular(
                [&](double u1) {
                    return std::pow(ct * std::pow(u1, -p.gamma), m1) *
                           integrate_singular(
                               [&](double u2) {
                                   return std::pow(ct * std::pow(u2, -p.gamma), m2) * inner_w(u1, u2);
                               },
                               ul, 1.0, q3);
                },
                ul, 1.0, q3);
            const double b2 = 2.0 * p.beta, g = p.gamma, gp = p.gamma_prime;
            const double c = std::pow(b2, 2 + m1 + m2 + m3) /
                             ((1 + m3) * std::pow(1 - gp, m1 + m2) * (1 - (2 + m3) * gp));
            const double c1 = 1.0 / ((1 - (1 + m1) * g) * (1 - (1 + m2 + m3) * g));
            const double c2 = 1.0 / ((1 - (1 + m2) * g) * (1 - (1 + m1 + m3) * g));
            double bnd;
            if (part == 5) {
                bnd = c * (c1 + c2) * p.n;
            } else {
                auto pos = [](double x) { return std::max(x, 0.0); };
                const double e1 = pos((1 + m2 + m3) * g - 1) + pos((1 + m1) * g - 1);
                const double e2 = pos((1 + m2) * g - 1) + pos((1 + m1 + m3) * g - 1);
                bnd = c * (std::abs(c1) * std::pow(ul, -e1) + std::abs(c2) * std::pow(ul, -e2)) * p.n;
            }
            a.bound(num, bnd, 1e-5);
        }
        out.push_back(a.c);
    }
    {  // temporal size
        auto a = make("temporal_size", "equality");
        for (int k = 0; k < draws; ++k) {
            const double t = rng.uniform(0.0, 1.0);
            const double b = k % 2 ? rng.uniform(-2.0, t) : rng.uniform(-2.0, 1.0);
            const double l = k % 2 ? rng.uniform(t - b, t - b + 2.0) : rng.uniform(0.05, 3.0);
            auto f = [&](double r) { return ind(b <= r && r <= t && t <= b + l); };
            const double num = integrate(f, b - 1.0, t + 1.0, {b, t}, q);
            a.equal(num, temporal_nbhd_size(Vertex{0.0, 1.0, b, l}, t));
        }
        out.push_back(a.c);
    }
    {  // temporal neighbourhood of an interaction
        auto a = make("temporal_size_interaction", "equality");
        for (int k = 0; k < draws; ++k) {
            const double t = rng.uniform(0.0, 1.0);
            const double r = k % 4 == 0 ? rng.uniform(t, t + 1.0) : rng.uniform(-3.0, t);
            double num = 0.0;
            if (r <= t)
                num = integrate_to_inf(
                    [&](double a_) {
                        const double b = r - a_;
                        return integrate_to_inf([](double l) { return std::exp(-l); }, t - b, qi);
                    },
                    0.0, q);
            a.equal(num, ind(r <= t) * std::exp(-(t - r)));
        }
        out.push_back(a.c);
    }
    {  // powers of the temporal size
        auto a = make("temporal_size_power", "equality");
        for (int k = 0; k < draws; ++k) {
            const double al = rng.uniform(0.1, 4.0);
            const double num = integrate_to_inf(
                [&](double x) {
                    // l = x + y; the x^al e^-x factor is formed in logs so huge x gives 0, not inf * 0
                    if (x <= 0.0) return 0.0;
                    return std::exp(al * std::log(x) - x) *
                           integrate_to_inf([](double y) { return std::exp(-y); }, 0.0, qi);
                },
                0.0, q);
            a.equal(num, std::tgamma(al + 1.0));
        }
        out.push_back(a.c);
    }
    auto weight_power = [&](double al, double t) {
        return half_line(
            [&](double s) {
                const double r = t - s;
                const double w = integrate_to_inf([&](double x) { return surv(t - (r - x)); }, 0.0, qi);
                return std::pow(w, al);
            },
            {}, q);
    };
    {
        auto a = make("temporal_weight_power", "equality");
        for (int k = 0; k < draws; ++k) {
            const int m = 1 + k % 5;
            a.equal(weight_power(m, rng.uniform(0.0, 1.0)), 1.0 / m);
        }
        out.push_back(a.c);
    }
    {
        auto a = make("temporal_pair_overlap_bound", "bound");
        for (int k = 0; k < draws; ++k) {
            const double a1 = rng.uniform(0.1, 3.0), a2 = rng.uniform(0.1, 3.0);
            const double t1 = rng.uniform(0.0, 1.0), t2 = rng.uniform(0.0, 1.0);
            const double tm = std::min(t1, t2);
            const double num = half_line(
                [&](double x1) {
                    const double b1 = t1 - x1;
                    auto f = [&](double x2) {
                        const double b2 = t2 - x2;
                        const double ov = std::max(tm - std::max(b1, b2), 0.0);
                        return std::pow(x1, a1) * std::pow(x2, a2) * ov * surv(x1) * surv(x2);
                    };
                    return half_line(f, {t2 - tm, t2 - b1}, qi);
                },
                {t1 - tm}, q);
            a.bound(num, std::tgamma(a1 + 1.0) * std::tgamma(a2 + 2.0));
        }
        out.push_back(a.c);
    }
    {
        auto a = make("temporal_weight_power_real", "equality");
        for (int k = 0; k < draws; ++k) {
            const double al = rng.uniform(0.2, 5.0);
            a.equal(weight_power(al, rng.uniform(0.0, 1.0)), 1.0 / al);
        }
        out.push_back(a.c);
    }
    for (Sign s : signs) {
        auto a = make(std::string("pm_size") + sgn(s), "equality");
        for (int k = 0; k < draws; ++k) {
            const double t = rng.uniform(0.0, 1.0);
            const double b = rng.uniform(-2.0, 1.0);
            const double l = rng.uniform(std::max(0.05, -b), std::max(0.05, -b) + 2.0);
            auto f = [&](double r) {
                if (s == Sign::plus) return ind(b <= r && r <= std::min(b + l, t));
                return ind(b <= r && r <= b + l && b + l <= t);
            };
            const double num = integrate(f, b - 1.0, std::max(b + l, t) + 1.0, {b, b + l, t}, q);
            a.equal(num, pm_temporal_nbhd_size(Vertex{0.0, 1.0, b, l}, t, s));
        }
        out.push_back(a.c);
    }
    for (Sign s : signs) {
        auto a = make(std::string("pm_time_weight") + sgn(s), "equality");
        for (int k = 0; k < draws; ++k) {
            const double t = rng.uniform(0.0, 1.0);
            const double r = rng.uniform(-3.0, t);
            const double num = pm_time_weight(r, t, s, qi);
            double ref;
            if (s == Sign::plus)
                ref = ind(r <= 0) * std::exp(r) + ind(0 <= r && r <= t);
            else
                ref = ind(r <= 0) * (std::exp(r) - std::exp(-(t - r))) +
                      ind(0 <= r && r <= t) * (1.0 - std::exp(-(t - r)));
            a.equal(num, ref);
        }
        out.push_back(a.c);
    }
    for (Sign s : signs) {
        auto a = make(std::string("pm_size_power") + sgn(s), "equality");
        for (int k = 0; k < draws; ++k) {
            const int m = 1 + k % 4;
            const double t = rng.uniform(0.05, 1.0);
            const double num = pm_power_integral(t, s, [&](double x) { return std::pow(x, m); }, q);
            const double f = std::tgamma(m + 1.0);
            a.equal(num, s == Sign::plus ? f * (t + 1.0) : f * t);
        }
        out.push_back(a.c);
    }
    for (Sign s : signs) {
        auto a = make(std::string("pm_size_power_bound") + sgn(s), "bound");
        for (int k = 0; k < draws; ++k) {
            const double al = rng.uniform(0.1, 4.0);
            const double t = rng.uniform(0.0, 1.0);
            const double num = pm_power_integral(
                t, s, [&](double x) { return x > 0.0 ? std::pow(x, al) : 0.0; }, q);
            const double c = std::pow(2.0 * al, al) * std::exp(-al);
            a.bound(num, 2.0 * c * t + std::tgamma(al + 1.0));
        }
        out.push_back(a.c);
    }
    for (Sign s : signs) {
        auto a = make(std::string("pm_increment_power_bound") + sgn(s), "bound");
        for (int k = 0; k < draws; ++k) {
            const int m = 1 + k % 3;
            double t1 = rng.uniform(0.0, 1.0), t2 = rng.uniform(0.0, 1.0);
            if (t1 > t2) std::swap(t1, t2);
            // |N(t2) \ N(t1)|, vertices with b + l >= 0
            auto delta = [&](double b, double l) {
                if (s == Sign::plus) return b <= t2 ? std::max(std::min(b + l, t2) - std::max(b, t1), 0.0) : 0.0;
                return (t1 < b + l && b + l <= t2) ? l : 0.0;
            };
            const double num = half_line(
                [&](double x) {
                    const double b = t2 - x;
                    const double l_lo = std::max(0.0, -b);
                    auto g = [&](double l) { return std::pow(delta(b, l), m) * std::exp(-l); };
                    const double k1 = t1 - b, k2 = t2 - b;
                    double v = 0.0;
                    if (k2 > l_lo) v += integrate(g, l_lo, k2, {k1}, qi);
                    if (s == Sign::plus) v += integrate_to_inf(g, std::max(k2, l_lo), qi);
                    return v;
                },
                {t2 - t1, t2}, q);
            a.bound(num, std::pow(t2 - t1, m));
        }
        out.push_back(a.c);
    }
    for (Sign s : signs) {
        auto a = make(std::string("pm_increment_weight") + sgn(s), "equality");
        for (int k = 0; k < draws; ++k) {
            const int m = 1 + k % 3;
            double t1 = rng.uniform(0.0, 1.0), t2 = rng.uniform(0.0, 1.0);
            if (t1 > t2) std::swap(t1, t2);
            // weight of vertices whose delta-set contains r
            auto weight = [&](double r) {
                if (s == Sign::plus) {
                    if (!(t1 < r && r <= t2)) return 0.0;
                    return integrate_to_inf([&](double x) { return surv(x); }, 0.0, qi);
                }
                if (r > t2) return 0.0;
                return integrate_to_inf(
                    [&](double x) {
                        const double b = r - x;
                        const double lo = std::max({r - b, t1 - b, -b});
                        return std::max(surv(lo) - surv(t2 - b), 0.0);
                    },
                    0.0, qi);
            };
            const double num = half_line([&](double y) { return std::pow(weight(t2 - y), m); },
                                         {t2 - t1, t2}, q);
            a.equal(num, t2 - t1);
        }
        out.push_back(a.c);
    }
    {
        auto a = make("pm_weight_power_plus", "equality");
        for (int k = 0; k < draws; ++k) {
            const int m = 1 + k % 4;
            const double t = rng.uniform(0.0, 1.0);
            const double num = half_line(
                [&](double y) { return std::pow(pm_time_weight(t - y, t, Sign::plus, qi), m); }, {t}, q);
            a.equal(num, 1.0 / m + t);
        }
        out.push_back(a.c);
    }
    for (Sign s : signs) {
        auto a = make(std::string("pm_pair_overlap_finite") + sgn(s), "finite");
        QuadratureConfig q4 = q;
        q4.rel_tolerance = 1e-5;
        q4.max_subdivisions = 8;
        for (int k = 0; k < draws; ++k) {
            const double a1 = rng.uniform(0.0, 2.0), a2 = rng.uniform(0.0, 2.0);
            const double t1 = rng.uniform(0.0, 1.0), t2 = rng.uniform(0.0, 1.0);
            // the overlap is int dr 1{r in N1} 1{r in N2}, so the double integral over
            // (p1, p2) factors as int dr F1(r) F2(r) with
            // F(r) = int over p with r in N(p; t) of |N(p; t)|^al.
            // Integrands decay like e^-l and e^r; half lines are cut at 60.
            constexpr double cut = 60.0;
            auto F = [&](double r, double t, double al) {
                if (r > t) return 0.0;
                return integrate(
                    [&](double x) {  // b = r - x
                        const double b = r - x;
                        const double l_lo = std::max({0.0, -b, x});
                        const double kink = t - b;
                        auto g = [&](double l) {
                            const double len = s == Sign::plus ? std::min(l, kink) : l;
                            return std::pow(len, al) * std::exp(-l);
                        };
                        if (s == Sign::minus) return kink > l_lo ? integrate(g, l_lo, kink, q4) : 0.0;
                        const double top = std::max(l_lo, kink);
                        return integrate(g, l_lo, top, q4) + integrate(g, top, top + cut, q4);
                    },
                    0.0, cut, {r, t - r}, q4);
            };
            const double num = integrate([&](double r) { return F(r, t1, a1) * F(r, t2, a2); }, -cut,
                                         std::min(t1, t2), {0.0}, q4);
            a.finite(num);
        }
        out.push_back(a.c);
    }
    return out;
}

}  // namespace drchm
