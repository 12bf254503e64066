#include "drchm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"


namespace drchm {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// moments from power sums of already-centred data
struct Moments {
    double mean, var, skew, kurt;
};

Moments from_sums(double n, double s1, double s2, double s3, double s4) {
    const double m = s1 / n;
    const double c2 = s2 / n - m * m;
    const double c3 = s3 / n - 3 * m * s2 / n + 2 * m * m * m;
    const double c4 = s4 / n - 4 * m * s3 / n + 6 * m * m * s2 / n - 3 * m * m * m * m;
    Moments r;
    r.mean = m;
    r.var = c2 * n / (n - 1);
    r.skew = c2 > 0 ? c3 / std::pow(c2, 1.5) : 0.0;
    r.kurt = c2 > 0 ? c4 / (c2 * c2) - 3.0 : 0.0;
    return r;
}

double jk_se(const std::vector<double>& loo) {
    const double n = static_cast<double>(loo.size());
    const double mean = std::accumulate(loo.begin(), loo.end(), 0.0) / n;
    double s = 0.0;
    for (double v : loo) s += (v - mean) * (v - mean);
    return std::sqrt((n - 1) / n * s);
}

}  // namespace

MomentSummary summarize(const std::vector<double>& x) {
    MomentSummary out;
    out.count = x.size();
    if (x.empty()) {
        out.mean = out.variance = std::numeric_limits<double>::quiet_NaN();
        out.mean_se = out.variance_se = out.skewness_se = out.kurtosis_se = inf;
        return out;
    }
    const double n = static_cast<double>(x.size());
    const double shift = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    for (double v : x) {
        const double y = v - shift;
        s1 += y;
        s2 += y * y;
        s3 += y * y * y;
        s4 += y * y * y * y;
    }
    if (x.size() < 3) {
        out.mean = shift + s1 / n;
        out.variance = x.size() == 2 ? (s2 - s1 * s1 / n) / (n - 1) : 0.0;
        out.mean_se = out.variance_se = out.skewness_se = out.kurtosis_se = inf;
        return out;
    }
    const auto full = from_sums(n, s1, s2, s3, s4);
    out.mean = shift + full.mean;
    out.variance = full.var;
    out.skewness = full.skew;
    out.excess_kurtosis = full.kurt;
    std::vector<double> lv(x.size()), ls(x.size()), lk(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double y = x[i] - shift;
        const auto m = from_sums(n - 1, s1 - y, s2 - y * y, s3 - y * y * y, s4 - y * y * y * y);
        lv[i] = m.var;
        ls[i] = m.skew;
        lk[i] = m.kurt;
    }
    out.mean_se = std::sqrt(out.variance / n);
    out.variance_se = jk_se(lv);
    out.skewness_se = jk_se(ls);
    out.kurtosis_se = jk_se(lk);
    return out;
}

std::string to_jsonl(const MomentSummary& m, const std::string& label) {
    nlohmann::ordered_json j;
    j["label"] = label;
    j["count"] = m.count;
    j["mean"] = m.mean;
    j["variance"] = m.variance;
    j["skewness"] = m.skewness;
    j["excess_kurtosis"] = m.excess_kurtosis;
    j["mean_se"] = m.mean_se;
    j["variance_se"] = m.variance_se;
    j["skewness_se"] = m.skewness_se;
    j["kurtosis_se"] = m.kurtosis_se;
    return j.dump();
}

CovEstimate cross_covariance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
    if (a.size() < 2) throw std::invalid_argument("need at least two pairs");
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sa = 0, sb = 0, sab = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa += a[i] - ma;
        sb += b[i] - mb;
        sab += (a[i] - ma) * (b[i] - mb);
    }
    CovEstimate out;
    out.cov = (sab - sa * sb / n) / (n - 1);
    if (a.size() < 3) {
        out.se = inf;
        return out;
    }
    std::vector<double> loo(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ya = a[i] - ma, yb = b[i] - mb;
        const double m = n - 1;
        loo[i] = ((sab - ya * yb) - (sa - ya) * (sb - yb) / m) / (m - 1);
    }
    out.se = jk_se(loo);
    return out;
}

NormalityResult normality_statistic(const std::vector<double>& x) {
    if (x.size() < 100) throw std::invalid_argument("normality statistic needs at least 100 samples");
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : x) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (!(m2 > 0.0)) throw std::invalid_argument("zero variance");
    const double g1 = m3 / std::pow(m2, 1.5);
    const double b2 = m4 / (m2 * m2);

    // D'Agostino skewness transform
    const double y = g1 * std::sqrt((n + 1) * (n + 3) / (6.0 * (n - 2)));
    const double beta2 =
        3.0 * (n * n + 27 * n - 70) * (n + 1) * (n + 3) / ((n - 2) * (n + 5) * (n + 7) * (n + 9));
    const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
    const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
    const double alpha = std::sqrt(2.0 / (w2 - 1.0));
    const double ya = y / alpha;
    const double z1 = delta * std::log(ya + std::sqrt(ya * ya + 1.0));

    // Anscombe-Glynn kurtosis transform
    const double eb2 = 3.0 * (n - 1) / (n + 1);
    const double vb2 = 24.0 * n * (n - 2) * (n - 3) / ((n + 1) * (n + 1) * (n + 3) * (n + 5));
    const double xk = (b2 - eb2) / std::sqrt(vb2);
    const double sb1 = 6.0 * (n * n - 5 * n + 2) / ((n + 7) * (n + 9)) *
                       std::sqrt(6.0 * (n + 3) * (n + 5) / (n * (n - 2) * (n - 3)));
    const double A = 6.0 + 8.0 / sb1 * (2.0 / sb1 + std::sqrt(1.0 + 4.0 / (sb1 * sb1)));
    const double t = (1.0 - 2.0 / A) / (1.0 + xk * std::sqrt(2.0 / (A - 4.0)));
    const double z2 = ((1.0 - 2.0 / (9.0 * A)) - std::cbrt(t)) / std::sqrt(2.0 / (9.0 * A));

    NormalityResult r;
    r.skew_z = z1;
    r.kurt_z = z2;
    r.omnibus = z1 * z1 + z2 * z2;
    r.p_value = std::exp(-0.5 * r.omnibus);
    return r;
}

double chi2_2_quantile(double level) { return -2.0 * std::log(1.0 - level); }

HillResult hill_tail_index(const std::vector<double>& x, std::size_t k) {
    if (k < 10 || 2 * k >= x.size()) throw std::invalid_argument("k out of range");
    for (double v : x)
        if (!(v > 0.0)) throw std::invalid_argument("Hill estimator needs positive samples");
    std::vector<double> s = x;
    std::nth_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), s.end(), std::greater<>());
    const double ref = s[k];
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += std::log(s[i] / ref);
    HillResult r;
    r.k = k;
    if (!(sum > 0.0)) {
        r.alpha_hat = inf;
        r.se = inf;
        r.degenerate = true;
        return r;
    }
    r.alpha_hat = static_cast<double>(k) / sum;
    r.se = r.alpha_hat / std::sqrt(static_cast<double>(k));
    return r;
}

HillResult hill_tail_index(const std::vector<double>& x) {
    return hill_tail_index(x, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(x.size())))));
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double t = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == t) ++i;
        while (j < b.size() && b[j] == t) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double quantile(std::vector<double> x, double q) {
    if (x.empty()) throw std::invalid_argument("empty sample");
    std::sort(x.begin(), x.end());
    const double h = q * static_cast<double>(x.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, x.size() - 1);
    return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

double median(std::vector<double> x) { return quantile(std::move(x), 0.5); }

}  // namespace drchm
