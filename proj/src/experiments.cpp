#include "drchm/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>

#include "drchm/edges.hpp"
#include "drchm/format.hpp"
#include "drchm/sampler.hpp"
#include "json.hpp"

namespace drchm {

using nlohmann::json;

namespace {

// distinct stream blocks per experiment section
std::uint64_t block(std::uint64_t section, std::uint64_t sub = 0) { return (section << 40) | (sub << 24); }

json num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json to_json(const MomentSummary& m) {
    return {{"count", m.count},          {"mean", num(m.mean)},
            {"variance", num(m.variance)}, {"skewness", num(m.skewness)},
            {"excess_kurtosis", num(m.excess_kurtosis)}, {"mean_se", num(m.mean_se)},
            {"variance_se", num(m.variance_se)}, {"skewness_se", num(m.skewness_se)},
            {"kurtosis_se", num(m.kurtosis_se)}};
}

json to_json(const ModelParams& p) {
    return {{"beta", p.beta}, {"gamma", p.gamma}, {"gamma_prime", p.gamma_prime}, {"n", p.n},
            {"regime", to_string(p.regime())}};
}

json to_json(const HillResult& h) {
    return {{"alpha_hat", num(h.alpha_hat)}, {"se", num(h.se)}, {"k", h.k}, {"degenerate", h.degenerate}};
}

void emit(std::ostream* os, const json& j) {
    if (os) *os << j.dump() << '\n';
}

double z_score(double emp, double oracle, double se) {
    if (!(se > 0.0) || std::isinf(se)) return 0.0;
    return (emp - oracle) / se;
}

// largest |a - (b - c)| over the merged breakpoints
double step_identity_error(const StepPath& a, const StepPath& b, const StepPath& c, bool sum) {
    std::set<double> ts{0.0, 1.0};
    for (const auto* s : {&a, &b, &c}) ts.insert(s->times.begin(), s->times.end());
    double e = 0.0;
    for (double t : ts) {
        if (t < 0.0 || t > 1.0) continue;
        const double rhs = sum ? b(t) + c(t) : b(t) - c(t);
        e = std::max(e, std::abs(a(t) - rhs));
    }
    return e;
}

std::vector<double> merged_times(std::vector<double> a, const std::vector<double>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

std::size_t index_of(const std::vector<double>& v, double x) {
    const auto it = std::lower_bound(v.begin(), v.end(), x - 1e-12);
    return static_cast<std::size_t>(it - v.begin());
}

ModelParams with_n(ModelParams p, double n) {
    p.n = n;
    return p;
}

double mark_threshold(const ExperimentConfig& cfg, double n) { return std::pow(n, -cfg.mark_exponent); }

}  // namespace

double fluctuation_scale(const ModelParams& p) {
    return p.regime() == Regime::gaussian ? std::sqrt(p.n) : std::pow(p.n, p.gamma);
}

double high_mark_mean(const ModelParams& p, double u_thr, double w_min) {
    const double wpart = (1.0 - std::pow(w_min, 1.0 - p.gamma_prime)) / (1.0 - p.gamma_prime);
    const double upart = (1.0 - std::pow(u_thr, 1.0 - p.gamma)) / (1.0 - p.gamma);
    return p.n * 2.0 * p.beta * wpart * upart;
}

ReplicateResult run_replicate(const ModelParams& p, const SamplerConfig& c, std::uint64_t stream,
                              const std::vector<double>& times, const ReplicateOptions& o) {
    ReplicateResult r;
    const auto vs = sample_vertices(p, c, stream);
    const auto is = sample_interactions(p, c, vs, stream);
    r.missed_edge_bound = is.missed_edge_bound;
    r.w_min = is.w_min;
    r.vertices = vs.vertices.size();
    r.interactions = is.interactions.size();
    const auto edges = build_edges(p, vs.vertices, is.interactions);
    r.edges = edges.size();
    const auto path = edge_count_path(edges);
    r.s.reserve(times.size());
    for (double t : times) r.s.push_back(path(t));
    if (o.mark_split) {
        const auto ms = mark_split_paths(edges, vs.vertices, o.mark_threshold);
        for (double t : times) {
            r.low.push_back(ms.low(t));
            r.high.push_back(ms.high(t));
        }
        const double e_high = high_mark_mean(p, o.mark_threshold, is.w_min);
        r.high_sup_centered = sup_norm_distance(ms.high, StepPath::constant(e_high));
        if (o.identities) r.mark_identity_error = step_identity_error(path, ms.low, ms.high, true);
    }
    if (o.identities) {
        const auto pm = pm_edge_count_paths(edges);
        r.pm_identity_error = step_identity_error(path, pm.plus, pm.minus, false);
    }
    if (o.brute_force) r.brute_force_equal = build_edges_brute_force(p, vs.vertices, is.interactions) == edges;
    if (o.keep_path) r.path = path;
    return r;
}

std::vector<ReplicateResult> run_replicates(const ModelParams& p, const SamplerConfig& c, int count,
                                            std::uint64_t first_stream, const std::vector<double>& times,
                                            const ReplicateOptions& o, int workers) {
    std::vector<ReplicateResult> out(static_cast<std::size_t>(std::max(count, 0)));
    parallel_for(out.size(), workers, [&](std::size_t i) {
        out[i] = run_replicate(p, c, first_stream + i, times, o);
    });
    return out;
}

GaussianReport run_validate_gaussian(const ExperimentConfig& cfg, std::ostream* os) {
    const auto& p = cfg.model;
    validate(p);
    if (p.regime() != Regime::gaussian) throw RegimeError("validate-gaussian needs gamma < 1/2");
    if (!(p.gamma_prime < 0.5)) throw RegimeError("validate-gaussian needs gamma' < 1/2");
    GaussianReport rep;
    rep.model = p;
    rep.replicates = cfg.replicates;
    rep.mean_oracle = mean_edge_count(p);
    const double scale = fluctuation_scale(p);
    emit(os, {{"record", "meta"}, {"kind", "validate-gaussian"}, {"seed", cfg.sampler.master_seed},
              {"model", to_json(p)}, {"replicates", cfg.replicates},
              {"warning", (p.gamma > 0.25 || p.gamma_prime > 0.25) ? "gamma or gamma' above 1/4" : ""}});

    std::vector<double> cov_times;
    for (double h : cfg.lags) cov_times.push_back(cfg.lag_base + h);
    cov_times.push_back(cfg.lag_base);
    const auto times = merged_times(cfg.eval_times, cov_times);

    const auto reps = run_replicates(p, cfg.sampler, cfg.replicates, block(1), times, {}, cfg.workers);
    std::vector<std::vector<double>> bar(times.size(), std::vector<double>(reps.size()));
    std::vector<std::vector<double>> raw(times.size(), std::vector<double>(reps.size()));
    for (std::size_t r = 0; r < reps.size(); ++r) {
        rep.max_missed_edge_bound = std::max(rep.max_missed_edge_bound, reps[r].missed_edge_bound);
        for (std::size_t k = 0; k < times.size(); ++k) {
            raw[k][r] = reps[r].s[k];
            bar[k][r] = (reps[r].s[k] - rep.mean_oracle) / scale;
        }
    }

    for (double t : cfg.eval_times) {
        const auto k = index_of(times, t);
        TimeVariance tv;
        tv.t = t;
        tv.raw = summarize(raw[k]);
        tv.emp = summarize(bar[k]);
        tv.oracle = oracle_variance(p, t, cfg.quad) / p.n;
        tv.z = z_score(tv.emp.variance, tv.oracle, tv.emp.variance_se);
        if (reps.size() >= 100 && tv.emp.variance > 0.0) {
            tv.normality = normality_statistic(bar[k]);
            tv.normality_rejects = tv.normality.omnibus > chi2_2_quantile(0.999);
        }
        emit(os, {{"record", "variance"}, {"t", t}, {"raw", to_json(tv.raw)}, {"scaled", to_json(tv.emp)},
                  {"mean_oracle", rep.mean_oracle}, {"mean_z", num(z_score(tv.raw.mean, rep.mean_oracle, tv.raw.mean_se))},
                  {"variance_oracle", tv.oracle}, {"variance_z", num(tv.z)},
                  {"normality", {{"skew_z", num(tv.normality.skew_z)}, {"kurt_z", num(tv.normality.kurt_z)},
                                 {"omnibus", num(tv.normality.omnibus)}, {"p_value", num(tv.normality.p_value)},
                                 {"rejects_at_999", tv.normality_rejects}}}});
        rep.variance.push_back(tv);
    }

    const auto k0 = index_of(times, cfg.lag_base);
    for (double h : cfg.lags) {
        const auto k1 = index_of(times, cfg.lag_base + h);
        CovarianceRow row;
        row.t1 = cfg.lag_base;
        row.t2 = cfg.lag_base + h;
        row.emp = cross_covariance(bar[k0], bar[k1]);
        row.oracle = oracle_covariance(p, row.t1, row.t2, cfg.quad);
        row.z_limit = z_score(row.emp.cov, row.oracle.value, row.emp.se);
        row.z_window = z_score(row.emp.cov, row.oracle.window_value, row.emp.se);
        emit(os, {{"record", "covariance"}, {"t1", row.t1}, {"t2", row.t2}, {"empirical", num(row.emp.cov)},
                  {"se", num(row.emp.se)}, {"oracle_limit", row.oracle.value},
                  {"oracle_window", row.oracle.window_value}, {"printed", row.oracle.printed},
                  {"z_limit", num(row.z_limit)}, {"z_window", num(row.z_window)}});
        rep.covariance.push_back(row);
    }

    rep.adjudication = adjudicate_variance(p, cfg.quad);
    emit(os, {{"record", "adjudication"}, {"oracle", rep.adjudication.oracle},
              {"printed_covariance_lag0", rep.adjudication.printed_covariance_lag0},
              {"printed_variance_alt", rep.adjudication.printed_variance_alt},
              {"matches_covariance_form", rep.adjudication.matches_covariance_form},
              {"matches_variance_form", rep.adjudication.matches_variance_form},
              {"verdict", rep.adjudication.verdict}});

    rep.n_ladder = cfg.n_ladder;
    if (!cfg.n_ladder.empty()) {
        const double t = cfg.eval_times.empty() ? 0.5 : cfg.eval_times[cfg.eval_times.size() / 2];
        int decreasing = 0;
        for (int b = 0; b < cfg.batches; ++b) {
            std::vector<double> vars;
            for (std::size_t i = 0; i < cfg.n_ladder.size(); ++i) {
                const auto pn = with_n(p, cfg.n_ladder[i]);
                ReplicateOptions o;
                o.mark_split = true;
                o.mark_threshold = mark_threshold(cfg, pn.n);
                const auto rr = run_replicates(pn, cfg.sampler, cfg.replicates,
                                               block(2, static_cast<std::uint64_t>(b) * 64 + i), {t}, o,
                                               cfg.workers);
                std::vector<double> low(rr.size());
                for (std::size_t r = 0; r < rr.size(); ++r) low[r] = rr[r].low[0] / std::sqrt(pn.n);
                vars.push_back(summarize(low).variance);
            }
            bool dec = true;
            for (std::size_t i = 1; i < vars.size(); ++i) dec = dec && vars[i] < vars[i - 1];
            decreasing += dec ? 1 : 0;
            emit(os, {{"record", "low_mark"}, {"batch", b}, {"t", t}, {"n_ladder", cfg.n_ladder},
                      {"variance", vars}, {"decreasing", dec}});
            rep.low_mark_var.push_back(vars);
        }
        rep.low_mark_decreasing_fraction = static_cast<double>(decreasing) / cfg.batches;
        emit(os, {{"record", "low_mark_summary"}, {"decreasing_fraction", rep.low_mark_decreasing_fraction}});
    }
    return rep;
}

StableReport run_validate_stable(const ExperimentConfig& cfg, std::ostream* os) {
    const auto& p = cfg.model;
    validate(p);
    if (p.regime() != Regime::stable) throw RegimeError("validate-stable needs gamma > 1/2");
    StableReport rep;
    rep.model = p;
    emit(os, {{"record", "meta"}, {"kind", "validate-stable"}, {"seed", cfg.sampler.master_seed},
              {"model", to_json(p)}, {"replicates", cfg.replicates},
              {"warning", p.gamma_prime >= 0.25 ? "gamma' at or above 1/4" : ""}});

    // (i) tail index of J: pool limit points until enough are collected
    {
        std::vector<double> js;
        const double thr = jump_threshold(p, cfg.epsilon);
        for (std::uint64_t s = 0; js.size() < static_cast<std::size_t>(cfg.jump_sample_size); ++s) {
            for (const auto& q : sample_jump_band(p, thr, std::numeric_limits<double>::infinity(), cfg.sampler,
                                                  block(3), s))
                js.push_back(q.j);
        }
        js.resize(static_cast<std::size_t>(cfg.jump_sample_size));
        rep.j_count = js.size();
        rep.hill_j = hill_tail_index(js);
        emit(os, {{"record", "hill_j"}, {"count", rep.j_count}, {"hill", to_json(rep.hill_j)},
                  {"target", 1.0 / p.gamma}});
    }
    // (i) tail index of S_n(1) exceedances over its mean
    {
        const auto rr = run_replicates(p, cfg.sampler, cfg.replicates, block(4), {1.0}, {}, cfg.workers);
        const double m = mean_edge_count(p);
        std::vector<double> exc;
        for (const auto& r : rr)
            if (r.s[0] > m) exc.push_back(r.s[0] - m);
        rep.s_replicates = cfg.replicates;
        const std::size_t k = cfg.hill_k > 0 ? static_cast<std::size_t>(cfg.hill_k)
                                             : static_cast<std::size_t>(std::ceil(std::sqrt(double(rr.size()))));
        if (2 * k < exc.size()) {
            rep.hill_s = hill_tail_index(exc, k);
        } else {
            rep.hill_s.alpha_hat = std::numeric_limits<double>::infinity();
            rep.hill_s.se = rep.hill_s.alpha_hat;
            rep.hill_s.degenerate = true;
        }
        emit(os, {{"record", "hill_s"}, {"replicates", rr.size()}, {"exceedances", exc.size()},
                  {"hill", to_json(rep.hill_s)}, {"target", 1.0 / p.gamma}});
    }
    // limit mean at t = 0.5 and band variance; epsilon from cfg, band (10 eps, eps)
    {
        std::vector<double> v(static_cast<std::size_t>(cfg.limit_replicates));
        parallel_for(v.size(), cfg.workers, [&](std::size_t i) {
            v[i] = stable_path(sample_limit_points(p, cfg.epsilon, cfg.sampler, block(5) + i))(0.5);
        });
        const auto s = summarize(v);
        rep.limit_mean_emp = s.mean;
        rep.limit_mean_se = s.mean_se;
        rep.limit_mean_oracle = stable_mean(p, cfg.epsilon);
        const double eps_hi = std::min(1.0, 10.0 * cfg.epsilon);
        // the band is on the jump scale itself: J in [eps, 10 eps)
        const double lo = cfg.epsilon, hi = eps_hi;
        parallel_for(v.size(), cfg.workers, [&](std::size_t i) {
            v[i] = stable_path(sample_jump_band(p, lo, hi, cfg.sampler, block(6) + i))(0.5);
        });
        const auto sb = summarize(v);
        rep.band_var_emp = sb.variance;
        rep.band_var_se = sb.variance_se;
        rep.band_var_oracle = stable_band_variance(p, eps_hi, cfg.epsilon);
        emit(os, {{"record", "limit_moments"}, {"epsilon", cfg.epsilon}, {"replicates", v.size()},
                  {"mean", rep.limit_mean_emp}, {"mean_se", num(rep.limit_mean_se)},
                  {"mean_oracle", rep.limit_mean_oracle}, {"mean_alt_exponent", stable_mean_alt(p, cfg.epsilon)},
                  {"band", {eps_hi, cfg.epsilon}}, {"band_variance", rep.band_var_emp},
                  {"band_variance_se", num(rep.band_var_se)}, {"band_variance_oracle", rep.band_var_oracle}});
    }
    // (ii) KS against a limit reference sample, (iii) high-mark sup norm
    rep.n_ladder = cfg.n_ladder;
    if (!cfg.n_ladder.empty()) {
        const double t = 0.5;
        int decreasing = 0;
        std::vector<std::vector<double>> highs(cfg.n_ladder.size());
        for (int b = 0; b < cfg.batches; ++b) {
            std::vector<double> ref(static_cast<std::size_t>(cfg.limit_replicates));
            parallel_for(ref.size(), cfg.workers, [&](std::size_t i) {
                ref[i] = sample_stable_path(p, cfg.epsilon, cfg.sampler, block(7, static_cast<std::uint64_t>(b)) + i)
                             .centered(t);
            });
            std::vector<double> ks;
            for (std::size_t i = 0; i < cfg.n_ladder.size(); ++i) {
                const auto pn = with_n(p, cfg.n_ladder[i]);
                ReplicateOptions o;
                o.mark_split = b == 0;
                o.mark_threshold = mark_threshold(cfg, pn.n);
                const auto rr = run_replicates(pn, cfg.sampler, cfg.replicates,
                                               block(8, static_cast<std::uint64_t>(b) * 64 + i), {t}, o, cfg.workers);
                const double m = mean_edge_count(pn), sc = fluctuation_scale(pn);
                std::vector<double> x(rr.size());
                for (std::size_t r = 0; r < rr.size(); ++r) {
                    x[r] = (rr[r].s[0] - m) / sc;
                    if (b == 0) highs[i].push_back(rr[r].high_sup_centered / sc);
                }
                ks.push_back(ks_distance(x, ref));
            }
            bool dec = true;
            for (std::size_t i = 1; i < ks.size(); ++i) dec = dec && ks[i] < ks[i - 1];
            decreasing += dec ? 1 : 0;
            emit(os, {{"record", "ks"}, {"batch", b}, {"t", t}, {"n_ladder", cfg.n_ladder}, {"ks", ks},
                      {"reference_size", ref.size()}, {"decreasing", dec}});
            rep.ks.push_back(ks);
        }
        rep.ks_decreasing_fraction = static_cast<double>(decreasing) / cfg.batches;
        for (auto& h : highs) rep.high_mark_median.push_back(median(h));
        emit(os, {{"record", "ks_summary"}, {"decreasing_fraction", rep.ks_decreasing_fraction}});
        emit(os, {{"record", "high_mark"}, {"n_ladder", cfg.n_ladder}, {"median_sup", rep.high_mark_median},
                  {"threshold_exponent", cfg.mark_exponent}});
    }
    // (iv) epsilon refinement
    if (cfg.eps_sequence.size() >= 2) {
        rep.refinement = epsilon_refinement_study(p, cfg.eps_sequence, cfg.limit_replicates, cfg.sampler, block(9));
        emit(os, {{"record", "refinement"}, {"eps", rep.refinement.eps}, {"median", rep.refinement.median},
                  {"q10", rep.refinement.q10}, {"q90", rep.refinement.q90},
                  {"max_identity_error", rep.refinement.max_identity_error}});
    }
    return rep;
}

MarksReport run_validate_marks(const ExperimentConfig& cfg, std::ostream* os) {
    const auto& p = cfg.model;
    validate(p);
    MarksReport rep;
    rep.replicates = cfg.replicates;
    ReplicateOptions o;
    o.mark_split = true;
    o.identities = true;
    o.mark_threshold = mark_threshold(cfg, p.n);
    const auto rr = run_replicates(p, cfg.sampler, cfg.replicates, block(10), cfg.eval_times, o, cfg.workers);
    for (const auto& r : rr) {
        rep.max_pm_error = std::max(rep.max_pm_error, r.pm_identity_error);
        rep.max_mark_error = std::max(rep.max_mark_error, r.mark_identity_error);
    }
    // pairing check on small instances (at most 200 points in total)
    const auto small = with_n(p, std::min(p.n, 20.0));
    o.brute_force = true;
    std::vector<ReplicateResult> sr(static_cast<std::size_t>(cfg.replicates));
    parallel_for(sr.size(), cfg.workers, [&](std::size_t i) {
        sr[i] = run_replicate(small, cfg.sampler, block(11) + i, cfg.eval_times, o);
    });
    for (const auto& r : sr) {
        if (r.vertices + r.interactions > 200) continue;
        ++rep.brute_force_checked;
        if (!r.brute_force_equal) ++rep.brute_force_mismatches;
    }
    emit(os, {{"record", "meta"}, {"kind", "validate-marks"}, {"seed", cfg.sampler.master_seed},
              {"model", to_json(p)}, {"replicates", cfg.replicates}});
    emit(os, {{"record", "identities"}, {"max_pm_error", rep.max_pm_error}, {"max_mark_error", rep.max_mark_error},
              {"mark_threshold", o.mark_threshold}, {"brute_force_checked", rep.brute_force_checked},
              {"brute_force_mismatches", rep.brute_force_mismatches}});
    return rep;
}

SimulateReport run_simulate(const ExperimentConfig& cfg, std::ostream* os) {
    const auto& p = cfg.model;
    validate(p);
    ReplicateOptions o;
    o.keep_path = cfg.write_paths;
    const auto rr = run_replicates(p, cfg.sampler, cfg.replicates, block(12), cfg.eval_times, o, cfg.workers);
    SimulateReport rep;
    rep.mean_oracle = mean_edge_count(p);
    const double sc = fluctuation_scale(p);
    for (const auto& r : rr) rep.max_missed_edge_bound = std::max(rep.max_missed_edge_bound, r.missed_edge_bound);
    emit(os, {{"record", "meta"}, {"kind", "simulate"}, {"seed", cfg.sampler.master_seed}, {"model", to_json(p)},
              {"replicates", cfg.replicates}, {"max_missed_edge_bound", rep.max_missed_edge_bound},
              {"missed_edge_tolerance", cfg.sampler.missed_edge_tolerance}});
    for (std::size_t k = 0; k < cfg.eval_times.size(); ++k) {
        std::vector<double> raw(rr.size()), bar(rr.size());
        for (std::size_t r = 0; r < rr.size(); ++r) {
            raw[r] = rr[r].s[k];
            bar[r] = (raw[r] - rep.mean_oracle) / sc;
        }
        rep.raw.push_back(summarize(raw));
        rep.scaled.push_back(summarize(bar));
        emit(os, {{"record", "summary"}, {"t", cfg.eval_times[k]}, {"raw", to_json(rep.raw.back())},
                  {"scaled", to_json(rep.scaled.back())}, {"mean_oracle", rep.mean_oracle}});
    }
    if (cfg.write_paths) {
        const auto dir = std::filesystem::path(cfg.out_dir) / "paths";
        std::filesystem::create_directories(dir);
        for (std::size_t r = 0; r < rr.size(); ++r) {
            std::ofstream f(dir / ("simulate_" + std::to_string(r) + ".csv"));
            if (!f) throw std::runtime_error("cannot write path file in " + dir.string());
            write_csv(f, rr[r].path);
        }
    }
    return rep;
}

void run_oracle_report(const ExperimentConfig& cfg, std::ostream& os) {
    const auto& p = cfg.model;
    validate(p);
    emit(&os, {{"record", "meta"}, {"kind", "oracle-report"}, {"model", to_json(p)}});
    emit(&os, {{"record", "mean"}, {"mean_edge_count", mean_edge_count(p)}});
    if (p.gamma < 0.5 && p.gamma_prime < 0.5) {
        const auto c = covariance_constants(p);
        const auto a = adjudicated_constants(p, cfg.quad);
        emit(&os, {{"record", "constants"}, {"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3},
                   {"adjudicated_c2", a.c2}, {"adjudicated_c3", a.c3}});
        const auto v = adjudicate_variance(p, cfg.quad);
        emit(&os, {{"record", "adjudication"}, {"oracle", v.oracle},
                   {"printed_covariance_lag0", v.printed_covariance_lag0},
                   {"printed_variance_alt", v.printed_variance_alt},
                   {"matches_covariance_form", v.matches_covariance_form},
                   {"matches_variance_form", v.matches_variance_form}, {"verdict", v.verdict}});
        for (double t : cfg.eval_times)
            emit(&os, {{"record", "variance"}, {"t", t}, {"oracle_variance_over_n", oracle_variance(p, t, cfg.quad) / p.n}});
    } else if (p.gamma > 0.5) {
        emit(&os, {{"record", "stable_mean"}, {"epsilon", cfg.epsilon}, {"value", stable_mean(p, cfg.epsilon)},
                   {"alt_exponent", stable_mean_alt(p, cfg.epsilon)},
                   {"quadrature", stable_mean_quadrature(p, cfg.epsilon, cfg.quad)}});
    }
    for (const auto& l : lemma_catalog_check(cfg.quad)) os << to_jsonl(l) << '\n';
}

void run_sample_limit(const ExperimentConfig& cfg, std::ostream& os) {
    const auto& p = cfg.model;
    validate(p);
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
    grid = merged_times(grid, cfg.eval_times);
    std::vector<std::vector<double>> paths(static_cast<std::size_t>(cfg.replicates));
    if (p.regime() == Regime::gaussian) {
        const auto g = make_gaussian_grid(p, grid, adjudicated_constants(p, cfg.quad));
        parallel_for(paths.size(), cfg.workers,
                     [&](std::size_t i) { paths[i] = sample_gaussian_path(g, cfg.sampler.master_seed, block(13) + i); });
        emit(&os, {{"record", "meta"}, {"kind", "sample-limit"}, {"model", to_json(p)}, {"process", "gaussian"},
                   {"jitter", g.jitter}, {"seed", cfg.sampler.master_seed}});
    } else {
        parallel_for(paths.size(), cfg.workers, [&](std::size_t i) {
            const auto s = sample_stable_path(p, cfg.epsilon, cfg.sampler, block(14) + i);
            for (double t : grid) paths[i].push_back(s.centered(t));
        });
        emit(&os, {{"record", "meta"}, {"kind", "sample-limit"}, {"model", to_json(p)}, {"process", "stable"},
                   {"epsilon", cfg.epsilon}, {"seed", cfg.sampler.master_seed}});
    }
    for (double t : cfg.eval_times) {
        const auto k = index_of(grid, t);
        std::vector<double> v;
        for (const auto& x : paths) v.push_back(x[k]);
        emit(&os, {{"record", "marginal"}, {"t", t}, {"summary", to_json(summarize(v))}});
    }
    if (cfg.write_paths) {
        const auto dir = std::filesystem::path(cfg.out_dir) / "paths";
        std::filesystem::create_directories(dir);
        for (std::size_t r = 0; r < paths.size(); ++r) {
            std::ofstream f(dir / ("limit_" + std::to_string(r) + ".csv"));
            if (!f) throw std::runtime_error("cannot write path file in " + dir.string());
            f << "t,value\n";
            for (std::size_t k = 0; k < grid.size(); ++k) f << fmt17(grid[k]) << ',' << fmt17(paths[r][k]) << '\n';
        }
    }
}

void run_experiment(const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    const auto file = std::filesystem::path(cfg.out_dir) / (cfg.kind + ".jsonl");
    std::ofstream os(file);
    if (!os) throw std::runtime_error("cannot write " + file.string());
    if (cfg.kind == "simulate")
        run_simulate(cfg, &os);
    else if (cfg.kind == "validate-gaussian")
        run_validate_gaussian(cfg, &os);
    else if (cfg.kind == "validate-stable")
        run_validate_stable(cfg, &os);
    else if (cfg.kind == "validate-marks")
        run_validate_marks(cfg, &os);
    else if (cfg.kind == "oracle-report")
        run_oracle_report(cfg, os);
    else if (cfg.kind == "sample-limit")
        run_sample_limit(cfg, os);
    else
        throw ConfigError("unknown experiment kind " + cfg.kind);
}

}  // namespace drchm
