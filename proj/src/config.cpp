#include "drchm/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace drchm {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
void get(const json& j, const char* key, T& dst) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

}  // namespace

ExperimentConfig default_config(const std::string& kind) {
    ExperimentConfig c;
    c.kind = kind;
    c.sampler.auto_w_min = true;
    if (kind == "validate-stable") {
        c.model = ModelParams(0.25, 0.7, 0.2, 500.0);
        c.eval_times = {0.5, 1.0};
        c.n_ladder = {200.0, 2000.0};
    } else {
        c.model = ModelParams(0.25, 0.2, 0.2, 100.0);
        if (kind == "validate-gaussian") c.n_ladder = {100.0, 400.0};
    }
    return c;
}

ExperimentConfig parse_config(const std::string& text, const std::string& kind) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig c = default_config(kind);
    if (j.is_null()) return c;
    only_keys(j, "config", {"model", "sampler", "experiment", "quadrature", "seed", "workers", "out_dir"});
    if (j.contains("model")) {
        const auto& m = j["model"];
        only_keys(m, "model", {"beta", "gamma", "gamma_prime", "n"});
        get(m, "beta", c.model.beta);
        get(m, "gamma", c.model.gamma);
        get(m, "gamma_prime", c.model.gamma_prime);
        get(m, "n", c.model.n);
    }
    if (j.contains("sampler")) {
        const auto& s = j["sampler"];
        only_keys(s, "sampler", {"w_min", "missed_edge_tolerance", "band_ratio", "auto_w_min"});
        get(s, "w_min", c.sampler.w_min);
        get(s, "missed_edge_tolerance", c.sampler.missed_edge_tolerance);
        get(s, "band_ratio", c.sampler.band_ratio);
        get(s, "auto_w_min", c.sampler.auto_w_min);
    }
    if (j.contains("quadrature")) {
        const auto& q = j["quadrature"];
        only_keys(q, "quadrature", {"rel_tolerance", "max_subdivisions"});
        get(q, "rel_tolerance", c.quad.rel_tolerance);
        get(q, "max_subdivisions", c.quad.max_subdivisions);
    }
    if (j.contains("experiment")) {
        const auto& e = j["experiment"];
        only_keys(e, "experiment",
                  {"replicates", "eval_times", "write_paths", "lag_base", "lags", "n_ladder", "batches",
                   "epsilon", "eps_sequence", "limit_replicates", "hill_k", "jump_sample_size",
                   "mark_exponent"});
        get(e, "replicates", c.replicates);
        get(e, "eval_times", c.eval_times);
        get(e, "write_paths", c.write_paths);
        get(e, "lag_base", c.lag_base);
        get(e, "lags", c.lags);
        get(e, "n_ladder", c.n_ladder);
        get(e, "batches", c.batches);
        get(e, "epsilon", c.epsilon);
        get(e, "eps_sequence", c.eps_sequence);
        get(e, "limit_replicates", c.limit_replicates);
        get(e, "hill_k", c.hill_k);
        get(e, "jump_sample_size", c.jump_sample_size);
        get(e, "mark_exponent", c.mark_exponent);
    }
    if (j.contains("seed")) {
        std::uint64_t s = 0;
        get(j, "seed", s);
        c.sampler.master_seed = s;
    }
    get(j, "workers", c.workers);
    get(j, "out_dir", c.out_dir);
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path, const std::string& kind) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), kind);
}

void validate(const ExperimentConfig& c) {
    try {
        validate(c.model);
        validate(c.sampler);
    } catch (const RegimeError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (c.replicates < 1) throw ConfigError("replicates must be >= 1");
    if (c.workers < 1) throw ConfigError("workers must be >= 1");
    if (!std::is_sorted(c.eval_times.begin(), c.eval_times.end())) throw ConfigError("eval_times must be sorted");
    for (double t : c.eval_times)
        if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("eval_times must lie in [0,1]");
    for (double h : c.lags)
        if (!(h >= 0.0 && c.lag_base + h <= 1.0)) throw ConfigError("lag_base + lag must lie in [0,1]");
    if (!(c.quad.rel_tolerance > 0.0)) throw ConfigError("rel_tolerance must be positive");
    if (c.batches < 1 || c.limit_replicates < 1) throw ConfigError("batches and limit_replicates must be >= 1");
    if (!(c.epsilon > 0.0 && c.epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0,1]");
}

}  // namespace drchm
