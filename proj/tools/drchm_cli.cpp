#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "drchm/config.hpp"
#include "drchm/experiments.hpp"
#include "drchm/sampler.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Simulator and validation driver for the dynamic random connection hypergraph model"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> out;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed, "master seed (overrides the config)");
    app.add_option("--workers", workers, "worker threads (overrides the config)");
    app.add_option("--out", out, "output directory (overrides the config)");

    for (const char* k : {"simulate", "validate-gaussian", "validate-stable", "validate-marks", "oracle-report",
                          "sample-limit"})
        app.add_subcommand(k, std::string("run the ") + k + " experiment")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string kind = app.get_subcommands().front()->get_name();

    try {
        auto cfg = config_path.empty() ? drchm::parse_config("null", kind) : drchm::load_config(config_path, kind);
        if (seed) cfg.sampler.master_seed = *seed;
        if (workers) cfg.workers = *workers;
        if (out) cfg.out_dir = *out;
        drchm::validate(cfg);
        drchm::run_experiment(cfg);
        std::cout << (std::filesystem::path(cfg.out_dir) / (kind + ".jsonl")).string() << '\n';
    } catch (const drchm::TruncationError& e) {
        std::cerr << "truncation: " << e.what()
                  << "\nhint: lower sampler.w_min, raise sampler.missed_edge_tolerance, or set sampler.auto_w_min\n";
        return 3;
    } catch (const drchm::RegimeError& e) {
        std::cerr << "regime: " << e.what() << '\n';
        return 2;
    } catch (const drchm::ConfigError& e) {
        std::cerr << "config: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
