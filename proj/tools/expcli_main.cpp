#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "skewspec/config.hpp"
#include "skewspec/experiment.hpp"
#include "skewspec/parallel.hpp"
#include "skewspec/types.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    int threads = 0;  // 0 = hardware concurrency
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "experiment config (.toml or .json)")
        ->required();
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--threads", o.threads, "worker threads (0 = auto)");
    cmd->add_option("--seed", o.seed, "override the config seed")
        ->each([&o](const std::string&) { o.seed_set = true; });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"resonance spectra and trapped sets of compact-group skew extensions"};
    app.require_subcommand(1);

    CommonOpts opts;
    CLI::App* c_spectrum = app.add_subcommand("spectrum", "per-block stable resonances");
    CLI::App* c_weyl = app.add_subcommand("weyl", "resonance counting vs neighborhood volume");
    CLI::App* c_trapped = app.add_subcommand("trapped", "trapped-set cloud and projections");
    CLI::App* c_gap = app.add_subcommand("gap", "spectral radius per block");
    CLI::App* c_corr = app.add_subcommand("correlation", "twisted correlation decay");
    CLI::App* c_captive = app.add_subcommand("captive", "captive word counts");
    for (CLI::App* c : {c_spectrum, c_weyl, c_trapped, c_gap, c_corr, c_captive}) {
        add_common(c, opts);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        skewspec::ExperimentConfig cfg = skewspec::load_config(opts.config_path);
        if (opts.seed_set) cfg.seed = opts.seed;
        const int threads = skewspec::resolve_threads(opts.threads);

        if (c_spectrum->parsed()) {
            skewspec::run_spectrum(cfg, opts.out_dir, threads);
        } else if (c_weyl->parsed()) {
            skewspec::run_weyl(cfg, opts.out_dir, threads);
        } else if (c_trapped->parsed()) {
            skewspec::run_trapped(cfg, opts.out_dir, threads);
        } else if (c_gap->parsed()) {
            skewspec::run_gap(cfg, opts.out_dir, threads);
        } else if (c_corr->parsed()) {
            skewspec::run_correlation(cfg, opts.out_dir, threads);
        } else if (c_captive->parsed()) {
            skewspec::run_captive(cfg, opts.out_dir, threads);
        }
        return 0;
    } catch (const skewspec::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const skewspec::NumericError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected failure: %s\n", e.what());
        return 3;
    }
}
