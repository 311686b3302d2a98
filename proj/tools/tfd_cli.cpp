// Command-line front end for the scenario runners.
//
// Usage: tfd_cli <verify-algebra|evolve|propagators|transport|renorm-compare>
//            --config <path> [--out <dir>] [--seed <int>]
//
// The subcommand must match `run.kind` in the config file.  Tolerance knobs
// accept TFD_TOL_* environment overrides, which are applied before the
// config hash is computed, so every emitted file records the effective
// configuration.  Exit codes: 0 success, 2 at least one check failed,
// 3 configuration error, 4 numerical failure.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "tfd/config.hpp"
#include "tfd/emit.hpp"
#include "tfd/errors.hpp"
#include "tfd/scenarios.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string out_dir = "out";
    long long seed = 0;
};

int run(tfd::RunKind kind, const Options& opts) {
    const auto t0 = std::chrono::steady_clock::now();

    tfd::Config cfg = tfd::Config::from_file(opts.config_path);
    const std::string declared = cfg.get_string("run.kind");
    if (tfd::parse_run_kind(declared) != kind)
        throw tfd::ConfigError("config declares run.kind=" + declared +
                               " but the " + tfd::run_kind_name(kind) +
                               " subcommand was invoked");
    cfg.set("run.seed", std::to_string(opts.seed));
    for (const std::string& key : cfg.apply_env_overrides())
        std::printf("override %s=%s\n", key.c_str(),
                    cfg.get_string(key).c_str());

    const tfd::RunSummary summary = tfd::run_scenario(cfg, opts.out_dir);

    for (const tfd::CheckRecord& c : summary.checks)
        std::printf("%-34s %s  residual=%s threshold=%s\n", c.name.c_str(),
                    c.pass() ? "pass" : "FAIL",
                    tfd::format_float(c.residual).c_str(),
                    tfd::format_float(c.threshold).c_str());
    for (const std::string& f : summary.files)
        std::printf("wrote %s/%s\n", opts.out_dir.c_str(), f.c_str());

    const std::chrono::duration<double> wall =
        std::chrono::steady_clock::now() - t0;
    std::printf("config_hash=%s\n", tfd::hash_hex(summary.config_hash).c_str());
    std::printf("wall_time_s=%.3f\n", wall.count());
    return summary.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonequilibrium thermal-field scenario runner"};
    app.require_subcommand(1);

    Options opts;
    const std::pair<const char*, tfd::RunKind> kinds[] = {
        {"verify-algebra", tfd::RunKind::VerifyAlgebra},
        {"evolve", tfd::RunKind::Evolve},
        {"propagators", tfd::RunKind::Propagators},
        {"transport", tfd::RunKind::Transport},
        {"renorm-compare", tfd::RunKind::RenormCompare},
    };
    tfd::RunKind selected = tfd::RunKind::VerifyAlgebra;
    for (const auto& [name, kind] : kinds) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", opts.config_path, "scenario config file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--seed", opts.seed, "recorded run seed");
        sub->callback([&selected, kind] { selected = kind; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return run(selected, opts);
    } catch (const tfd::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 3;
    } catch (const tfd::Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 4;
    }
}
