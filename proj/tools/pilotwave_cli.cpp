#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pilotwave/outputs.hpp"
#include "pilotwave/scenarios.hpp"

namespace {

constexpr int exit_pass = 0;
constexpr int exit_failed_metric = 1;
constexpr int exit_config_error = 2;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pilotwave::ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_command(const std::string& scenario_name, const std::string& config_path,
                const std::string& out_dir, std::optional<std::uint64_t> seed,
                std::optional<std::uint64_t> trajectories) {
    const auto kind = pilotwave::scenario_from_string(scenario_name);
    if (!kind) {
        std::cerr << "error: unknown scenario '" << scenario_name << "'\n";
        return exit_config_error;
    }

    pilotwave::ScenarioConfig cfg;
    if (!config_path.empty()) {
        cfg = pilotwave::parse_config(read_text_file(config_path), *kind);
    } else {
        cfg = pilotwave::default_config(*kind);
    }
    if (seed) cfg.seed = *seed;
    if (trajectories) cfg.trajectories = *trajectories;
    pilotwave::validate_config(cfg);

    std::cout << "running " << pilotwave::to_string(cfg.scenario) << " (n=" << cfg.n
              << ", trajectories=" << cfg.trajectories << ", seed=" << cfg.seed << ")\n";
    const pilotwave::ScenarioResult result = pilotwave::run_scenario(cfg);
    pilotwave::write_outputs(result, out_dir);

    for (const auto& c : result.checks)
        std::printf("%s %s: %.6g %s %.6g\n", c.passed ? "[PASS]" : "[FAIL]", c.name.c_str(),
                    c.value, c.op.c_str(), c.threshold);
    std::cout << (result.passed ? "all checks passed" : "some checks FAILED") << "; outputs in "
              << out_dir << "\n";
    return result.passed ? exit_pass : exit_failed_metric;
}

int verify_command(const std::string& dir) {
    const auto outcome = pilotwave::verify_output_dir(dir);
    for (const auto& line : outcome.lines) std::cout << line << "\n";
    std::cout << (outcome.ok ? "verification passed" : "verification FAILED") << "\n";
    return outcome.ok ? exit_pass : exit_failed_metric;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pilotwave: pilot-wave dynamics scenarios"};
    app.require_subcommand(1);

    std::string scenario_name, config_path, out_dir, verify_dir;
    std::optional<std::uint64_t> seed, trajectories;

    auto* run = app.add_subcommand("run", "run a scenario and write outputs");
    run->add_option("scenario", scenario_name,
                    "double_slit | spin_measurement | momentum_measurement")
        ->required();
    run->add_option("--config", config_path, "key=value config file");
    run->add_option("--out", out_dir, "output directory")->required();
    run->add_option("--seed", seed, "override master seed");
    run->add_option("--trajectories", trajectories, "override trajectory count");

    auto* verify = app.add_subcommand("verify", "re-check pass/fail flags of a result directory");
    verify->add_option("dir", verify_dir, "directory holding summary.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_config_error;
    }

    try {
        if (run->parsed()) return run_command(scenario_name, config_path, out_dir, seed, trajectories);
        return verify_command(verify_dir);
    } catch (const pilotwave::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
}
