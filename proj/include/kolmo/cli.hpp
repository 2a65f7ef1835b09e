#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace kolmo::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kConfigError = 2,
    kNonFinite = 3,
    kToleranceFailure = 4,
};

struct Options {
    std::filesystem::path config;
    std::filesystem::path out; // empty: $KOLMO_OUT_DIR/<command>, else ./kolmo_out/<command>
    int workers = 1;
    std::optional<std::uint64_t> seed;
    bool strict = false;
};

struct CounterexampleArgs {
    double d = 1.0;
    double alpha = 2.0;
    double tau = 1.0;
    std::vector<double> nus{0.01};
    int nx = 32, ny = 32;
    double dt = 0.01;
};

struct RageArgs {
    double alpha = 2.0;
    int a = 0;
    double lambda_cut = 25.0;
    std::vector<double> horizons{1.0};
    double k2_min = 0.0, k2_max = 16.0;
    int nx = 64, ny = 64;
    double dt = 0.01;
};

int cmd_simulate(const Options& opt);
int cmd_verify_exact(const Options& opt, std::optional<double> t_end = std::nullopt);
int cmd_sweep(const Options& opt);
int cmd_counterexample(const Options& opt, const CounterexampleArgs& args);
int cmd_rage(const Options& opt, RageArgs args);
int cmd_export(const Options& opt);

/// Parses argv and dispatches to a subcommand.
int run(int argc, char** argv);

std::filesystem::path output_dir(const Options& opt, const std::string& command);

/// "t_<time>.csv" with the shortest decimal form of the time.
std::string snapshot_name(double t);

} // namespace kolmo::cli
