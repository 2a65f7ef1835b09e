// End-to-end acceptance run: one PASS/FAIL line per criterion.
//
//   kolmo_acceptance --cli PATH [--workers N] [--only K]...

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "families.hpp"
#include "kolmo/diagnostics.hpp"
#include "kolmo/exact.hpp"
#include "kolmo/integrator.hpp"
#include "kolmo/io.hpp"
#include "kolmo/spectral.hpp"
#include "oracles.hpp"

using namespace kolmo;
namespace fs = std::filesystem;
using io::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string cli_path;
int workers = 1;
fs::path work;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = cli_path + " --workers " + std::to_string(workers) + " " + args + " >" + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

json read_json(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
}

fs::path config(const std::string& rel) { return fs::path(KOLMO_SOURCE_DIR) / "configs" / rel; }

TorusConfig grid(double alpha, int nx, int ny) {
    TorusConfig c;
    c.alpha = alpha;
    c.nx = nx;
    c.ny = ny;
    return c;
}

// 1 ---------------------------------------------------------------------------

Outcome exact_suite() {
    Outcome o{true, ""};
    for (const auto& [name, spec] : cases::oracle_suite(0.01)) {
        const auto t0 = std::chrono::steady_clock::now();
        const TorusConfig g = spec.default_grid();
        double worst = 0.0;
        StepperConfig s;
        s.dt = 0.01;
        s.t_end = 50.0;
        s.sample_every = 1 << 30;
        integrate({Variant::NonlinearNS, 1, spec.forcing(), spec.nu}, eval(spec, 0.0, g), s, {},
                  [&](double t, const SpectralField& w) {
                      const SpectralField exact = eval(spec, t, g);
                      worst = std::max(worst, l2_norm(w - exact) / l2_norm(exact));
                  });
        const double secs = seconds_since(t0);
        const bool ok = worst < 1e-6 && secs < 30.0;
        o.pass = o.pass && ok;
        o.detail += name + " " + fmt(worst) + " in " + fmt(secs) + "s; ";
    }
    return o;
}

// 2 ---------------------------------------------------------------------------

Outcome rate_recovery() {
    const auto t0 = std::chrono::steady_clock::now();
    struct Case {
        const char* name;
        ExactSpec spec;
        double expect;
    };
    const std::vector<Case> cs{{"bar_flow", cases::bar_flow(), 0.1},
                               {"resonant3", cases::resonant3(), 0.09},
                               {"resonant4", cases::resonant4(), 0.25}};
    Outcome o{true, ""};
    for (const auto& c : cs) {
        const TorusConfig g = c.spec.default_grid(64, 64);
        StepperConfig s;
        s.dt = 0.01;
        s.t_end = 50.0;
        s.sample_every = 1 << 30;
        const auto traj = integrate({Variant::NonlinearNS, 1, c.spec.forcing(), c.spec.nu}, eval(c.spec, 0.0, g), s);
        const auto fit = fit_decay_rate(traj.tracks.t, traj.tracks.l2, 40.0, 50.0, c.name);
        const double rel = std::abs(fit.rate / c.expect - 1.0);
        o.pass = o.pass && rel < 1e-3;
        o.detail += std::string(c.name) + " rate " + fmt(fit.rate) + " (rel " + fmt(rel) + "); ";
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < 60.0;
    o.detail += "total " + fmt(secs) + "s";
    return o;
}

// 3 ---------------------------------------------------------------------------

Outcome counterexample() {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{true, ""};
    const double predicted = std::exp(-5.0);
    for (double nu : {1e-2, 1e-3}) {
        const auto r = counterexample_check(1.0, {4, 1}, 1.0, nu, grid(2.0, 32, 32));
        const double rel = std::abs(r.measured_ratio / predicted - 1.0);
        const double hyp = std::abs(r.initial_perp_k_norm - nu) / nu;
        const bool ok = rel < 1e-6 && hyp < 1e-12 && r.checks.hypothesis_holds && r.checks.projection_invariant &&
                        r.checks.improvement_fails;
        o.pass = o.pass && ok;
        o.detail += "nu=" + fmt(nu) + " ratio rel err " + fmt(rel) + ", hypothesis err " + fmt(hyp) + ", improvement fails " +
                    (r.checks.improvement_fails ? "yes" : "no") + "; ";
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < 120.0;
    o.detail += fmt(secs) + "s";
    return o;
}

// 4, 5 ------------------------------------------------------------------------

Outcome sweep_configs(const std::vector<std::string>& names) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{true, ""};
    for (const auto& name : names) {
        const fs::path out = work / name;
        const int code = run_cli("--config " + config(name + ".json").string() + " --out " + out.string() + " sweep",
                                 work / (name + ".log"));
        if (code != 0 && code != 4) {
            o.pass = false;
            o.detail += name + " exit " + std::to_string(code) + "; ";
            continue;
        }
        const json r = read_json(out / "report.json");
        const auto ratios = r.at("ratios").get<std::vector<double>>();
        const double delta = r.at("delta").get<double>();
        bool decreasing = true;
        for (std::size_t i = 1; i < ratios.size(); ++i) decreasing = decreasing && ratios[i] < ratios[i - 1];
        const bool ok = code == 0 && decreasing && ratios.back() < delta;
        o.pass = o.pass && ok;
        o.detail += name + " r =";
        for (double x : ratios) o.detail += " " + fmt(x);
        o.detail += "; ";
    }
    const double secs = seconds_since(t0);
    o.pass = o.pass && secs < 600.0;
    o.detail += fmt(secs) + "s";
    return o;
}

// 6 ---------------------------------------------------------------------------

Outcome enstrophy_bound() {
    const auto t0 = std::chrono::steady_clock::now();
    const double nu = 0.01;
    double worst = 0.0;
    for (double alpha : {1.0, 2.0}) {
        const TorusConfig g = grid(alpha, 32, 32);
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            StepperConfig s;
            s.dt = 0.01;
            s.t_end = 20.0;
            s.sample_every = 1 << 30;
            const auto traj = integrate({Variant::NonlinearNS, 1, 0, nu}, random_band_limited(g, seed), s);
            const double w0 = traj.tracks.l2.front();
            for (std::size_t i = 0; i < traj.tracks.size(); ++i)
                worst = std::max(worst, traj.tracks.l2[i] * std::exp(nu * traj.tracks.t[i]) / w0 - 1.0);
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-8 && secs < 120.0, "max excess " + fmt(worst) + " over 40 runs, " + fmt(secs) + "s"};
}

// 7 ---------------------------------------------------------------------------

Outcome conservation() {
    const auto t0 = std::chrono::steady_clock::now();
    double drift = 0.0;
    for (int a : {0, 1}) {
        const TorusConfig g = grid(2.0, 16, 512);
        StepperConfig s;
        s.dt = 0.005;
        s.t_end = 100.0;
        s.sample_every = 1 << 30;
        const auto traj = integrate({Variant::LinearizedEuler, 1, a, 0.0}, random_band_limited(g, 11 + a), s);
        const double x0 = traj.tracks.x_sq.front();
        for (double x : traj.tracks.x_sq) drift = std::max(drift, std::abs(std::sqrt(x / x0) - 1.0));
    }
    double residual = 0.0;
    for (int a : {0, 1}) {
        const TorusConfig g = grid(2.0, 32, 32);
        StepperConfig s;
        s.dt = 0.005;
        s.t_end = 5.0;
        s.sample_every = 1 << 30;
        const auto traj = integrate({Variant::Perturbed, 1, a, 0.01}, random_band_limited(g, 21 + a), s);
        residual = std::max(residual, energy_identity_residual(traj, 0.01));
    }
    const double secs = seconds_since(t0);
    return {drift < 1e-6 && residual < 1e-6 && secs < 60.0,
            "X-norm drift " + fmt(drift) + ", energy residual " + fmt(residual) + ", " + fmt(secs) + "s"};
}

// 8 ---------------------------------------------------------------------------

Outcome jacobian_oracle() {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> pick(0, 2);
    const std::vector<TorusConfig> grids{grid(1.0, 32, 32), grid(2.0, 32, 48), grid(std::sqrt(0.75), 48, 32)};
    double worst = 0.0;
    for (int draw = 0; draw < 100; ++draw) {
        const TorusConfig& g = grids[static_cast<std::size_t>(pick(rng))];
        const SpectralField p = oracle::random_box(g, 4, rng);
        const SpectralField q = oracle::random_box(g, 4, rng);
        const SpectralField diff = jacobian(p, q) - oracle::convolution_jacobian(p, q);
        worst = std::max(worst, diff.max_abs());
    }
    return {worst < 1e-12, "max coefficient error " + fmt(worst) + " over 100 draws"};
}

// 9 ---------------------------------------------------------------------------

Outcome snapshot_data() {
    Outcome o{true, ""};
    for (const char* name : {"low_mode_transition", "bar_flow", "resonant3", "resonant4"}) {
        const fs::path cfg = config(std::string("snapshots/") + name + ".json");
        const fs::path out = work / name;
        const int code = run_cli("--config " + cfg.string() + " --out " + out.string() + " simulate",
                                 work / (std::string(name) + ".log"));
        if (code != 0) {
            o.pass = false;
            o.detail += std::string(name) + " exit " + std::to_string(code) + "; ";
            continue;
        }
        const json c = read_json(cfg);
        const ExactSpec spec = io::exact_spec_from_json(c.at("initial").at("spec"));
        const TorusConfig g = spec.default_grid();
        double worst = 0.0;
        for (double t : c.at("snapshots").get<std::vector<double>>()) {
            char buf[40];
            const auto res = std::to_chars(buf, buf + sizeof buf, t);
            const fs::path csv = out / "fields" / ("t_" + std::string(buf, res.ptr) + ".csv");
            const PhysicalField f = io::read_field_csv(csv, g);
            for (int i = 0; i < g.nx; ++i)
                for (int k = 0; k < g.ny; ++k)
                    worst = std::max(worst, std::abs(f(i, k) - sample(spec, t, f.x(i), f.y(k))));
        }
        o.pass = o.pass && worst < 1e-12;
        o.detail += std::string(name) + " " + fmt(worst) + "; ";
    }
    return o;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kolmo acceptance"};
    std::vector<int> only;
    app.add_option("--cli", cli_path, "kolmo executable")->required();
    app.add_option("--workers", workers);
    app.add_option("--only", only, "Run only these criteria");
    CLI11_PARSE(app, argc, argv);

    work = fs::temp_directory_path() / "kolmo_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"exact-solution oracle suite", exact_suite},
        {"decay rate recovery", rate_recovery},
        {"counterexample certification", counterexample},
        {"linearized enhanced damping trend", [] { return sweep_configs({"sweep_linearized_a0", "sweep_linearized_a1"}); }},
        {"perturbed enhanced damping trend", [] { return sweep_configs({"sweep_perturbed_a0", "sweep_perturbed_a1"}); }},
        {"enstrophy bound", enstrophy_bound},
        {"conservation and energy identity", conservation},
        {"jacobian oracle", jacobian_oracle},
        {"snapshot data", snapshot_data},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
                  << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
