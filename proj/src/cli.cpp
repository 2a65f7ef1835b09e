#include "kolmo/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "kolmo/diagnostics.hpp"
#include "kolmo/errors.hpp"
#include "kolmo/exact.hpp"
#include "kolmo/integrator.hpp"
#include "kolmo/io.hpp"
#include "kolmo/spectral.hpp"
#include "kolmo/version.hpp"

namespace kolmo::cli {

namespace fs = std::filesystem;
using io::ConfigSource;
using io::json;

namespace {

constexpr int kSchemaVersion = 1;

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

// Runs fn and re-raises any validation failure as a ConfigError anchored at `section`.
template <class Fn>
auto within(const ConfigSource& src, const std::string& section, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const NonFiniteError&) {
        throw;
    } catch (const io::ConfigError&) {
        throw;
    } catch (const Error& e) {
        std::string what = e.what();
        const std::string prefix = std::string(to_string(e.kind())) + ": ";
        if (what.starts_with(prefix)) what.erase(0, prefix.size());
        const auto sp = what.find(' ');
        const std::string leaf = what.substr(0, sp);
        const bool names_field = leaf.find_first_not_of("abcdefghijklmnopqrstuvwxyz_0123456789") == std::string::npos;
        src.fail(names_field ? section + "." + leaf : section, what);
    } catch (const json::exception& e) {
        src.fail(section, e.what());
    }
}

void check_schema(const ConfigSource& src) {
    const auto& root = src.root();
    if (!root.contains("schema_version")) src.fail("schema_version", "missing");
    if (!root.at("schema_version").is_number_integer() || root.at("schema_version").get<int>() != kSchemaVersion)
        src.fail("schema_version", "expected " + std::to_string(kSchemaVersion));
}

struct Output {
    fs::path dir;
    std::vector<fs::path> files;

    fs::path add(const fs::path& rel) {
        files.push_back(rel);
        const fs::path full = dir / rel;
        fs::create_directories(full.parent_path());
        return full;
    }
};

void finish(const Output& out, const std::string& command, const std::string& digest, std::uint64_t seed,
            const std::string& started) {
    io::RunManifest m;
    m.command = command;
    m.config_digest = digest;
    m.seed = seed;
    m.tool_version = std::string(kVersion);
    m.start_time = started;
    m.end_time = io::utc_now();
    m.outputs = out.files;
    m.write(out.dir);
}

ExactSpec exact_from(const ConfigSource& src, const json& j, const std::string& section) {
    const ExactSpec spec = within(src, section, [&] { return io::exact_spec_from_json(j); });
    const auto violations = validate(spec);
    if (!violations.empty()) {
        std::string why;
        for (const auto& v : violations) why += (why.empty() ? "" : "; ") + v.condition + ": " + v.detail;
        src.fail(section, why);
    }
    return spec;
}

// Initial vorticity from {"kind": "exact" | "coefficients" | "random" | "field_csv", ...}.
SpectralField initial_field(const ConfigSource& src, const json& j, const TorusConfig& grid, const Options& opt,
                            std::uint64_t& seed_used) {
    const std::string kind = within(src, "initial", [&] { return j.at("kind").get<std::string>(); });
    if (kind == "exact") {
        const ExactSpec spec = exact_from(src, j.at("spec"), "initial.spec");
        return within(src, "initial.spec", [&] { return eval(spec, get_or(j, "t", 0.0), grid); });
    }
    if (kind == "coefficients") {
        return within(src, "initial.modes", [&] {
            SpectralField w(grid);
            for (const auto& mode : j.at("modes")) {
                const int mj = mode.at("j").get<int>();
                const int mm = mode.at("m").get<int>();
                if (mj == 0 && mm == 0) throw Error(ErrorKind::MeanNotZero, "modes may not include (0, 0)");
                if (!w.representable(mj, mm))
                    throw Error(ErrorKind::InvalidArgument, "modes (" + std::to_string(mj) + ", " + std::to_string(mm) +
                                                                ") is not representable on the grid");
                w.add_mode(mj, mm, {get_or(mode, "re", 0.0), get_or(mode, "im", 0.0)});
            }
            return w;
        });
    }
    if (kind == "random") {
        return within(src, "initial", [&] {
            seed_used = opt.seed ? *opt.seed : get_or<std::uint64_t>(j, "seed", 1);
            SpectralField w = random_band_limited(grid, seed_used, get_or<std::uint64_t>(j, "stream", 0),
                                                  get_or(j, "k2_min", 0.0), get_or(j, "k2_max", 16.0));
            w *= get_or(j, "l2", 1.0);
            return w;
        });
    }
    if (kind == "field_csv") {
        return within(src, "initial.path", [&] {
            fs::path p = j.at("path").get<std::string>();
            if (p.is_relative()) p = fs::path(src.name()).parent_path() / p;
            return to_spectral(io::read_field_csv(p, grid), opt.strict);
        });
    }
    src.fail("initial.kind", "unknown kind '" + kind + "'");
}

TorusConfig grid_from(const ConfigSource& src, const json& root, const TorusConfig& defaults) {
    if (!root.contains("grid")) return defaults;
    return within(src, "grid", [&] { return io::torus_from_json(root.at("grid"), defaults); });
}

ModelSpec model_from(const ConfigSource& src, const json& root, json defaults) {
    if (root.contains("model")) defaults.update(root.at("model"));
    return within(src, "model", [&] { return io::model_from_json(defaults); });
}

std::string digest_of(const ConfigSource& src) { return io::sha256_hex(src.text()); }

int report_failure(const std::string& msg, int code) {
    std::cerr << "kolmo: " << msg << '\n';
    return code;
}

template <class Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const io::ConfigError& e) {
        return report_failure(e.what(), kConfigError);
    } catch (const NonFiniteError& e) {
        return report_failure(std::string(e.what()) + " (t = " + io::format_double(e.time()) + ")", kNonFinite);
    } catch (const Error& e) {
        return report_failure(e.what(), kConfigError);
    } catch (const json::exception& e) {
        return report_failure(e.what(), kConfigError);
    } catch (const fs::filesystem_error& e) {
        return report_failure(e.what(), kConfigError);
    }
}

void require_config(const Options& opt, const char* command) {
    if (opt.config.empty()) throw io::ConfigError(std::string(command) + ": --config is required");
}

} // namespace

fs::path output_dir(const Options& opt, const std::string& command) {
    fs::path dir;
    if (!opt.out.empty()) dir = opt.out;
    else if (const char* env = std::getenv("KOLMO_OUT_DIR"); env && *env) dir = fs::path(env) / command;
    else dir = fs::path("kolmo_out") / command;
    fs::create_directories(dir);
    return dir;
}

std::string snapshot_name(double t) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, t);
    return std::string("t_") + std::string(buf, res.ptr) + ".csv";
}

// simulate ---------------------------------------------------------------------

int cmd_simulate(const Options& opt) {
    return guarded([&] {
        require_config(opt, "simulate");
        const std::string started = io::utc_now();
        const ConfigSource src = ConfigSource::from_file(opt.config);
        check_schema(src);
        const json& root = src.root();
        if (!root.contains("initial")) src.fail("initial", "missing");
        const json& init = root.at("initial");

        TorusConfig grid_defaults;
        json model_defaults{{"variant", "nonlinear_ns"}};
        if (get_or<std::string>(init, "kind", "") == "exact" && init.contains("spec")) {
            const ExactSpec spec = exact_from(src, init.at("spec"), "initial.spec");
            grid_defaults = spec.default_grid();
            model_defaults["a"] = spec.forcing();
            model_defaults["nu"] = spec.nu;
        }
        const TorusConfig grid = grid_from(src, root, grid_defaults);
        const ModelSpec model = model_from(src, root, model_defaults);

        std::uint64_t seed = 0;
        const SpectralField w0 = initial_field(src, init, grid, opt, seed);

        if (!root.contains("stepper")) src.fail("stepper", "missing");
        json sj = root.at("stepper");
        if (!sj.contains("dt")) sj["dt"] = choose_dt(model, w0, get_or(sj, "cfl_safety", 0.5));
        // states are not exported; keep only the endpoints unless asked
        if (!sj.contains("sample_every")) sj["sample_every"] = std::numeric_limits<int>::max();
        const StepperConfig stepper = within(src, "stepper", [&] { return io::stepper_from_json(sj); });

        std::vector<double> snaps;
        if (root.contains("snapshots"))
            snaps = within(src, "snapshots", [&] {
                auto v = root.at("snapshots").get<std::vector<double>>();
                for (double t : v)
                    if (t < 0.0 || t > stepper.t_end)
                        throw Error(ErrorKind::InvalidArgument, "snapshots must lie in [0, t_end]");
                return v;
            });

        const Trajectory traj = integrate(model, w0, stepper, snaps);

        Output out{output_dir(opt, "simulate"), {}};
        io::write_tracks_csv(out.add("timeseries.csv"), traj.tracks);
        for (std::size_t i = 0; i < snaps.size(); ++i)
            io::write_field_csv(out.add(fs::path("fields") / snapshot_name(snaps[i])), to_physical(traj.captures[i]));
        finish(out, "simulate", digest_of(src), seed, started);

        const auto n = traj.tracks.size();
        std::cout << "simulate: " << n - 1 << " steps to t = " << io::format_double(traj.tracks.t.back())
                  << ", final l2 = " << io::format_double(traj.tracks.l2.back()) << ", output " << out.dir.string()
                  << '\n';
        return static_cast<int>(kOk);
    });
}

// verify-exact -----------------------------------------------------------------

int cmd_verify_exact(const Options& opt, std::optional<double> t_end) {
    return guarded([&] {
        require_config(opt, "verify-exact");
        const std::string started = io::utc_now();
        const ConfigSource src = ConfigSource::from_file(opt.config);
        const json& root = src.root();
        const bool nested = root.contains("spec");
        const ExactSpec spec = exact_from(src, nested ? root.at("spec") : root, nested ? "spec" : "family");
        const TorusConfig grid = grid_from(src, root, spec.default_grid());

        const double horizon = t_end ? *t_end : get_or(root, "t_end", 50.0);
        const double dt = get_or(root, "dt", 0.01);
        const double tol_error = get_or(root, "tolerance", 1e-6);
        const double tol_stationary = get_or(root, "stationarity_tolerance", 1e-10);

        const ModelSpec model{Variant::NonlinearNS, 1, spec.forcing(), spec.nu};
        StepperConfig stepper;
        stepper.dt = dt;
        stepper.t_end = horizon;
        stepper.sample_every = std::max(1, static_cast<int>(std::lround(1.0 / dt)));
        within(src, "t_end", [&] {
            stepper.validate();
            return 0;
        });

        const SpectralField w0 = within(src, "grid", [&] { return eval(spec, 0.0, grid); });
        const Trajectory traj = integrate(model, w0, stepper);

        double max_err = 0.0;
        std::vector<double> errs;
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            const SpectralField exact = eval(spec, traj.times[i], grid);
            const double e = l2_norm(traj.states[i] - exact) / l2_norm(exact);
            errs.push_back(e);
            max_err = std::max(max_err, e);
        }
        const double stationarity = euler_stationarity_residual(spec, 0.0, grid);
        const bool ok = max_err < tol_error && stationarity < tol_stationary;

        Output out{output_dir(opt, "verify-exact"), {}};
        io::write_json(out.add("report.json"), {{"spec", io::to_json(spec)},
                                                {"grid", io::to_json(grid)},
                                                {"dt", dt},
                                                {"t_end", horizon},
                                                {"times", traj.times},
                                                {"relative_errors", errs},
                                                {"max_relative_error", max_err},
                                                {"stationarity_residual", stationarity},
                                                {"tolerance", tol_error},
                                                {"stationarity_tolerance", tol_stationary},
                                                {"passed", ok}});
        io::write_tracks_csv(out.add("timeseries.csv"), traj.tracks);
        finish(out, "verify-exact", digest_of(src), 0, started);

        std::cout << "verify-exact " << spec.tag() << ": max relative L2 error " << io::format_double(max_err)
                  << " (tol " << tol_error << "), stationarity residual " << io::format_double(stationarity)
                  << " (tol " << tol_stationary << ") -> " << (ok ? "PASS" : "FAIL") << '\n';
        return static_cast<int>(ok ? kOk : kToleranceFailure);
    });
}

// sweep ----------------------------------------------------------------------

int cmd_sweep(const Options& opt) {
    return guarded([&] {
        require_config(opt, "sweep");
        const std::string started = io::utc_now();
        const ConfigSource src = ConfigSource::from_file(opt.config);
        check_schema(src);
        const json& root = src.root();

        SweepConfig cfg;
        cfg.model = model_from(src, root, {{"variant", "linearized_combined"}});
        within(src, "sweep", [&] {
            cfg.alpha = root.contains("alpha_sq") ? io::alpha_sq_from_json(root).alpha() : get_or(root, "alpha", 2.0);
            cfg.tau = get_or(root, "tau", 1.0);
            cfg.delta = get_or(root, "delta", 0.5);
            cfg.nus = root.at("nus").get<std::vector<double>>();
            cfg.seed = opt.seed ? *opt.seed : get_or<std::uint64_t>(root, "seed", 1);
            cfg.k2_max = get_or(root, "k2_max", 16.0);
            cfg.dt = get_or(root, "dt", 0.01);
            const std::string rule = get_or<std::string>(root, "amplitude", "unit");
            if (rule != "unit" && rule != "nu") throw Error(ErrorKind::InvalidArgument, "amplitude must be \"unit\" or \"nu\"");
            cfg.amplitude = rule == "nu" ? AmplitudeRule::MatchNu : AmplitudeRule::UnitL2;
            return 0;
        });
        if (root.contains("grid")) {
            const auto& g = root.at("grid");
            cfg.nx = get_or(g, "nx", cfg.nx);
            cfg.ny = get_or(g, "ny", cfg.ny);
        }
        cfg.workers = opt.workers;
        cfg.keep_tracks = true;
        if (root.contains("initial")) {
            TorusConfig grid;
            grid.alpha = cfg.alpha;
            grid.nx = cfg.nx;
            grid.ny = cfg.ny;
            std::uint64_t unused = 0;
            cfg.initial = initial_field(src, root.at("initial"), grid, opt, unused);
        }

        const SweepReport report = within(src, "sweep", [&] { return enhanced_damping_sweep(cfg); });

        Output out{output_dir(opt, "sweep"), {}};
        io::write_json(out.add("report.json"), io::to_json(report));
        for (std::size_t i = 0; i < report.runs.size(); ++i) {
            char name[64];
            std::snprintf(name, sizeof name, "run_%02zu_nu_%.6g.csv", i, report.runs[i].nu);
            io::write_tracks_csv(out.add(fs::path("runs") / name), report.runs[i].tracks);
        }
        finish(out, "sweep", digest_of(src), cfg.seed, started);

        const bool ok = report.monotone && report.below_delta;
        std::cout << "sweep " << to_string(cfg.model.variant) << " a=" << cfg.model.a << ":";
        for (std::size_t i = 0; i < report.nus.size(); ++i)
            std::cout << " r(" << report.nus[i] << ")=" << io::format_double(report.ratios[i]);
        std::cout << "; monotone " << (report.monotone ? "yes" : "no") << ", below delta "
                  << (report.below_delta ? "yes" : "no") << '\n';
        return static_cast<int>(ok ? kOk : kToleranceFailure);
    });
}

// counterexample ---------------------------------------------------------------

int cmd_counterexample(const Options& opt, const CounterexampleArgs& args) {
    return guarded([&] {
        const std::string started = io::utc_now();
        const AlphaSq alpha_sq = AlphaSq::from_alpha(args.alpha);
        TorusConfig grid;
        grid.alpha = alpha_sq.alpha();
        grid.nx = args.nx;
        grid.ny = args.ny;
        grid.validate();

        json runs = json::array();
        bool ok = true;
        for (double nu : args.nus) {
            const CounterexampleReport r = counterexample_check(args.d, alpha_sq, args.tau, nu, grid, args.dt);
            runs.push_back(io::to_json(r));
            ok = ok && r.passed();
            std::cout << "counterexample alpha=" << args.alpha << " nu=" << nu << ": measured "
                      << io::format_double(r.measured_ratio) << ", predicted " << io::format_double(r.predicted_ratio)
                      << ", delta " << io::format_double(r.delta) << " -> " << (r.passed() ? "PASS" : "FAIL") << '\n';
        }
        const json params{{"d", args.d},   {"alpha", args.alpha}, {"tau", args.tau}, {"nus", args.nus},
                          {"nx", args.nx}, {"ny", args.ny},       {"dt", args.dt}};

        Output out{output_dir(opt, "counterexample"), {}};
        io::write_json(out.add("report.json"), {{"parameters", params}, {"runs", runs}, {"passed", ok}});
        finish(out, "counterexample", io::sha256_hex(params.dump()), 0, started);
        return static_cast<int>(ok ? kOk : kToleranceFailure);
    });
}

// rage -----------------------------------------------------------------------

int cmd_rage(const Options& opt, RageArgs args) {
    return guarded([&] {
        const std::string started = io::utc_now();
        std::optional<ConfigSource> src;
        std::string digest;
        std::uint64_t seed = opt.seed.value_or(1);
        if (!opt.config.empty()) {
            src.emplace(ConfigSource::from_file(opt.config));
            check_schema(*src);
            const json& root = src->root();
            within(*src, "rage", [&] {
                args.alpha = get_or(root, "alpha", args.alpha);
                args.a = get_or(root, "a", args.a);
                args.lambda_cut = get_or(root, "lambda_cut", args.lambda_cut);
                if (root.contains("T")) args.horizons = root.at("T").get<std::vector<double>>();
                args.dt = get_or(root, "dt", args.dt);
                if (root.contains("grid")) {
                    args.nx = get_or(root.at("grid"), "nx", args.nx);
                    args.ny = get_or(root.at("grid"), "ny", args.ny);
                }
                return 0;
            });
            digest = digest_of(*src);
        }
        TorusConfig grid;
        grid.alpha = args.alpha;
        grid.nx = args.nx;
        grid.ny = args.ny;
        grid.validate();

        SpectralField w0;
        if (src && src->root().contains("initial")) {
            w0 = initial_field(*src, src->root().at("initial"), grid, opt, seed);
        } else {
            w0 = random_band_limited(grid, seed, 0, args.k2_min, args.k2_max);
        }

        const json params{{"alpha", args.alpha}, {"a", args.a},   {"lambda_cut", args.lambda_cut},
                          {"T", args.horizons},  {"nx", args.nx}, {"ny", args.ny},
                          {"dt", args.dt},       {"k2_min", args.k2_min}, {"k2_max", args.k2_max}};
        if (digest.empty()) digest = io::sha256_hex(params.dump());

        std::vector<double> averages;
        for (double T : args.horizons) {
            averages.push_back(rage_time_average(w0, args.lambda_cut, T, args.a, args.dt));
            std::cout << "rage T=" << T << ": " << io::format_double(averages.back()) << '\n';
        }
        bool nonincreasing = true;
        for (std::size_t i = 1; i < averages.size(); ++i) nonincreasing = nonincreasing && averages[i] <= averages[i - 1];

        Output out{output_dir(opt, "rage"), {}};
        io::write_json(out.add("report.json"), {{"parameters", params},
                                                {"seed", seed},
                                                {"T", args.horizons},
                                                {"averages", averages},
                                                {"nonincreasing", nonincreasing}});
        finish(out, "rage", digest, seed, started);
        return static_cast<int>(kOk);
    });
}

// export ---------------------------------------------------------------------

int cmd_export(const Options& opt) {
    return guarded([&] {
        require_config(opt, "export");
        const std::string started = io::utc_now();
        const ConfigSource src = ConfigSource::from_file(opt.config);
        const json& root = src.root();
        const bool nested = root.contains("spec");
        const ExactSpec spec = exact_from(src, nested ? root.at("spec") : root, nested ? "spec" : "family");
        const TorusConfig grid = grid_from(src, root, spec.default_grid());
        const auto times = within(src, "times", [&] { return get_or(root, "times", std::vector<double>{0.0}); });

        Output out{output_dir(opt, "export"), {}};
        for (double t : times) {
            const SpectralField w = within(src, "grid", [&] { return eval(spec, t, grid); });
            io::write_field_csv(out.add(fs::path("fields") / snapshot_name(t)), to_physical(w));
        }
        finish(out, "export", digest_of(src), 0, started);
        std::cout << "export " << spec.tag() << ": " << times.size() << " snapshots in " << out.dir.string() << '\n';
        return static_cast<int>(kOk);
    });
}

// argv -----------------------------------------------------------------------

int run(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral Kolmogorov-flow simulation and verification", "kolmo"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Options opt;
    std::string config, out;
    std::uint64_t seed = 0;
    app.add_option("--config", config, "Configuration file (JSON)");
    app.add_option("--out", out, "Output directory (default $KOLMO_OUT_DIR/<command>)");
    app.add_option("--workers", opt.workers, "Concurrent sweep jobs")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "Override the configured random seed");
    app.add_flag("--strict", opt.strict, "Reject field data with a nonzero mean");

    auto* simulate = app.add_subcommand("simulate", "Integrate a configured model and export time series");
    auto* verify = app.add_subcommand("verify-exact", "Compare the solver with an exact solution");
    std::optional<double> t_end;
    verify->add_option("--t-end", t_end, "Integration horizon (default 50)");
    auto* sweep = app.add_subcommand("sweep", "Enhanced-damping sweep over viscosities");

    CounterexampleArgs cx;
    auto* counter = app.add_subcommand("counterexample", "Check the single-mode counterexample");
    counter->add_option("--d", cx.d, "Amplitude factor");
    counter->add_option("--alpha", cx.alpha, "Aspect ratio (>= 1)");
    counter->add_option("--tau", cx.tau, "Rescaled time");
    counter->add_option("--nu", cx.nus, "Viscosities")->expected(1, -1);
    counter->add_option("--nx", cx.nx);
    counter->add_option("--ny", cx.ny);
    counter->add_option("--dt", cx.dt);

    RageArgs rg;
    auto* rage = app.add_subcommand("rage", "Low-mode time average along the linearized Euler flow");
    rage->add_option("--alpha", rg.alpha);
    rage->add_option("--a", rg.a);
    rage->add_option("--lambda-cut", rg.lambda_cut);
    rage->add_option("--T", rg.horizons, "Averaging horizons")->expected(1, -1);
    rage->add_option("--k2-min", rg.k2_min);
    rage->add_option("--k2-max", rg.k2_max);
    rage->add_option("--nx", rg.nx);
    rage->add_option("--ny", rg.ny);
    rage->add_option("--dt", rg.dt);

    auto* exporter = app.add_subcommand("export", "Write analytic snapshots of an exact solution");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(kUsage);
    }
    opt.config = config;
    opt.out = out;
    if (seed_opt->count() > 0) opt.seed = seed;

    if (simulate->parsed()) return cmd_simulate(opt);
    if (verify->parsed()) return cmd_verify_exact(opt, t_end);
    if (sweep->parsed()) return cmd_sweep(opt);
    if (counter->parsed()) return cmd_counterexample(opt, cx);
    if (rage->parsed()) return cmd_rage(opt, rg);
    if (exporter->parsed()) return cmd_export(opt);
    return static_cast<int>(kUsage);
}

} // namespace kolmo::cli
