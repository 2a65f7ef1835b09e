#include "kolmo/io.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "kolmo/errors.hpp"
#include "kolmo/spectral.hpp"

namespace kolmo::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

template <std::size_t N>
std::array<double, N> coeff_array(const json& j, const char* key) {
    std::array<double, N> out{};
    if (!j.contains(key)) return out;
    const auto& arr = j.at(key);
    if (!arr.is_array() || arr.size() > N)
        throw Error(ErrorKind::InvalidArgument, std::string(key) + " must be an array of at most " + std::to_string(N) + " numbers");
    for (std::size_t i = 0; i < arr.size(); ++i) out[i] = arr[i].get<double>();
    return out;
}

family::TaylorQuadrupole quadrupole_from_json(const json& j) {
    family::TaylorQuadrupole q;
    q.alpha_sq = alpha_sq_from_json(j);
    q.n = j.at("n").get<int>();
    q.m = j.at("m").get<int>();
    q.c = coeff_array<4>(j, "c");
    return q;
}

void quadrupole_to_json(const family::TaylorQuadrupole& q, json& j) {
    j["alpha_sq"] = to_json(q.alpha_sq);
    j["n"] = q.n;
    j["m"] = q.m;
    j["c"] = q.c;
}

} // namespace

ConfigSource::ConfigSource(std::string text, std::string name) : text_(std::move(text)), name_(std::move(name)) {
    try {
        root_ = json::parse(text_);
    } catch (const json::parse_error& e) {
        int line = 1;
        for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text_.size()); ++i)
            if (text_[i] == '\n') ++line;
        throw ConfigError(name_ + ":" + std::to_string(line) + ": invalid JSON: " + e.what());
    }
    if (!root_.is_object()) throw ConfigError(name_ + ":1: top level must be a JSON object");
}

ConfigSource ConfigSource::from_file(const std::filesystem::path& path) {
    return ConfigSource(read_text(path), path.string());
}

int ConfigSource::line_of(const std::string& key) const {
    const auto pos = text_.find('"' + key + '"');
    if (pos == std::string::npos) return 0;
    int line = 1;
    for (std::size_t i = 0; i < pos; ++i)
        if (text_[i] == '\n') ++line;
    return line;
}

void ConfigSource::fail(const std::string& path, const std::string& reason) const {
    const auto dot = path.rfind('.');
    const std::string leaf = dot == std::string::npos ? path : path.substr(dot + 1);
    throw ConfigError(name_ + ":" + std::to_string(line_of(leaf)) + ": field '" + path + "': " + reason);
}

// AlphaSq ----------------------------------------------------------------------

AlphaSq alpha_sq_from_json(const json& j) {
    if (j.contains("alpha_sq")) {
        const auto& a = j.at("alpha_sq");
        AlphaSq r;
        if (a.is_array()) {
            if (a.size() != 2) throw Error(ErrorKind::InvalidArgument, "alpha_sq must be [num, den]");
            r = {a[0].get<long long>(), a[1].get<long long>()};
        } else if (a.is_number_integer()) {
            r = {a.get<long long>(), 1};
        } else {
            throw Error(ErrorKind::InvalidArgument, "alpha_sq must be an integer or [num, den]");
        }
        if (r.num <= 0 || r.den <= 0) throw Error(ErrorKind::InvalidArgument, "alpha_sq must be positive");
        return r;
    }
    if (j.contains("alpha")) return AlphaSq::from_alpha(j.at("alpha").get<double>());
    throw Error(ErrorKind::InvalidArgument, "missing alpha_sq (or alpha)");
}

json to_json(const AlphaSq& a) { return json::array({a.num, a.den}); }

// ExactSpec ------------------------------------------------------------------

ExactSpec exact_spec_from_json(const json& j) {
    ExactSpec spec;
    spec.nu = get_or(j, "nu", 0.01);
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "unidirectional") {
        family::Unidirectional u;
        u.a = get_or(j, "a", 1);
        if (j.contains("coeffs"))
            for (const auto& c : j.at("coeffs")) u.coeffs.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
        spec.family = u;
    } else if (fam == "extended_low_mode") {
        family::ExtendedLowMode e;
        e.a = get_or(j, "a", 1);
        e.alpha_sq = alpha_sq_from_json(j);
        e.beta_inv = j.at("beta_inv").get<int>();
        e.c = coeff_array<6>(j, "c");
        spec.family = e;
    } else if (fam == "bar_flow") {
        family::BarFlow b;
        b.alpha_sq = alpha_sq_from_json(j);
        b.n = j.at("n").get<int>();
        b.m = j.at("m").get<int>();
        for (const auto& t : j.at("terms"))
            b.terms.push_back({t.at("k").get<int>(), get_or(t, "a", 0.0), get_or(t, "b", 0.0)});
        spec.family = b;
    } else if (fam == "taylor_quadrupole") {
        spec.family = quadrupole_from_json(j);
    } else if (fam == "resonant3") {
        family::Resonant3 r;
        r.base = quadrupole_from_json(j);
        r.j = j.at("j").get<int>();
        r.c5 = get_or(j, "c5", 0.0);
        r.c6 = get_or(j, "c6", 0.0);
        spec.family = r;
    } else if (fam == "resonant4") {
        family::Resonant4 r;
        r.base = quadrupole_from_json(j);
        r.i = j.at("i").get<int>();
        r.j = j.at("j").get<int>();
        r.c5 = get_or(j, "c5", 0.0);
        r.c6 = get_or(j, "c6", 0.0);
        r.c7 = get_or(j, "c7", 0.0);
        r.c8 = get_or(j, "c8", 0.0);
        spec.family = r;
    } else if (fam == "remark_counterexample") {
        family::RemarkCounterexample r;
        r.d = get_or(j, "d", 1.0);
        r.alpha_sq = alpha_sq_from_json(j);
        spec.family = r;
    } else if (fam == "basic_nonstationary") {
        spec.family = family::BasicNonstationary{get_or(j, "a", 1)};
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown exact-solution family '" + fam + "'");
    }
    return spec;
}

json to_json(const ExactSpec& spec) {
    json j;
    j["family"] = spec.tag();
    j["nu"] = spec.nu;
    std::visit(overloaded{
                   [&](const family::Unidirectional& u) {
                       j["a"] = u.a;
                       j["coeffs"] = u.coeffs;
                   },
                   [&](const family::ExtendedLowMode& e) {
                       j["a"] = e.a;
                       j["alpha_sq"] = to_json(e.alpha_sq);
                       j["beta_inv"] = e.beta_inv;
                       j["c"] = e.c;
                   },
                   [&](const family::BarFlow& b) {
                       j["alpha_sq"] = to_json(b.alpha_sq);
                       j["n"] = b.n;
                       j["m"] = b.m;
                       j["terms"] = json::array();
                       for (const auto& t : b.terms) j["terms"].push_back({{"k", t.k}, {"a", t.a}, {"b", t.b}});
                   },
                   [&](const family::TaylorQuadrupole& q) { quadrupole_to_json(q, j); },
                   [&](const family::Resonant3& r) {
                       quadrupole_to_json(r.base, j);
                       j["j"] = r.j;
                       j["c5"] = r.c5;
                       j["c6"] = r.c6;
                   },
                   [&](const family::Resonant4& r) {
                       quadrupole_to_json(r.base, j);
                       j["i"] = r.i;
                       j["j"] = r.j;
                       j["c5"] = r.c5;
                       j["c6"] = r.c6;
                       j["c7"] = r.c7;
                       j["c8"] = r.c8;
                   },
                   [&](const family::RemarkCounterexample& r) {
                       j["d"] = r.d;
                       j["alpha_sq"] = to_json(r.alpha_sq);
                   },
                   [&](const family::BasicNonstationary& s) { j["a"] = s.a; },
               },
               spec.family);
    return j;
}

// Grid, model, stepper ---------------------------------------------------------

TorusConfig torus_from_json(const json& j, const TorusConfig& defaults) {
    TorusConfig c = defaults;
    if (j.contains("alpha_sq")) c.alpha = alpha_sq_from_json(j).alpha();
    else if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    c.beta_inv = get_or(j, "beta_inv", c.beta_inv);
    c.nx = get_or(j, "nx", c.nx);
    c.ny = get_or(j, "ny", c.ny);
    c.dealias_fraction = get_or(j, "dealias_fraction", c.dealias_fraction);
    c.validate();
    return c;
}

json to_json(const TorusConfig& c) {
    return {{"alpha", c.alpha}, {"beta_inv", c.beta_inv}, {"nx", c.nx}, {"ny", c.ny}, {"dealias_fraction", c.dealias_fraction}};
}

ModelSpec model_from_json(const json& j) {
    ModelSpec m;
    m.variant = variant_from_string(j.at("variant").get<std::string>());
    m.sigma = get_or(j, "sigma", 1);
    m.a = get_or(j, "a", 0);
    m.nu = get_or(j, "nu", 0.01);
    m.validate();
    return m;
}

json to_json(const ModelSpec& m) {
    json j{{"variant", std::string(to_string(m.variant))}, {"a", m.a}, {"nu", m.nu}};
    if (m.variant == Variant::Perturbed) j["sigma"] = m.sigma;
    return j;
}

StepperConfig stepper_from_json(const json& j) {
    StepperConfig s;
    s.dt = get_or(j, "dt", s.dt);
    s.t_end = j.at("t_end").get<double>();
    s.sample_every = get_or(j, "sample_every", s.sample_every);
    s.cfl_safety = get_or(j, "cfl_safety", s.cfl_safety);
    s.validate();
    return s;
}

json to_json(const SweepReport& r) {
    json runs = json::array();
    for (const auto& run : r.runs) runs.push_back({{"nu", run.nu}, {"ratio", run.ratio}});
    return {
        {"model", to_json(r.config.model)},
        {"alpha", r.config.alpha},
        {"grid", {{"nx", r.config.nx}, {"ny", r.config.ny}}},
        {"tau", r.config.tau},
        {"delta", r.config.delta},
        {"dt", r.config.dt},
        {"seed", r.config.seed},
        {"amplitude_rule", r.config.amplitude == AmplitudeRule::MatchNu ? "nu" : "unit"},
        {"initial_data", r.initial_data},
        {"nus", r.nus},
        {"ratios", r.ratios},
        {"runs", runs},
        {"monotone", r.monotone},
        {"below_delta", r.below_delta},
    };
}

json to_json(const CounterexampleReport& r) {
    json checks{
        {"ratio_matches", r.checks.ratio_matches},
        {"hypothesis_holds", r.checks.hypothesis_holds},
        {"projection_invariant", r.checks.projection_invariant},
        {"improvement_fails", r.checks.improvement_fails},
    };
    if (r.checks.pa_zero) checks["pa_zero"] = *r.checks.pa_zero;
    if (r.checks.pa_bound_fails) checks["pa_bound_fails"] = *r.checks.pa_bound_fails;
    if (r.checks.inf_bound_fails) checks["inf_bound_fails"] = *r.checks.inf_bound_fails;
    json j{
        {"d", r.d},
        {"alpha", r.alpha},
        {"tau", r.tau},
        {"nu", r.nu},
        {"delta", r.delta},
        {"measured_ratio", r.measured_ratio},
        {"predicted_ratio", r.predicted_ratio},
        {"initial_norm", r.initial_norm},
        {"initial_perp_k_norm", r.initial_perp_k_norm},
        {"checks", checks},
        {"passed", r.passed()},
    };
    if (r.checks.pa_zero) {
        j["max_pa_norm"] = r.max_pa_norm;
        j["min_perp_a_norm"] = r.min_perp_a_norm;
    }
    return j;
}

// CSV ------------------------------------------------------------------------

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_tracks_csv(const std::filesystem::path& path, const Tracks& tr) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    out << "t,l2,x,gradx2\n";
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const bool defined = tr.x_defined.empty() || tr.x_defined[i];
        const double x = defined && tr.x_sq[i] >= 0.0 ? std::sqrt(tr.x_sq[i]) : std::nan("");
        out << format_double(tr.t[i]) << ',' << format_double(tr.l2[i]) << ',' << format_double(x) << ','
            << format_double(tr.gradx_sq[i]) << '\n';
    }
}

void write_field_csv(const std::filesystem::path& path, const PhysicalField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    out << "x,y,omega\n";
    for (int ix = 0; ix < f.config.nx; ++ix)
        for (int iy = 0; iy < f.config.ny; ++iy)
            out << format_double(f.x(ix)) << ',' << format_double(f.y(iy)) << ',' << format_double(f(ix, iy)) << '\n';
}

PhysicalField read_field_csv(const std::filesystem::path& path, const TorusConfig& grid) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
    std::string line;
    std::getline(in, line);
    if (line != "x,y,omega") throw Error(ErrorKind::InvalidArgument, path.string() + ": unexpected header '" + line + "'");
    PhysicalField f(grid);
    std::size_t k = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (k >= f.values.size()) throw Error(ErrorKind::InvalidArgument, path.string() + ": more rows than grid points");
        const auto last = line.rfind(',');
        f.values[k++] = std::stod(line.substr(last + 1));
    }
    if (k != f.values.size())
        throw Error(ErrorKind::InvalidArgument, path.string() + ": expected " + std::to_string(f.values.size()) + " rows");
    return f;
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
    out << j.dump(2) << '\n';
}

// Manifests ------------------------------------------------------------------

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_text(path)); }

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void RunManifest::write(const std::filesystem::path& out_dir) const {
    json files = json::array();
    for (const auto& rel : outputs)
        files.push_back({{"path", rel.generic_string()}, {"sha256", sha256_file(out_dir / rel)}});
    const json j{
        {"command", command},       {"config_digest", config_digest}, {"seed", seed},
        {"tool_version", tool_version}, {"start_time", start_time},   {"end_time", end_time},
        {"outputs", files},
    };
    write_json(out_dir / "manifest.json", j);
}

} // namespace kolmo::io
