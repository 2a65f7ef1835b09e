#include "kolmo/exact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <tuple>

#include "kolmo/errors.hpp"
#include "kolmo/spectral.hpp"

namespace kolmo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr Complex I{0.0, 1.0};

// One complex-exponential pair c·e^{i(jX + mY)} + c.c. with its decay rate; X = αx, Y = βy on the
// family's own lattice (m counts multiples of the family's β).
struct Term {
    int j;
    int m;
    Complex c;
    double rate;
};

struct Builder {
    std::vector<Term> terms;
    void cos(int j, int m, double amp, double rate) {
        if (amp != 0.0 && (j != 0 || m != 0)) terms.push_back({j, m, 0.5 * amp, rate});
    }
    void sin(int j, int m, double amp, double rate) {
        if (amp != 0.0 && (j != 0 || m != 0)) terms.push_back({j, m, -0.5 * I * amp, rate});
    }
    // c1 sin nX sin mY + c2 cos nX sin mY + c3 sin nX cos mY + c4 cos nX cos mY
    void quadrupole(int n, int m, const std::array<double, 4>& c, double rate) {
        cos(n, -m, 0.5 * c[0], rate);
        cos(n, m, -0.5 * c[0], rate);
        sin(n, m, 0.5 * c[1], rate);
        sin(n, -m, -0.5 * c[1], rate);
        sin(n, m, 0.5 * c[2], rate);
        sin(n, -m, 0.5 * c[2], rate);
        cos(n, -m, 0.5 * c[3], rate);
        cos(n, m, 0.5 * c[3], rate);
    }
};

double quad_k2(const family::TaylorQuadrupole& q) {
    return q.alpha_sq.value() * q.n * q.n + static_cast<double>(q.m) * q.m;
}

// the family's β lattice step, as a multiple of the y-wavenumber 1
int family_beta_inv(const ExactFamily& f) {
    if (auto* e = std::get_if<family::ExtendedLowMode>(&f)) return e->beta_inv;
    return 1;
}

std::vector<Term> build_terms(const ExactSpec& spec) {
    const double nu = spec.nu;
    Builder b;
    std::visit(overloaded{
                   [&](const family::Unidirectional& u) {
                       b.cos(0, 1, -u.a, 0.0);
                       for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
                           const int n = static_cast<int>(k) + 1;
                           b.cos(0, n, u.coeffs[k][0], nu * n * n);
                           b.sin(0, n, u.coeffs[k][1], nu * n * n);
                       }
                   },
                   [&](const family::ExtendedLowMode& e) {
                       const int s = e.beta_inv; // y = s·(βy)
                       b.cos(0, s, -e.a, 0.0);
                       b.cos(0, s, -1.0, nu);
                       b.sin(0, s, e.c[0], nu);
                       b.cos(0, s, e.c[1], nu);
                       b.quadrupole(1, 1, {e.c[2], e.c[5], e.c[4], e.c[3]}, nu);
                   },
                   [&](const family::BarFlow& f) {
                       const double base = f.alpha_sq.value() * f.n * f.n + static_cast<double>(f.m) * f.m;
                       for (const auto& t : f.terms) {
                           const double rate = nu * base * t.k * t.k;
                           b.cos(t.k * f.n, t.k * f.m, t.a, rate);
                           b.sin(t.k * f.n, t.k * f.m, t.b, rate);
                       }
                   },
                   [&](const family::TaylorQuadrupole& q) { b.quadrupole(q.n, q.m, q.c, nu * quad_k2(q)); },
                   [&](const family::Resonant3& r) {
                       b.quadrupole(r.base.n, r.base.m, r.base.c, nu * quad_k2(r.base));
                       const double rate = nu * r.j * r.j;
                       b.sin(0, r.j, r.c5, rate);
                       b.cos(0, r.j, r.c6, rate);
                   },
                   [&](const family::Resonant4& r) {
                       b.quadrupole(r.base.n, r.base.m, r.base.c, nu * quad_k2(r.base));
                       const double rate_x = nu * r.base.alpha_sq.value() * r.i * r.i;
                       b.sin(r.i, 0, r.c5, rate_x);
                       b.cos(r.i, 0, r.c6, rate_x);
                       const double rate_y = nu * r.j * r.j;
                       b.sin(0, r.j, r.c7, rate_y);
                       b.cos(0, r.j, r.c8, rate_y);
                   },
                   [&](const family::RemarkCounterexample& r) {
                       const double alpha = r.alpha_sq.alpha();
                       const double amp = r.d * nu * std::sqrt(alpha) / (std::numbers::sqrt2 * std::numbers::pi);
                       b.sin(1, 1, amp, nu * (r.alpha_sq.value() + 1.0));
                   },
                   [&](const family::BasicNonstationary& s) {
                       b.cos(0, 1, -s.a, 0.0);
                       b.cos(0, 1, -1.0, nu);
                   },
               },
               spec.family);
    return b.terms;
}

std::optional<AlphaSq> family_alpha_sq(const ExactFamily& f) {
    return std::visit(overloaded{
                          [](const family::Unidirectional&) -> std::optional<AlphaSq> { return std::nullopt; },
                          [](const family::BasicNonstationary&) -> std::optional<AlphaSq> { return std::nullopt; },
                          [](const family::ExtendedLowMode& e) -> std::optional<AlphaSq> { return e.alpha_sq; },
                          [](const family::BarFlow& b) -> std::optional<AlphaSq> { return b.alpha_sq; },
                          [](const family::TaylorQuadrupole& q) -> std::optional<AlphaSq> { return q.alpha_sq; },
                          [](const family::Resonant3& r) -> std::optional<AlphaSq> { return r.base.alpha_sq; },
                          [](const family::Resonant4& r) -> std::optional<AlphaSq> { return r.base.alpha_sq; },
                          [](const family::RemarkCounterexample& r) -> std::optional<AlphaSq> { return r.alpha_sq; },
                      },
                      f);
}

void check_forcing(int a, std::vector<Violation>& out) {
    if (a != 0 && a != 1) out.push_back({"InvalidParameter", "forcing amplitude a must be 0 or 1"});
}

void check_quadrupole(const family::TaylorQuadrupole& q, std::vector<Violation>& out) {
    if (q.n == 0 && q.m == 0) out.push_back({"InvalidParameter", "n and m cannot both vanish"});
}

} // namespace

double AlphaSq::alpha() const { return std::sqrt(value()); }

AlphaSq AlphaSq::from_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorKind::InvalidArgument, "alpha must be positive");
    const double target = alpha * alpha;
    // continued-fraction convergents of α²
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double x = target;
    for (int iter = 0; iter < 40; ++iter) {
        const double fl = std::floor(x);
        const long long ai = static_cast<long long>(fl);
        const long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > 10000) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - target) <= 1e-12 * target) break;
        const double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    if (k1 == 0 || std::abs(static_cast<double>(h1) / static_cast<double>(k1) - target) > 1e-12 * target)
        throw Error(ErrorKind::InvalidArgument, "alpha^2 is not a small-denominator rational; pass alpha_sq explicitly");
    const long long g = std::gcd(h1, k1);
    return {h1 / g, k1 / g};
}

std::string ExactSpec::tag() const {
    return std::visit(overloaded{
                          [](const family::Unidirectional&) { return std::string("unidirectional"); },
                          [](const family::ExtendedLowMode&) { return std::string("extended_low_mode"); },
                          [](const family::BarFlow&) { return std::string("bar_flow"); },
                          [](const family::TaylorQuadrupole&) { return std::string("taylor_quadrupole"); },
                          [](const family::Resonant3&) { return std::string("resonant3"); },
                          [](const family::Resonant4&) { return std::string("resonant4"); },
                          [](const family::RemarkCounterexample&) { return std::string("remark_counterexample"); },
                          [](const family::BasicNonstationary&) { return std::string("basic_nonstationary"); },
                      },
                      family);
}

int ExactSpec::forcing() const {
    if (auto* u = std::get_if<family::Unidirectional>(&family)) return u->a;
    if (auto* e = std::get_if<family::ExtendedLowMode>(&family)) return e->a;
    if (auto* s = std::get_if<family::BasicNonstationary>(&family)) return s->a;
    return 0;
}

double ExactSpec::required_alpha() const {
    auto a = family_alpha_sq(family);
    return a ? a->alpha() : 0.0;
}

int ExactSpec::required_beta_inv() const { return family_beta_inv(family); }

TorusConfig ExactSpec::default_grid(int nx, int ny) const {
    TorusConfig g;
    const double a = required_alpha();
    g.alpha = a > 0.0 ? a : 1.0;
    g.beta_inv = required_beta_inv();
    g.nx = nx;
    g.ny = ny;
    return g;
}

std::vector<Violation> validate(const ExactSpec& spec) {
    std::vector<Violation> out;
    if (!(spec.nu >= 0.0) || !std::isfinite(spec.nu)) out.push_back({"InvalidParameter", "nu must be nonnegative"});
    if (auto a = family_alpha_sq(spec.family); a && (a->num <= 0 || a->den <= 0))
        out.push_back({"InvalidParameter", "alpha_sq must be a positive fraction"});
    std::visit(overloaded{
                   [&](const family::Unidirectional& u) { check_forcing(u.a, out); },
                   [&](const family::BasicNonstationary& s) { check_forcing(s.a, out); },
                   [&](const family::ExtendedLowMode& e) {
                       check_forcing(e.a, out);
                       if (e.beta_inv < 1) {
                           out.push_back({"DomainCondition", "1/beta must be a positive integer"});
                           return;
                       }
                       const long long b2 = static_cast<long long>(e.beta_inv) * e.beta_inv;
                       // α² + β² = 1  <=>  num·b² + den = den·b²
                       if (e.alpha_sq.num * b2 + e.alpha_sq.den != e.alpha_sq.den * b2)
                           out.push_back({"DomainCondition", "alpha^2 + beta^2 must equal 1"});
                   },
                   [&](const family::BarFlow& f) {
                       if (f.n == 0 && f.m == 0) out.push_back({"InvalidParameter", "n and m cannot both vanish"});
                       for (const auto& t : f.terms)
                           if (t.k == 0) out.push_back({"InvalidParameter", "bar-flow index k must be nonzero"});
                   },
                   [&](const family::TaylorQuadrupole& q) { check_quadrupole(q, out); },
                   [&](const family::Resonant3& r) {
                       check_quadrupole(r.base, out);
                       const auto& q = r.base;
                       const long long lhs = q.alpha_sq.num * q.n * q.n + q.alpha_sq.den * q.m * q.m;
                       if (lhs != q.alpha_sq.den * r.j * r.j)
                           out.push_back({"ResonanceViolated", "alpha^2 n^2 + m^2 != j^2"});
                   },
                   [&](const family::Resonant4& r) {
                       check_quadrupole(r.base, out);
                       const auto& q = r.base;
                       const long long lhs = q.alpha_sq.num * q.n * q.n + q.alpha_sq.den * q.m * q.m;
                       if (lhs != q.alpha_sq.den * r.j * r.j)
                           out.push_back({"ResonanceViolated", "alpha^2 n^2 + m^2 != j^2"});
                       if (q.alpha_sq.num * r.i * r.i != q.alpha_sq.den * r.j * r.j)
                           out.push_back({"ResonanceViolated", "alpha^2 i^2 != j^2"});
                   },
                   [&](const family::RemarkCounterexample& r) {
                       if (r.alpha_sq.num < r.alpha_sq.den) out.push_back({"DomainCondition", "alpha must be >= 1"});
                       if (!(r.d > 0.0)) out.push_back({"InvalidParameter", "d must be positive"});
                   },
               },
               spec.family);
    return out;
}

SpectralField eval(const ExactSpec& spec, double t, const TorusConfig& grid) {
    if (const auto v = validate(spec); !v.empty()) {
        const auto kind = v.front().condition == "ResonanceViolated" ? ErrorKind::ResonanceViolated
                          : v.front().condition == "DomainCondition" ? ErrorKind::IncompatibleDomain
                                                                     : ErrorKind::InvalidArgument;
        throw Error(kind, spec.tag() + ": " + v.front().detail);
    }
    grid.validate();
    if (const double a = spec.required_alpha(); a > 0.0 && std::abs(grid.alpha - a) > 1e-12 * a)
        throw Error(ErrorKind::IncompatibleDomain,
                    spec.tag() + " needs alpha=" + std::to_string(a) + ", grid has " + std::to_string(grid.alpha));
    const int fb = spec.required_beta_inv();
    if (grid.beta_inv % fb != 0)
        throw Error(ErrorKind::IncompatibleDomain, spec.tag() + " needs the y-period to be a multiple of 2π/β");
    const int yscale = grid.beta_inv / fb;

    SpectralField w(grid);
    for (const Term& term : build_terms(spec)) {
        const int j = term.j, m = term.m * yscale;
        if (!w.in_dealias_set(j, m))
            throw Error(ErrorKind::IncompatibleDomain, spec.tag() + ": mode (" + std::to_string(j) + "," +
                                                           std::to_string(m) + ") exceeds the dealias cutoff");
        w.add_mode(j, m, term.c * std::exp(-term.rate * t));
    }
    return w;
}

double sample(const ExactSpec& spec, double t, double x, double y) {
    const double nu = spec.nu;
    using std::cos;
    using std::exp;
    using std::sin;
    auto quad = [&](const family::TaylorQuadrupole& q) {
        const double X = q.n * q.alpha_sq.alpha() * x, Y = q.m * y;
        return exp(-nu * quad_k2(q) * t) *
               (q.c[0] * sin(X) * sin(Y) + q.c[1] * cos(X) * sin(Y) + q.c[2] * sin(X) * cos(Y) + q.c[3] * cos(X) * cos(Y));
    };
    return std::visit(
        overloaded{
            [&](const family::Unidirectional& u) {
                double s = -u.a * cos(y);
                for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
                    const double n = static_cast<double>(k + 1);
                    s += exp(-n * n * nu * t) * (u.coeffs[k][0] * cos(n * y) + u.coeffs[k][1] * sin(n * y));
                }
                return s;
            },
            [&](const family::ExtendedLowMode& e) {
                const double ax = e.alpha_sq.alpha() * x, by = y / e.beta_inv;
                const double d = exp(-nu * t);
                return -e.a * cos(y) - cos(y) * d +
                       d * (e.c[0] * sin(y) + e.c[1] * cos(y) + e.c[2] * sin(ax) * sin(by)) +
                       d * (e.c[3] * cos(ax) * cos(by) + e.c[4] * sin(ax) * cos(by) + e.c[5] * cos(ax) * sin(by));
            },
            [&](const family::BarFlow& f) {
                const double base = f.alpha_sq.value() * f.n * f.n + static_cast<double>(f.m) * f.m;
                const double phase = f.n * f.alpha_sq.alpha() * x + f.m * y;
                double s = 0.0;
                for (const auto& term : f.terms)
                    s += exp(-nu * base * term.k * term.k * t) * (term.a * cos(term.k * phase) + term.b * sin(term.k * phase));
                return s;
            },
            [&](const family::TaylorQuadrupole& q) { return quad(q); },
            [&](const family::Resonant3& r) {
                return quad(r.base) + exp(-nu * r.j * r.j * t) * (r.c5 * sin(r.j * y) + r.c6 * cos(r.j * y));
            },
            [&](const family::Resonant4& r) {
                const double ix = r.i * r.base.alpha_sq.alpha() * x;
                return quad(r.base) +
                       exp(-nu * r.base.alpha_sq.value() * r.i * r.i * t) * (r.c5 * sin(ix) + r.c6 * cos(ix)) +
                       exp(-nu * r.j * r.j * t) * (r.c7 * sin(r.j * y) + r.c8 * cos(r.j * y));
            },
            [&](const family::RemarkCounterexample& r) {
                const double alpha = r.alpha_sq.alpha();
                return r.d * nu * std::sqrt(alpha) / (std::numbers::sqrt2 * std::numbers::pi) *
                       exp(-(r.alpha_sq.value() + 1.0) * nu * t) * sin(alpha * x + y);
            },
            [&](const family::BasicNonstationary& s) { return -s.a * cos(y) - cos(y) * exp(-nu * t); },
        },
        spec.family);
}

double euler_stationarity_residual(const SpectralField& w) {
    const double n = l2_norm(w);
    if (n == 0.0) return 0.0;
    return l2_norm(jacobian(inv_laplacian(w), w)) / (n * n);
}

double euler_stationarity_residual(const ExactSpec& spec, double t, const TorusConfig& grid) {
    return euler_stationarity_residual(eval(spec, t, grid));
}

std::vector<ModeRate> analytic_rates(const ExactSpec& spec) {
    std::map<std::pair<int, int>, double> rates;
    for (const Term& t : build_terms(spec)) {
        if (t.rate == 0.0) continue;
        int j = t.j, m = t.m;
        if (j < 0 || (j == 0 && m < 0)) {
            j = -j;
            m = -m;
        }
        rates[{j, m}] = t.rate;
    }
    std::vector<ModeRate> out;
    for (const auto& [jm, r] : rates) out.push_back({jm.first, jm.second, r});
    std::sort(out.begin(), out.end(), [](const ModeRate& a, const ModeRate& b) {
        return a.rate != b.rate ? a.rate < b.rate : std::tie(a.j, a.m) < std::tie(b.j, b.m);
    });
    return out;
}

} // namespace kolmo
