#include <doctest.h>

#include <cmath>
#include <random>

#include "kolmo/errors.hpp"
#include "kolmo/models.hpp"
#include "kolmo/spectral.hpp"
#include "oracles.hpp"

using namespace kolmo;

namespace {

TorusConfig grid(double alpha, int nx = 32, int ny = 32) {
    TorusConfig c;
    c.alpha = alpha;
    c.nx = nx;
    c.ny = ny;
    return c;
}

double max_diff(const SpectralField& a, const SpectralField& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) d = std::max(d, std::abs(a.coeffs()[k] - b.coeffs()[k]));
    return d;
}

SpectralField cos_y(const TorusConfig& c, double amp) {
    SpectralField f(c);
    f.set_mode(0, 1, 0.5 * amp);
    return f;
}

// -u·∇w on the collocation grid, with u = (∂yψ, -∂xψ), ψ = -Δ⁻¹w
SpectralField transport_oracle(const SpectralField& w) {
    const SpectralField psi = -1.0 * inv_laplacian(w);
    const auto u1 = to_physical(dy(psi)), u2 = to_physical(-1.0 * dx(psi));
    const auto wx = to_physical(dx(w)), wy = to_physical(dy(w));
    PhysicalField g(w.config());
    for (std::size_t k = 0; k < g.values.size(); ++k)
        g.values[k] = -(u1.values[k] * wx.values[k] + u2.values[k] * wy.values[k]);
    return to_spectral(g);
}

} // namespace

TEST_CASE("variant names round-trip") {
    for (auto v : {Variant::NonlinearNS, Variant::Perturbed, Variant::LinearizedDecaying, Variant::LinearizedKolmogorov,
                   Variant::LinearizedCombined, Variant::LinearizedEuler})
        CHECK(variant_from_string(to_string(v)) == v);
    CHECK(to_string(Variant::LinearizedEuler) == "linearized_euler");
    CHECK_THROWS_AS(variant_from_string("stokes"), Error);
}

TEST_CASE("model validation") {
    ModelSpec m;
    m.a = 2;
    CHECK_THROWS_AS(m.validate(), Error);
    m.a = 1;
    m.nu = -1;
    CHECK_THROWS_AS(m.validate(), Error);
    m.nu = 0.01;
    m.variant = Variant::Perturbed;
    m.sigma = 3;
    CHECK_THROWS_AS(m.validate(), Error);
    m.sigma = 0;
    CHECK_NOTHROW(m.validate());
}

TEST_CASE("basic flow amplitude per variant") {
    CHECK(ModelSpec{Variant::NonlinearNS, 1, 1, 0.01}.basic_flow_amplitude() == 0.0);
    CHECK(ModelSpec{Variant::LinearizedDecaying, 1, 1, 0.01}.basic_flow_amplitude() == 1.0);
    CHECK(ModelSpec{Variant::LinearizedKolmogorov, 1, 1, 0.01}.basic_flow_amplitude() == 1.0);
    CHECK(ModelSpec{Variant::LinearizedKolmogorov, 1, 0, 0.01}.basic_flow_amplitude() == 0.0);
    CHECK(ModelSpec{Variant::LinearizedCombined, 1, 1, 0.01}.basic_flow_amplitude() == 2.0);
    CHECK(ModelSpec{Variant::LinearizedEuler, 1, 0, 0.01}.basic_flow_amplitude() == 1.0);
}

TEST_CASE("diffusion symbol") {
    const auto c = grid(2.0, 16, 16);
    const auto sym = diffusion_symbol({Variant::NonlinearNS, 1, 0, 0.1}, c);
    SpectralField probe(c);
    CHECK(sym[probe.index(1, 3)] == doctest::Approx(-0.1 * 13));
    CHECK(sym[probe.index(-2, 0)] == doctest::Approx(-0.1 * 16));
    const auto euler = diffusion_symbol({Variant::LinearizedEuler, 1, 1, 0.1}, c);
    for (double v : euler) CHECK(v == 0.0);
}

TEST_CASE("nonlinear advection is transport by the induced velocity") {
    std::mt19937_64 rng(1);
    for (double alpha : {1.0, 2.0, std::sqrt(5.0)}) {
        const auto c = grid(alpha);
        const SpectralField w = oracle::random_box(c, 4, rng);
        const auto rhs = nonstiff_rhs({Variant::NonlinearNS, 1, 0, 0.01}, 0.0, w);
        CHECK(max_diff(rhs, transport_oracle(w)) < 1e-11);
    }
}

TEST_CASE("Kolmogorov flow is stationary under the forced equations") {
    const auto c = grid(1.5);
    const ModelSpec m{Variant::NonlinearNS, 1, 1, 0.05};
    const SpectralField w = cos_y(c, -1.0);
    SpectralField total = nonstiff_rhs(m, 0.0, w);
    const auto sym = diffusion_symbol(m, c);
    for (std::size_t k = 0; k < sym.size(); ++k) total.coeffs()[k] += sym[k] * w.coeffs()[k];
    CHECK(total.max_abs() < 1e-16);
}

TEST_CASE("linearized variants are the derivative of the advection") {
    std::mt19937_64 rng(2);
    const auto c = grid(2.0);
    const SpectralField w = oracle::random_box(c, 4, rng);
    const ModelSpec ns{Variant::NonlinearNS, 1, 0, 0.02};
    const double t = 3.0, eps = 1e-3;
    auto derivative = [&](double amp) {
        const SpectralField base = cos_y(c, -amp);
        SpectralField d = nonstiff_rhs(ns, t, base + eps * w) - nonstiff_rhs(ns, t, base - eps * w);
        d *= 0.5 / eps;
        return d;
    };
    const double decay = std::exp(-0.02 * t);
    const double scale = derivative(1.0).max_abs();
    CHECK(max_diff(nonstiff_rhs({Variant::LinearizedDecaying, 1, 0, 0.02}, t, w), derivative(decay)) < 1e-12 * scale);
    CHECK(max_diff(nonstiff_rhs({Variant::LinearizedKolmogorov, 1, 1, 0.02}, t, w), derivative(1.0)) < 1e-12 * scale);
    CHECK(max_diff(nonstiff_rhs({Variant::LinearizedCombined, 1, 1, 0.02}, t, w), derivative(1.0 + decay)) < 1e-12 * scale);
    CHECK(max_diff(nonstiff_rhs({Variant::LinearizedCombined, 1, 0, 0.02}, t, w), derivative(decay)) < 1e-12 * scale);
    CHECK(max_diff(nonstiff_rhs({Variant::LinearizedEuler, 1, 1, 0.02}, t, w), derivative(2.0)) < 1e-12 * scale);
    CHECK(max_diff(nonstiff_rhs({Variant::LinearizedEuler, 1, 0, 0.02}, t, w), derivative(1.0)) < 1e-12 * scale);
}

TEST_CASE("perturbed form is the full advection around the decaying basic state") {
    std::mt19937_64 rng(4);
    const auto c = grid(2.0);
    const SpectralField w = 0.3 * oracle::random_box(c, 4, rng);
    const ModelSpec ns{Variant::NonlinearNS, 1, 0, 0.02};
    for (int a : {0, 1}) {
        const double t = 5.0;
        const SpectralField base = cos_y(c, -(a + std::exp(-0.02 * t)));
        const SpectralField expect = nonstiff_rhs(ns, t, base + w) - nonstiff_rhs(ns, t, base);
        const auto got = nonstiff_rhs({Variant::Perturbed, 1, a, 0.02}, t, w);
        CHECK(max_diff(got, expect) < 1e-12 * expect.max_abs());
        const auto linear = nonstiff_rhs({Variant::Perturbed, 0, a, 0.02}, t, w);
        CHECK(max_diff(linear, nonstiff_rhs({Variant::LinearizedCombined, 1, a, 0.02}, t, w)) == 0.0);
    }
}
