#include <doctest.h>

#include <cmath>
#include <numbers>

#include "families.hpp"
#include "kolmo/errors.hpp"
#include "kolmo/exact.hpp"
#include "kolmo/models.hpp"
#include "kolmo/spectral.hpp"

using namespace kolmo;

namespace {

double max_diff(const SpectralField& a, const SpectralField& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) d = std::max(d, std::abs(a.coeffs()[k] - b.coeffs()[k]));
    return d;
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

using cases::Named;

std::vector<Named> all_families() {
    auto v = cases::oracle_suite();
    v.push_back({"counterexample", {family::RemarkCounterexample{1.0, {4, 1}}, 0.01}});
    v.push_back({"basic", {family::BasicNonstationary{1}, 0.01}});
    return v;
}

} // namespace

TEST_CASE("alpha squared from alpha") {
    CHECK(AlphaSq::from_alpha(std::sqrt(5.0)) == AlphaSq{5, 1});
    CHECK(AlphaSq::from_alpha(std::sqrt(1.5)) == AlphaSq{3, 2});
    CHECK(AlphaSq::from_alpha(std::sqrt(3.0) / 2) == AlphaSq{3, 4});
    CHECK(AlphaSq::from_alpha(2.0) == AlphaSq{4, 1});
    CHECK_THROWS_AS(AlphaSq::from_alpha(std::numbers::pi), Error);
}

TEST_CASE("coefficient evaluation agrees with the closed form pointwise") {
    for (const auto& [name, spec] : all_families()) {
        CAPTURE(name);
        const auto grid = spec.default_grid(64, 64);
        for (double t : {0.0, 3.7, 50.0}) {
            const PhysicalField g = to_physical(eval(spec, t, grid));
            double err = 0.0;
            for (int i = 0; i < grid.nx; ++i)
                for (int k = 0; k < grid.ny; ++k) err = std::max(err, std::abs(g(i, k) - sample(spec, t, g.x(i), g.y(k))));
            CHECK(err < 1e-13);
        }
    }
}

TEST_CASE("every family solves the forced equation") {
    for (const auto& [name, spec] : all_families()) {
        CAPTURE(name);
        const auto grid = spec.default_grid(64, 64);
        const ModelSpec model{Variant::NonlinearNS, 1, spec.forcing(), spec.nu};
        const auto sym = diffusion_symbol(model, grid);
        for (double t : {0.0, 10.0}) {
            const double h = 1e-4;
            SpectralField dwdt = eval(spec, t + h, grid) - eval(spec, t - h, grid);
            dwdt *= 0.5 / h;
            const SpectralField w = eval(spec, t, grid);
            SpectralField rhs = nonstiff_rhs(model, t, w);
            for (std::size_t k = 0; k < sym.size(); ++k) rhs.coeffs()[k] += sym[k] * w.coeffs()[k];
            CHECK(max_diff(dwdt, rhs) < 1e-9 * std::max(1.0, w.max_abs()));
            CHECK(euler_stationarity_residual(spec, t, grid) < 1e-14);
        }
    }
}

TEST_CASE("a non-stationary combination is detected") {
    TorusConfig g;
    g.nx = g.ny = 32;
    SpectralField w(g);
    w.set_mode(1, 0, 0.5);
    w.set_mode(0, 2, 0.5);
    CHECK(euler_stationarity_residual(w) > 1e-3);
}

TEST_CASE("resonance conditions") {
    CHECK(validate(cases::resonant3()).empty());
    CHECK(validate(cases::resonant4()).empty());
    auto broken = cases::resonant3();
    std::get<family::Resonant3>(broken.family).j = 4;
    const auto v = validate(broken);
    REQUIRE(v.size() == 1);
    CHECK(v[0].condition == "ResonanceViolated");
    CHECK(kind_of([&] { (void)eval(broken, 0.0, broken.default_grid()); }) == ErrorKind::ResonanceViolated);

    auto r4 = cases::resonant4();
    std::get<family::Resonant4>(r4.family).i = 4;
    CHECK(validate(r4).size() == 1);

    auto low = cases::low_mode();
    std::get<family::ExtendedLowMode>(low.family).beta_inv = 3;
    REQUIRE(validate(low).size() == 1);
    CHECK(validate(low)[0].condition == "DomainCondition");
}

TEST_CASE("domain compatibility") {
    const auto spec = cases::resonant3();
    auto g = spec.default_grid(32, 32);
    CHECK(g.alpha == doctest::Approx(std::sqrt(5.0)));
    g.alpha = 2.0;
    CHECK(kind_of([&] { (void)eval(spec, 0.0, g); }) == ErrorKind::IncompatibleDomain);
    auto small = cases::resonant4().default_grid(8, 8);
    CHECK(kind_of([&] { (void)eval(cases::resonant4(), 0.0, small); }) == ErrorKind::IncompatibleDomain);
    // a taller box holding whole periods is fine
    auto tall = cases::quadrupole().default_grid(32, 64);
    tall.beta_inv = 2;
    const auto w = eval(cases::quadrupole(), 0.0, tall);
    CHECK(std::abs(w(1, 4)) > 0.0);
    CHECK(kind_of([&] { (void)eval(cases::low_mode(), 0.0, cases::quadrupole().default_grid(32, 32)); }) ==
          ErrorKind::IncompatibleDomain);
}

TEST_CASE("analytic decay rates") {
    const auto bar = analytic_rates(cases::bar_flow());
    REQUIRE(bar.size() == 2);
    CHECK(bar[0].rate == doctest::Approx(0.1));
    CHECK(bar[0].j == 2);
    CHECK(bar[0].m == 2);
    CHECK(bar[1].rate == doctest::Approx(0.4));
    for (const auto& r : analytic_rates(cases::resonant3())) CHECK(r.rate == doctest::Approx(0.09));
    for (const auto& r : analytic_rates(cases::resonant4())) CHECK(r.rate == doctest::Approx(0.25));
    const auto low = analytic_rates(cases::low_mode());
    for (const auto& r : low) CHECK(r.rate == doctest::Approx(0.01));
}

TEST_CASE("counterexample amplitude") {
    for (double d : {1.0, 0.5}) {
        const ExactSpec spec{family::RemarkCounterexample{d, {4, 1}}, 0.01};
        const auto w = eval(spec, 0.0, spec.default_grid(32, 32));
        CHECK(l2_norm(w) == doctest::Approx(d * 0.01).epsilon(1e-14));
        CHECK(l2_norm(eval(spec, 100.0, spec.default_grid(32, 32))) == doctest::Approx(d * 0.01 * std::exp(-5.0)).epsilon(1e-13));
    }
    CHECK_FALSE(validate({family::RemarkCounterexample{1.0, {1, 4}}, 0.01}).empty());
}

TEST_CASE("forcing and default domain") {
    CHECK(cases::low_mode().forcing() == 1);
    CHECK(cases::unidirectional().forcing() == 1);
    CHECK(cases::bar_flow().forcing() == 0);
    const auto g = cases::low_mode().default_grid();
    CHECK(g.beta_inv == 2);
    CHECK(g.alpha == doctest::Approx(std::sqrt(0.75)));
    CHECK(g.nx == 128);
}
