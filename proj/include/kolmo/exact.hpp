#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "kolmo/field.hpp"

namespace kolmo {

/// Exact α² = num/den, so resonance conditions on irrational α (√5, √6/2, √3/2) are integer arithmetic.
struct AlphaSq {
    long long num = 1;
    long long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    double alpha() const;
    /// Closest small-denominator rational to a² (denominator ≤ 10⁴, tolerance 1e-12).
    static AlphaSq from_alpha(double alpha);

    bool operator==(const AlphaSq&) const = default;
};

namespace family {

/// -a cos y + Σ_n e^{-n²νt}(a_n cos ny + b_n sin ny)
struct Unidirectional {
    int a = 1;
    std::vector<std::array<double, 2>> coeffs; // (a_n, b_n) for n = 1, 2, ...
};

/// Low-mode solution on [0, 2π/α) × [0, 2π/β) with α² + β² = 1:
/// -a cos y - e^{-νt} cos y + e^{-νt}(c1 sin y + c2 cos y + c3 sin αx sin βy
///                                    + c4 cos αx cos βy + c5 sin αx cos βy + c6 cos αx sin βy)
struct ExtendedLowMode {
    int a = 1;
    AlphaSq alpha_sq{3, 4};
    int beta_inv = 2;
    std::array<double, 6> c{};
};

/// Bar flow Σ_k e^{-ν(n²α²+m²)k²t}(a_k cos(k(nαx+my)) + b_k sin(k(nαx+my))), k ≠ 0.
struct BarFlow {
    struct Term {
        int k;
        double a;
        double b;
    };
    AlphaSq alpha_sq;
    int n = 1, m = 1;
    std::vector<Term> terms;
};

/// e^{-ν(n²α²+m²)t}(c1 sin nαx sin my + c2 cos nαx sin my + c3 sin nαx cos my + c4 cos nαx cos my)
struct TaylorQuadrupole {
    AlphaSq alpha_sq;
    int n = 1, m = 1;
    std::array<double, 4> c{};
};

/// Quadrupole + e^{-νj²t}(c5 sin jy + c6 cos jy), needs α²n² + m² = j².
struct Resonant3 {
    TaylorQuadrupole base;
    int j = 1;
    double c5 = 0.0, c6 = 0.0;
};

/// Quadrupole + e^{-νi²α²t}(c5 sin iαx + c6 cos iαx) + e^{-νj²t}(c7 sin jy + c8 cos jy),
/// needs α²n² + m² = α²i² = j².
struct Resonant4 {
    TaylorQuadrupole base;
    int i = 1, j = 1;
    double c5 = 0.0, c6 = 0.0, c7 = 0.0, c8 = 0.0;
};

/// dν·√α/(√2π)·e^{-(α²+1)νt} sin(αx + y), α ≥ 1; its L2 norm at t = 0 is dν.
struct RemarkCounterexample {
    double d = 1.0;
    AlphaSq alpha_sq{4, 1};
};

/// -a cos y - e^{-νt} cos y
struct BasicNonstationary {
    int a = 1;
};

} // namespace family

using ExactFamily = std::variant<family::Unidirectional, family::ExtendedLowMode, family::BarFlow,
                                 family::TaylorQuadrupole, family::Resonant3, family::Resonant4,
                                 family::RemarkCounterexample, family::BasicNonstationary>;

struct ExactSpec {
    ExactFamily family;
    double nu = 0.01;

    std::string tag() const;
    /// Forcing amplitude a of the Navier-Stokes equation this solution satisfies.
    int forcing() const;
    /// α required by the family, or 0 when any α is admissible.
    double required_alpha() const;
    int required_beta_inv() const;
    /// Default grid (128 × 128) on the family's domain.
    TorusConfig default_grid(int nx = 128, int ny = 128) const;
};

struct Violation {
    std::string condition;
    std::string detail;
};

/// Empty iff every arithmetic condition of the family holds exactly.
std::vector<Violation> validate(const ExactSpec& spec);

/// The exact coefficient field at time t. Throws IncompatibleDomain if the grid does not match
/// the family's domain or a mode falls outside the dealias set; ResonanceViolated if validate fails.
SpectralField eval(const ExactSpec& spec, double t, const TorusConfig& grid);

/// Direct pointwise evaluation of the closed-form expression.
double sample(const ExactSpec& spec, double t, double x, double y);

/// ‖J(Δ⁻¹w, w)‖ / ‖w‖² at w = eval(spec, t, grid).
double euler_stationarity_residual(const ExactSpec& spec, double t, const TorusConfig& grid);
double euler_stationarity_residual(const SpectralField& w);

struct ModeRate {
    int j;
    int m;
    double rate;
};

/// Decay rate ν|k|² of every time-dependent mode (one entry per conjugate pair, m > 0 or m = 0, j > 0).
std::vector<ModeRate> analytic_rates(const ExactSpec& spec);

} // namespace kolmo
