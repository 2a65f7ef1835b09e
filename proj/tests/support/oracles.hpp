#pragma once

// Independent reference computations for the tests. Nothing here calls the FFT path.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "kolmo/field.hpp"

namespace kolmo::oracle {

struct Mode {
    int j, m;
    Complex c;
};

inline std::vector<Mode> populated(const SpectralField& f) {
    std::vector<Mode> out;
    const auto& g = f.config();
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
            const Complex c = f.coeffs()[static_cast<std::size_t>(ix) * g.ny + iy];
            if (c != Complex{}) out.push_back({f.mode_j(ix), f.mode_m(iy), c});
        }
    return out;
}

/// Σ c_{jm} e^{i(αjx + βmy)} summed term by term.
inline double direct_sum(const SpectralField& f, double x, double y) {
    const auto& g = f.config();
    Complex s{};
    for (const auto& md : populated(f)) s += md.c * std::exp(Complex(0.0, g.alpha * md.j * x + g.beta() * md.m * y));
    return s.real();
}

/// J(φ, ϕ) as the explicit double sum over mode pairs, kept on the dealias set.
inline SpectralField convolution_jacobian(const SpectralField& phi, const SpectralField& varphi) {
    const auto& g = phi.config();
    const double a = g.alpha, b = g.beta();
    const Complex I{0.0, 1.0};
    SpectralField out(g);
    const auto p = populated(phi);
    const auto q = populated(varphi);
    for (const auto& u : p)
        for (const auto& v : q) {
            const int j = u.j + v.j, m = u.m + v.m;
            if (!out.in_dealias_set(j, m) || (j == 0 && m == 0)) continue;
            const Complex px = I * (a * u.j) * u.c, py = I * (b * u.m) * u.c;
            const Complex qx = I * (a * v.j) * v.c, qy = I * (b * v.m) * v.c;
            out(j, m) += px * qy - py * qx;
        }
    return out;
}

/// Real field with Gaussian coefficients on |j|, |m| <= half_box (mean excluded).
inline SpectralField random_box(const TorusConfig& g, int half_box, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    SpectralField f(g);
    for (int j = 0; j <= half_box; ++j)
        for (int m = -half_box; m <= half_box; ++m) {
            if (j == 0 && m <= 0) continue;
            f.set_mode(j, m, {gauss(rng), gauss(rng)});
        }
    return f;
}

/// Periodic rectangle rule ∫ f g over the torus; exact for band-limited products on the grid.
inline double quadrature(const std::vector<double>& f, const std::vector<double>& g, const TorusConfig& c) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * g[k];
    return s * c.dx() * c.dy();
}

} // namespace kolmo::oracle
