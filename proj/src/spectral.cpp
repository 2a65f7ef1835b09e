#include "kolmo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "fft.hpp"
#include "kolmo/errors.hpp"

namespace kolmo {

namespace {

constexpr Complex I{0.0, 1.0};

int wrap(int k, int n) { return k < 0 ? k + n : k; }

// Scatters the m >= 0 half of f (restricted to |j| <= jmax, m <= mmax) into an n0 × (n1/2+1)
// half-complex buffer, multiplying each coefficient by weight(j, m).
template <class Weight>
void scatter_half(const SpectralField& f, int n0, int n1, int jmax, int mmax, Weight weight,
                  detail::HalfBuffer& half) {
    const int h = n1 / 2 + 1;
    half.assign(static_cast<std::size_t>(n0) * h, Complex{});
    for (int j = -jmax; j <= jmax; ++j) {
        const std::size_t row = static_cast<std::size_t>(wrap(j, n0)) * h;
        for (int m = 0; m <= mmax; ++m) half[row + m] = weight(j, m) * f(j, m);
    }
}

double k2(const TorusConfig& c, int j, int m) {
    const double kx = c.alpha * j, ky = c.beta() * m;
    return kx * kx + ky * ky;
}

// Applies a per-mode multiplier to every stored coefficient.
template <class Multiplier>
SpectralField apply_diagonal(const SpectralField& f, Multiplier mult) {
    SpectralField out(f.config());
    const auto& c = f.config();
    auto src = f.coeffs();
    auto dst = out.coeffs();
    for (int ix = 0; ix < c.nx; ++ix) {
        const int j = f.mode_j(ix);
        for (int iy = 0; iy < c.ny; ++iy) {
            const std::size_t k = static_cast<std::size_t>(ix) * c.ny + iy;
            if (src[k] != Complex{}) dst[k] = mult(j, f.mode_m(iy)) * src[k];
        }
    }
    dst[0] = 0.0;
    return out;
}

// Σ weight(k)·|c_k|² · area
template <class Weight>
double weighted_sum(const SpectralField& w, Weight weight) {
    const auto& c = w.config();
    auto src = w.coeffs();
    double s = 0.0;
    for (int ix = 0; ix < c.nx; ++ix) {
        for (int iy = 0; iy < c.ny; ++iy) {
            const Complex v = src[static_cast<std::size_t>(ix) * c.ny + iy];
            if (v == Complex{}) continue;
            s += weight(w.k2_at(ix, iy)) * std::norm(v);
        }
    }
    return s * c.area();
}

// (j, m) of the first populated mode with |k|² ≤ 1, or (0, 0) if there is none
std::pair<int, int> find_degenerate(const SpectralField& w) {
    const double scale = w.max_abs();
    if (scale == 0.0) return {0, 0};
    const auto& c = w.config();
    auto src = w.coeffs();
    for (int ix = 0; ix < c.nx; ++ix) {
        for (int iy = 0; iy < c.ny; ++iy) {
            if (ix == 0 && iy == 0) continue;
            if (w.k2_at(ix, iy) <= 1.0 + 1e-12 && std::abs(src[static_cast<std::size_t>(ix) * c.ny + iy]) > 1e-14 * scale)
                return {w.mode_j(ix), w.mode_m(iy)};
        }
    }
    return {0, 0};
}

void check_degenerate(const SpectralField& w) {
    const auto [j, m] = find_degenerate(w);
    if (j != 0 || m != 0)
        throw Error(ErrorKind::DegenerateMode, "mode (" + std::to_string(j) + "," + std::to_string(m) +
                                                   ") with |k|<=1 is populated; 1+Δ⁻¹ is not positive there");
}

} // namespace

PhysicalField to_physical(const SpectralField& f) {
    const auto& c = f.config();
    const auto& fft = detail::fft_for(c.nx, c.ny);
    detail::HalfBuffer half;
    detail::RealBuffer real;
    scatter_half(f, c.nx, c.ny, c.nx / 2 - 1, c.ny / 2 - 1, [](int, int) { return 1.0; }, half);
    fft.inverse(half, real);
    PhysicalField g(c);
    g.values.assign(real.begin(), real.end());
    return g;
}

SpectralField to_spectral(const PhysicalField& g, bool strict) {
    const auto& c = g.config;
    c.validate();
    for (double v : g.values)
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "physical field has non-finite entries");
    const auto& fft = detail::fft_for(c.nx, c.ny);
    const detail::RealBuffer real(g.values.begin(), g.values.end());
    detail::HalfBuffer half;
    fft.forward(real, half);
    const double norm = 1.0 / static_cast<double>(c.size());
    const int h = fft.half();

    SpectralField f(c);
    for (int ix = 0; ix < c.nx; ++ix) {
        const int j = f.mode_j(ix);
        if (std::abs(j) >= c.nx / 2) continue;
        for (int m = 0; m < c.ny / 2; ++m) {
            const Complex v = half[static_cast<std::size_t>(ix) * h + m] * norm;
            f(j, m) = v;
            if (m > 0) f(-j, -m) = std::conj(v);
        }
    }
    // the m = 0 line must itself be Hermitian in j
    for (int j = 1; j < c.nx / 2; ++j) {
        const Complex avg = 0.5 * (f(j, 0) + std::conj(f(-j, 0)));
        f(j, 0) = avg;
        f(-j, 0) = std::conj(avg);
    }

    const double mean = std::abs(f(0, 0));
    const double scale = f.max_abs();
    if (mean > 1e-10 * std::max(scale, 1e-300) && mean > 0.0) {
        if (strict) throw Error(ErrorKind::MeanNotZero, "field mean " + std::to_string(f(0, 0).real()) + " is not zero");
        std::cerr << "warning: dropping nonzero field mean " << f(0, 0).real() << '\n';
    }
    f(0, 0) = 0.0;
    return f;
}

SpectralField laplacian(const SpectralField& f) {
    const auto& c = f.config();
    return apply_diagonal(f, [&](int j, int m) { return -k2(c, j, m); });
}

SpectralField inv_laplacian(const SpectralField& f) {
    const auto& c = f.config();
    return apply_diagonal(f, [&](int j, int m) { return (j == 0 && m == 0) ? 0.0 : -1.0 / k2(c, j, m); });
}

SpectralField dx(const SpectralField& f) {
    const double a = f.config().alpha;
    return apply_diagonal(f, [&](int j, int) { return I * (a * j); });
}

SpectralField dy(const SpectralField& f) {
    const double b = f.config().beta();
    return apply_diagonal(f, [&](int, int m) { return I * (b * m); });
}

std::pair<SpectralField, SpectralField> velocity_from_vorticity(const SpectralField& w) {
    SpectralField psi = inv_laplacian(w);
    psi *= -1.0;
    SpectralField u2 = dx(psi);
    u2 *= -1.0;
    return {dy(psi), std::move(u2)};
}

SpectralField jacobian(const SpectralField& phi, const SpectralField& varphi) {
    require_same_config(phi, varphi);
    const auto& c = phi.config();
    const int px = c.padded_nx(), py = c.padded_ny();
    const int jx = c.kmax_x(), jy = c.kmax_y();
    const double a = c.alpha, b = c.beta();
    const auto& fft = detail::fft_for(px, py);

    thread_local detail::HalfBuffer half;
    thread_local detail::RealBuffer phi_x, phi_y, var_x, var_y;
    auto ddx = [&](int j, int) { return I * (a * j); };
    auto ddy = [&](int, int m) { return I * (b * m); };
    scatter_half(phi, px, py, jx, jy, ddx, half);
    fft.inverse(half, phi_x);
    scatter_half(phi, px, py, jx, jy, ddy, half);
    fft.inverse(half, phi_y);
    scatter_half(varphi, px, py, jx, jy, ddx, half);
    fft.inverse(half, var_x);
    scatter_half(varphi, px, py, jx, jy, ddy, half);
    fft.inverse(half, var_y);

    for (std::size_t k = 0; k < phi_x.size(); ++k) phi_x[k] = phi_x[k] * var_y[k] - phi_y[k] * var_x[k];
    fft.forward(phi_x, half);

    const double norm = 1.0 / (static_cast<double>(px) * py);
    const int h = fft.half();
    SpectralField out(c);
    for (int j = -jx; j <= jx; ++j) {
        const std::size_t row = static_cast<std::size_t>(wrap(j, px)) * h;
        for (int m = 0; m <= jy; ++m) {
            const Complex v = half[row + m] * norm;
            out(j, m) = v;
            if (m > 0) out(-j, -m) = std::conj(v);
        }
    }
    for (int j = 1; j <= jx; ++j) {
        const Complex avg = 0.5 * (out(j, 0) + std::conj(out(-j, 0)));
        out(j, 0) = avg;
        out(-j, 0) = std::conj(avg);
    }
    out(0, 0) = 0.0;
    return out;
}

SpectralField mult_sin_y_dx_oneplus(const SpectralField& w) {
    const auto& c = w.config();
    const double a = c.alpha;
    // g = ∂x (1 + Δ⁻¹) w
    SpectralField g = apply_diagonal(w, [&](int j, int m) {
        if (j == 0) return Complex{};
        return I * (a * j) * (1.0 - 1.0 / k2(c, j, m));
    });

    // sin y = (e^{iy} - e^{-iy}) / 2i shifts m by ±beta_inv
    const int s = c.beta_inv;
    const int jx = c.kmax_x(), jy = c.kmax_y();
    const int mlim = c.ny / 2 - 1;
    const Complex half_over_i = 1.0 / (2.0 * I);
    SpectralField out(c);
    for (int j = -jx; j <= jx; ++j) {
        if (j == 0) continue;
        for (int m = -jy; m <= jy; ++m) {
            Complex v{};
            if (m - s >= -mlim) v += g(j, m - s);
            if (m + s <= mlim) v -= g(j, m + s);
            out(j, m) = v * half_over_i;
        }
    }
    return out;
}

SpectralField project_ne0(const SpectralField& w) {
    SpectralField out = w;
    for (int m = -(w.config().ny / 2); m < w.config().ny / 2; ++m) out(0, m) = 0.0;
    return out;
}

SpectralField project_K(const SpectralField& w) {
    SpectralField out(w.config());
    const int s = w.config().beta_inv;
    if (w.representable(0, s)) {
        out(0, s) = w(0, s);
        out(0, -s) = w(0, -s);
    }
    return out;
}

SpectralField project_a(const SpectralField& w) {
    if (std::abs(w.config().alpha - 1.0) > 1e-14)
        throw Error(ErrorKind::WrongAspect, "P_a is defined on the square torus (alpha = 1)");
    SpectralField out(w.config());
    out(1, 0) = w(1, 0);
    out(-1, 0) = w(-1, 0);
    return out;
}

SpectralField project_N(const SpectralField& w, double lambda_cut) {
    if (!(lambda_cut > 0.0)) throw Error(ErrorKind::InvalidArgument, "lambda_cut must be positive");
    const double scale = w.max_abs();
    for (int m = -(w.config().ny / 2); m < w.config().ny / 2; ++m)
        if (std::abs(w(0, m)) > 1e-14 * scale)
            throw Error(ErrorKind::NotInX, "field has x-averaged content at m=" + std::to_string(m));
    const auto& c = w.config();
    return apply_diagonal(w, [&](int j, int m) { return (j != 0 && k2(c, j, m) <= lambda_cut) ? 1.0 : 0.0; });
}

double inner(const SpectralField& f, const SpectralField& g) {
    require_same_config(f, g);
    auto a = f.coeffs();
    auto b = g.coeffs();
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] * std::conj(b[k])).real();
    return s * f.config().area();
}

double l2_norm(const SpectralField& w) {
    return std::sqrt(weighted_sum(w, [](double) { return 1.0; }));
}

double x_form(const SpectralField& w) {
    return weighted_sum(w, [](double q) { return 1.0 - 1.0 / q; });
}

double grad_x_form(const SpectralField& w) {
    return weighted_sum(w, [](double q) { return q - 1.0; });
}

double x_norm(const SpectralField& w) {
    check_degenerate(w);
    return std::sqrt(std::max(0.0, x_form(w)));
}

bool x_norm_defined(const SpectralField& w) {
    const auto [j, m] = find_degenerate(w);
    return j == 0 && m == 0;
}

double grad_x_norm_sq(const SpectralField& w) {
    check_degenerate(w);
    return grad_x_form(w);
}

} // namespace kolmo
