#pragma once

#include <complex>
#include <cstdlib>
#include <span>
#include <vector>

#include "kolmo/torus.hpp"

namespace kolmo {

using Complex = std::complex<double>;

/// Fourier coefficients of a real, mean-zero field on the torus.
///
/// Coefficient (j, m) multiplies exp(i(αjx + βmy)); a unit-amplitude cosine has
/// the coefficient pair 1/2. Storage is row-major over (j, m) in FFT order, so
/// j ∈ [-nx/2, nx/2) lives at index (j mod nx). Nyquist modes are kept at zero so
/// every stored mode has its conjugate partner.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const TorusConfig& config);

    const TorusConfig& config() const { return config_; }

    Complex& operator()(int j, int m) { return coeffs_[index(j, m)]; }
    const Complex& operator()(int j, int m) const { return coeffs_[index(j, m)]; }

    /// Sets (j, m) and its conjugate partner (-j, -m).
    void set_mode(int j, int m, Complex value);
    /// Adds to (j, m) and the conjugate partner.
    void add_mode(int j, int m, Complex value);

    std::span<Complex> coeffs() { return coeffs_; }
    std::span<const Complex> coeffs() const { return coeffs_; }

    std::size_t index(int j, int m) const {
        const int ix = j < 0 ? j + config_.nx : j;
        const int iy = m < 0 ? m + config_.ny : m;
        return static_cast<std::size_t>(ix) * static_cast<std::size_t>(config_.ny) + static_cast<std::size_t>(iy);
    }
    int mode_j(int ix) const { return ix < config_.nx / 2 ? ix : ix - config_.nx; }
    int mode_m(int iy) const { return iy < config_.ny / 2 ? iy : iy - config_.ny; }

    /// Physical |k|² = (αj)² + (βm)² of the mode at storage position (ix, iy).
    double k2_at(int ix, int iy) const;

    bool in_dealias_set(int j, int m) const {
        return std::abs(j) <= config_.kmax_x() && std::abs(m) <= config_.kmax_y();
    }
    bool representable(int j, int m) const {
        return std::abs(j) < config_.nx / 2 && std::abs(m) < config_.ny / 2;
    }

    /// Zeroes every mode outside the dealias set, the mean, and the Nyquist lines.
    void truncate();
    /// Replaces each pair by its Hermitian average so the field is exactly real.
    void symmetrize();

    double max_abs() const;
    bool all_finite() const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double s);
    /// this += s·other
    SpectralField& axpy(double s, const SpectralField& other);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

private:
    TorusConfig config_;
    std::vector<Complex> coeffs_;
};

/// Real samples on the uniform collocation grid, row-major [ix][iy] with x_i = i·lx/nx.
struct PhysicalField {
    TorusConfig config;
    std::vector<double> values;

    PhysicalField() = default;
    explicit PhysicalField(const TorusConfig& c) : config(c), values(c.size(), 0.0) {}

    double& operator()(int ix, int iy) { return values[static_cast<std::size_t>(ix) * config.ny + iy]; }
    double operator()(int ix, int iy) const { return values[static_cast<std::size_t>(ix) * config.ny + iy]; }
    double x(int ix) const { return ix * config.dx(); }
    double y(int iy) const { return iy * config.dy(); }
};

void require_same_config(const SpectralField& a, const SpectralField& b);

} // namespace kolmo
