#include "kolmo/field.hpp"

#include <algorithm>
#include <cmath>

#include "kolmo/errors.hpp"

namespace kolmo {

SpectralField::SpectralField(const TorusConfig& config) : config_(config), coeffs_(config.size()) {}

void SpectralField::set_mode(int j, int m, Complex value) {
    if (!representable(j, m))
        throw Error(ErrorKind::IncompatibleDomain,
                    "mode (" + std::to_string(j) + "," + std::to_string(m) + ") does not fit the grid");
    if (j == 0 && m == 0) {
        if (std::abs(value) != 0.0) throw Error(ErrorKind::MeanNotZero, "cannot set the (0,0) mode");
        return;
    }
    (*this)(j, m) = value;
    (*this)(-j, -m) = std::conj(value);
}

void SpectralField::add_mode(int j, int m, Complex value) {
    if (!representable(j, m))
        throw Error(ErrorKind::IncompatibleDomain,
                    "mode (" + std::to_string(j) + "," + std::to_string(m) + ") does not fit the grid");
    if (j == 0 && m == 0) return;
    (*this)(j, m) += value;
    (*this)(-j, -m) += std::conj(value);
}

double SpectralField::k2_at(int ix, int iy) const {
    const double kx = config_.alpha * mode_j(ix);
    const double ky = config_.beta() * mode_m(iy);
    return kx * kx + ky * ky;
}

void SpectralField::truncate() {
    const int kx = config_.kmax_x(), ky = config_.kmax_y();
    for (int ix = 0; ix < config_.nx; ++ix) {
        const bool row_out = std::abs(mode_j(ix)) > kx;
        for (int iy = 0; iy < config_.ny; ++iy) {
            if (row_out || std::abs(mode_m(iy)) > ky) coeffs_[static_cast<std::size_t>(ix) * config_.ny + iy] = 0.0;
        }
    }
    coeffs_[0] = 0.0;
}

void SpectralField::symmetrize() {
    for (int ix = 0; ix < config_.nx; ++ix) {
        const int j = mode_j(ix);
        for (int iy = 0; iy < config_.ny; ++iy) {
            const int m = mode_m(iy);
            if (!representable(j, m)) {
                coeffs_[index(j, m)] = 0.0;
                continue;
            }
            // visit each pair once
            if (j > 0 || (j == 0 && m > 0)) {
                const Complex avg = 0.5 * (coeffs_[index(j, m)] + std::conj(coeffs_[index(-j, -m)]));
                coeffs_[index(j, m)] = avg;
                coeffs_[index(-j, -m)] = std::conj(avg);
            }
        }
    }
    coeffs_[0] = 0.0;
}

double SpectralField::max_abs() const {
    double r = 0.0;
    for (const auto& c : coeffs_) r = std::max(r, std::abs(c));
    return r;
}

bool SpectralField::all_finite() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_config(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_config(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
    require_same_config(*this, other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
    return *this;
}

void require_same_config(const SpectralField& a, const SpectralField& b) {
    if (!(a.config() == b.config())) throw Error(ErrorKind::ConfigMismatch, "fields live on different grids");
}

} // namespace kolmo
