#pragma once

#include <cstddef>
#include <numbers>

namespace kolmo {

/// Periodic box [0, 2π/α) × [0, 2π/β) with β = 1/beta_inv, sampled on an nx × ny grid.
///
/// Integer mode (j, m) carries the physical wavenumber (α·j, β·m). Products are
/// dealiased by keeping |j| ≤ kmax_x() and |m| ≤ kmax_y() and evaluating them on
/// a grid of at least 3·kmax + 1 points per direction.
struct TorusConfig {
    double alpha = 1.0;
    int beta_inv = 1;
    int nx = 128;
    int ny = 128;
    double dealias_fraction = 2.0 / 3.0;

    double beta() const { return 1.0 / beta_inv; }
    double lx() const { return 2.0 * std::numbers::pi / alpha; }
    double ly() const { return 2.0 * std::numbers::pi * beta_inv; }
    double area() const { return lx() * ly(); }
    double dx() const { return lx() / nx; }
    double dy() const { return ly() / ny; }

    int kmax_x() const;
    int kmax_y() const;
    int padded_nx() const;
    int padded_ny() const;

    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }

    /// Throws Error(InvalidArgument) naming the offending field.
    void validate() const;

    bool operator==(const TorusConfig&) const = default;
};

} // namespace kolmo
