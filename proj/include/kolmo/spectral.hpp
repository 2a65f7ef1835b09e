#pragma once

#include <utility>

#include "kolmo/field.hpp"

namespace kolmo {

// Transforms -----------------------------------------------------------------

/// Evaluates the trigonometric sum on the nx × ny collocation grid.
PhysicalField to_physical(const SpectralField& f);

/// Forward transform. A nonzero mean is dropped (with a warning on stderr) when it
/// exceeds 1e-10 of the field magnitude; with strict=true it raises MeanNotZero.
SpectralField to_spectral(const PhysicalField& g, bool strict = false);

// Linear operators -------------------------------------------------------------

SpectralField laplacian(const SpectralField& f);
SpectralField inv_laplacian(const SpectralField& f);
SpectralField dx(const SpectralField& f);
SpectralField dy(const SpectralField& f);

/// Velocity (∂yψ, -∂xψ) with ψ = -Δ⁻¹w.
std::pair<SpectralField, SpectralField> velocity_from_vorticity(const SpectralField& w);

/// J(φ, ϕ) = ∂xφ ∂yϕ - ∂yφ ∂xϕ, dealiased pseudo-spectral product.
/// Inputs are read on the dealias set; the result is truncated to it.
SpectralField jacobian(const SpectralField& phi, const SpectralField& varphi);

/// sin y · ∂x (1 + Δ⁻¹) w evaluated exactly in coefficient space.
SpectralField mult_sin_y_dx_oneplus(const SpectralField& w);

// Projections ------------------------------------------------------------------

/// Removes the x-average: zeroes every (0, m) mode.
SpectralField project_ne0(const SpectralField& w);
/// Keeps span{cos y, sin y}.
SpectralField project_K(const SpectralField& w);
/// Keeps span{cos x, sin x}; requires α = 1.
SpectralField project_a(const SpectralField& w);
/// Keeps the modes of X with |k|² ≤ lambda_cut; requires w ∈ X.
SpectralField project_N(const SpectralField& w, double lambda_cut);

// Norms and quadratic forms ----------------------------------------------------

/// (f, g) over the torus.
double inner(const SpectralField& f, const SpectralField& g);
double l2_norm(const SpectralField& w);

/// ∫ w (1 + Δ⁻¹) w. Modes with |k| = 1 carry zero weight; modes with |k| < 1 carry negative weight.
double x_form(const SpectralField& w);
/// ∫ -Δw (1 + Δ⁻¹) w = Σ (|k|² - 1)·|c|²·area.
double grad_x_form(const SpectralField& w);

/// ‖(1 + Δ⁻¹)^{1/2} w‖. Raises DegenerateMode if any mode with |k|² ≤ 1 is populated.
double x_norm(const SpectralField& w);
/// True when no mode with |k|² ≤ 1 is populated, i.e. x_norm will not throw.
bool x_norm_defined(const SpectralField& w);
double grad_x_norm_sq(const SpectralField& w);

} // namespace kolmo
