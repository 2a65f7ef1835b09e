#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kolmo/field.hpp"

namespace kolmo {

enum class Variant {
    NonlinearNS,          // full vorticity equation with forcing -νa cos y
    Perturbed,            // perturbation of -a cos y - e^{-νt} cos y, nonlinearity switched by sigma
    LinearizedDecaying,   // around -e^{-νt} cos y
    LinearizedKolmogorov, // around -a cos y
    LinearizedCombined,   // around -a cos y - e^{-νt} cos y
    LinearizedEuler,      // inviscid, frozen coefficient a + 1
};

std::string_view to_string(Variant v);
/// Accepts the snake_case names used in config files ("nonlinear_ns", "perturbed", ...).
Variant variant_from_string(std::string_view name);

struct ModelSpec {
    Variant variant = Variant::NonlinearNS;
    int sigma = 1; // Perturbed only
    int a = 0;
    double nu = 0.01;

    /// Viscosity seen by the diffusion term; zero for LinearizedEuler.
    double effective_nu() const { return variant == Variant::LinearizedEuler ? 0.0 : nu; }
    /// Peak speed of the sin y advecting profile implied by the variant.
    double basic_flow_amplitude() const;

    void validate() const;
};

/// -ν|k|² per stored mode, in SpectralField storage order.
std::vector<double> diffusion_symbol(const ModelSpec& spec, const TorusConfig& grid);

/// Everything except the diffusion term.
SpectralField nonstiff_rhs(const ModelSpec& spec, double t, const SpectralField& w);

} // namespace kolmo
