#include "kolmo/models.hpp"

#include <cmath>

#include "kolmo/errors.hpp"
#include "kolmo/spectral.hpp"

namespace kolmo {

std::string_view to_string(Variant v) {
    switch (v) {
    case Variant::NonlinearNS: return "nonlinear_ns";
    case Variant::Perturbed: return "perturbed";
    case Variant::LinearizedDecaying: return "linearized_decaying";
    case Variant::LinearizedKolmogorov: return "linearized_kolmogorov";
    case Variant::LinearizedCombined: return "linearized_combined";
    case Variant::LinearizedEuler: return "linearized_euler";
    }
    return "unknown";
}

Variant variant_from_string(std::string_view name) {
    for (Variant v : {Variant::NonlinearNS, Variant::Perturbed, Variant::LinearizedDecaying,
                      Variant::LinearizedKolmogorov, Variant::LinearizedCombined, Variant::LinearizedEuler})
        if (to_string(v) == name) return v;
    throw Error(ErrorKind::InvalidArgument, "unknown model variant '" + std::string(name) + "'");
}

double ModelSpec::basic_flow_amplitude() const {
    switch (variant) {
    case Variant::NonlinearNS: return 0.0;
    case Variant::LinearizedDecaying: return 1.0;
    case Variant::LinearizedKolmogorov: return a;
    case Variant::Perturbed:
    case Variant::LinearizedCombined:
    case Variant::LinearizedEuler: return a + 1.0;
    }
    return 0.0;
}

void ModelSpec::validate() const {
    if (a != 0 && a != 1) throw Error(ErrorKind::InvalidArgument, "a must be 0 or 1");
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw Error(ErrorKind::InvalidArgument, "nu must be nonnegative");
    if (variant == Variant::Perturbed && sigma != 0 && sigma != 1)
        throw Error(ErrorKind::InvalidArgument, "sigma must be 0 or 1");
}

std::vector<double> diffusion_symbol(const ModelSpec& spec, const TorusConfig& grid) {
    const double nu = spec.effective_nu();
    SpectralField probe(grid);
    std::vector<double> sym(grid.size());
    for (int ix = 0; ix < grid.nx; ++ix)
        for (int iy = 0; iy < grid.ny; ++iy)
            sym[static_cast<std::size_t>(ix) * grid.ny + iy] = nu == 0.0 ? 0.0 : -nu * probe.k2_at(ix, iy);
    return sym;
}

namespace {

SpectralField advection(const SpectralField& w) {
    SpectralField out = jacobian(inv_laplacian(w), w);
    out *= -1.0;
    return out;
}

} // namespace

SpectralField nonstiff_rhs(const ModelSpec& spec, double t, const SpectralField& w) {
    const double decay = std::exp(-spec.nu * t);
    switch (spec.variant) {
    case Variant::NonlinearNS: {
        SpectralField out = advection(w);
        if (spec.a != 0 && spec.nu != 0.0) {
            // -νa cos y
            out.add_mode(0, w.config().beta_inv, Complex(-0.5 * spec.nu * spec.a, 0.0));
        }
        return out;
    }
    case Variant::LinearizedDecaying: return -decay * mult_sin_y_dx_oneplus(w);
    case Variant::LinearizedKolmogorov: return -static_cast<double>(spec.a) * mult_sin_y_dx_oneplus(w);
    case Variant::LinearizedCombined: return -(spec.a + decay) * mult_sin_y_dx_oneplus(w);
    case Variant::Perturbed: {
        SpectralField out = -(spec.a + decay) * mult_sin_y_dx_oneplus(w);
        if (spec.sigma != 0) out += advection(w);
        return out;
    }
    case Variant::LinearizedEuler: return -(spec.a + 1.0) * mult_sin_y_dx_oneplus(w);
    }
    throw Error(ErrorKind::InvalidArgument, "unhandled variant");
}

} // namespace kolmo
