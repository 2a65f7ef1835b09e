#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kolmo/field.hpp"
#include "kolmo/models.hpp"

namespace kolmo {

struct StepperConfig {
    double dt = 0.01;
    double t_end = 1.0;
    int sample_every = 1; // steps between stored states
    double cfl_safety = 0.5;

    void validate() const;
};

/// Scalar diagnostics recorded after every step.
struct Tracks {
    std::vector<double> t;
    std::vector<double> l2;
    std::vector<double> x_sq;     // ∫ w (1 + Δ⁻¹) w
    std::vector<double> gradx_sq; // ∫ -Δw (1 + Δ⁻¹) w
    std::vector<std::uint8_t> x_defined; // no populated mode with |k| <= 1

    std::size_t size() const { return t.size(); }
};

struct Trajectory {
    ModelSpec model;
    std::vector<double> times; // times of stored states; starts at 0
    std::vector<SpectralField> states;
    Tracks tracks;
    /// States at the requested capture times, in request order.
    std::vector<SpectralField> captures;

    const SpectralField& final_state() const { return states.back(); }
};

/// Integrating-factor RK4 for one model on one grid. Exponential tables are built once.
class Stepper {
public:
    Stepper(const ModelSpec& spec, const TorusConfig& grid);

    /// Advances w from t to t + dt. Throws NonFiniteError if any coefficient overflows.
    SpectralField step(double t, double dt, const SpectralField& w) const;

    const ModelSpec& model() const { return spec_; }

private:
    void exponentials(double dt) const;

    ModelSpec spec_;
    TorusConfig grid_;
    std::vector<double> symbol_;
    mutable double cached_dt_ = -1.0;
    mutable std::vector<double> full_, half_;
};

SpectralField step(const ModelSpec& spec, double t, double dt, const SpectralField& w);

/// Observer invoked at t = 0 and after every step.
using StepObserver = std::function<void(double t, const SpectralField& w)>;

/// Repeated steps from 0 to t_end; the last step (and any step crossing a capture time) is
/// shortened to land exactly on it. Stores tracks every step, states every sample_every steps
/// plus the initial and final state.
Trajectory integrate(const ModelSpec& spec, const SpectralField& w0, const StepperConfig& stepper,
                     const std::vector<double>& capture_times = {}, const StepObserver& observer = {});

/// min(default_dt, cfl_safety·h_min/u_max) with u_max the peak speed of w0 plus the basic flow.
double choose_dt(const ModelSpec& spec, const SpectralField& w0, double cfl_safety = 0.5, double default_dt = 0.01);

} // namespace kolmo
