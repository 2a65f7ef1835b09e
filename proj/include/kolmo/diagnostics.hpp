#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kolmo/exact.hpp"
#include "kolmo/integrator.hpp"

namespace kolmo {

struct DecayFit {
    double rate = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    double residual = 0.0; // max |log misfit|
    std::string series_id;
};

/// Least-squares slope of log(value) over t ∈ [t_lo, t_hi], negated. Needs ≥ 10 samples.
DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> value, double t_lo, double t_hi,
                        std::string series_id = {});

/// max over consecutive samples of |Δ x_sq + 2ν ∫ gradx_sq dt| / x_sq(0), trapezoid in time.
double energy_identity_residual(const Trajectory& traj, double nu);

/// Seeded Gaussian field in X on the modes with k2_min ≤ |k|² ≤ k2_max, unit L2 norm.
/// `stream` selects an independent substream of `seed`.
SpectralField random_band_limited(const TorusConfig& grid, std::uint64_t seed, std::uint64_t stream = 0,
                                  double k2_min = 0.0, double k2_max = 16.0);

enum class AmplitudeRule {
    UnitL2,  // initial perturbation normalized to L2 norm 1
    MatchNu, // initial perturbation normalized to L2 norm ν
};

struct SweepConfig {
    ModelSpec model{Variant::LinearizedCombined, 0, 0, 0.0}; // nu is overwritten per run
    double alpha = 2.0;
    int nx = 128, ny = 128;
    double tau = 1.0;
    double delta = 0.5;
    std::vector<double> nus;
    std::uint64_t seed = 1;
    double k2_max = 16.0;
    AmplitudeRule amplitude = AmplitudeRule::UnitL2;
    double dt = 0.01;
    int workers = 1;
    /// Replaces the random draw when set (must live on the sweep grid).
    std::optional<SpectralField> initial;
    /// Keep per-run tracks (for CSV export).
    bool keep_tracks = false;
};

struct SweepRun {
    double nu;
    double ratio;
    Tracks tracks;
};

struct SweepReport {
    SweepConfig config;
    std::vector<double> nus;
    std::vector<double> ratios; // ‖P≠0 ω(τ/ν)‖ / ‖P≠0 ω(0)‖
    std::vector<SweepRun> runs;
    std::string initial_data;
    bool monotone = false;       // strictly decreasing along nus
    bool below_delta = false;    // ratio at the smallest ν < δ
};

/// Integrates the configured model to t = τ/ν for each ν and records the damping ratio.
SweepReport enhanced_damping_sweep(const SweepConfig& config);

struct CounterexampleChecks {
    bool ratio_matches = false;      // measured vs e^{-(α²+1)τ} within 1e-6 relative
    bool hypothesis_holds = false;   // ‖(I-P_K)ω(0)‖ = ‖ω(0)‖ = dν to 1e-12
    bool projection_invariant = false; // P≠0 ω(0) = ω(0)
    bool improvement_fails = false;  // ‖P≠0ω(τ/ν)‖ ≥ δ‖P≠0ω(0)‖
    // square torus only
    std::optional<bool> pa_zero;     // max_t ‖P_a ω‖ ≤ 1e-12 ‖ω(0)‖
    std::optional<bool> pa_bound_fails;  // max_t ‖P_a ω‖ < M ‖P≠0ω(0)‖, M = 1
    std::optional<bool> inf_bound_fails; // inf_t ‖(I-P_a)P≠0 ω‖ ≥ δ ‖P≠0ω(0)‖
};

struct CounterexampleReport {
    double d = 1.0, alpha = 2.0, tau = 1.0, nu = 0.01;
    double delta = 0.0;
    double measured_ratio = 0.0;
    double predicted_ratio = 0.0;
    double initial_norm = 0.0;
    double initial_perp_k_norm = 0.0;
    double max_pa_norm = 0.0;
    double min_perp_a_norm = 0.0;
    CounterexampleChecks checks;

    bool passed() const;
};

CounterexampleReport counterexample_check(double d, const AlphaSq& alpha_sq, double tau, double nu,
                                          const TorusConfig& grid, double dt = 0.01);

/// (1/T)∫₀ᵀ ‖P_N ω(t)‖²_X dt / ‖ω(0)‖²_X along the linearized Euler flow; T = 0 gives the t = 0 value.
double rage_time_average(const SpectralField& w0, double lambda_cut, double T, int a, double dt = 0.01);

} // namespace kolmo
