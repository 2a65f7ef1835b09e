#include "kolmo/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "kolmo/errors.hpp"
#include "kolmo/spectral.hpp"

namespace kolmo {

void StepperConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorKind::InvalidArgument, "t_end must be positive");
    if (dt > t_end) throw Error(ErrorKind::InvalidArgument, "dt must not exceed t_end");
    if (sample_every < 1) throw Error(ErrorKind::InvalidArgument, "sample_every must be >= 1");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw Error(ErrorKind::InvalidArgument, "cfl_safety must lie in (0, 1]");
}

namespace {

// dst = scale ⊙ src
void scaled(std::span<const double> scale, const SpectralField& src, SpectralField& dst) {
    auto s = src.coeffs();
    auto d = dst.coeffs();
    for (std::size_t k = 0; k < s.size(); ++k) d[k] = scale[k] * s[k];
}

} // namespace

Stepper::Stepper(const ModelSpec& spec, const TorusConfig& grid)
    : spec_(spec), grid_(grid), symbol_(diffusion_symbol(spec, grid)) {
    spec_.validate();
}

void Stepper::exponentials(double dt) const {
    if (dt == cached_dt_) return;
    full_.resize(symbol_.size());
    half_.resize(symbol_.size());
    for (std::size_t k = 0; k < symbol_.size(); ++k) {
        full_[k] = std::exp(symbol_[k] * dt);
        half_[k] = std::exp(symbol_[k] * dt * 0.5);
    }
    cached_dt_ = dt;
}

SpectralField Stepper::step(double t, double dt, const SpectralField& w) const {
    if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt must be positive");
    if (!(w.config() == grid_)) throw Error(ErrorKind::ConfigMismatch, "field grid differs from the stepper grid");
    exponentials(dt);
    const double h = 0.5 * dt;

    const SpectralField k1 = nonstiff_rhs(spec_, t, w);

    SpectralField ew_half(grid_);
    scaled(half_, w, ew_half);

    SpectralField stage = w;
    stage.axpy(h, k1);
    scaled(half_, SpectralField(stage), stage);
    const SpectralField k2 = nonstiff_rhs(spec_, t + h, stage);

    stage = ew_half;
    stage.axpy(h, k2);
    const SpectralField k3 = nonstiff_rhs(spec_, t + h, stage);

    SpectralField ew(grid_);
    scaled(full_, w, ew);
    scaled(half_, k3, stage);
    stage *= dt;
    stage += ew;
    const SpectralField k4 = nonstiff_rhs(spec_, t + dt, stage);

    // w+ = E w + dt/6 (E k1 + 2 E_h (k2 + k3) + k4)
    SpectralField out = ew;
    auto o = out.coeffs();
    auto a1 = k1.coeffs();
    auto a2 = k2.coeffs();
    auto a3 = k3.coeffs();
    auto a4 = k4.coeffs();
    const double c = dt / 6.0;
    for (std::size_t k = 0; k < o.size(); ++k)
        o[k] += c * (full_[k] * a1[k] + 2.0 * half_[k] * (a2[k] + a3[k]) + a4[k]);

    if (!out.all_finite()) throw NonFiniteError(t + dt, "integration produced a non-finite coefficient");
    return out;
}

SpectralField step(const ModelSpec& spec, double t, double dt, const SpectralField& w) {
    return Stepper(spec, w.config()).step(t, dt, w);
}

namespace {

void record(Tracks& tr, double t, const SpectralField& w) {
    tr.t.push_back(t);
    tr.l2.push_back(l2_norm(w));
    tr.x_sq.push_back(x_form(w));
    tr.gradx_sq.push_back(grad_x_form(w));
    tr.x_defined.push_back(x_norm_defined(w) ? 1 : 0);
}

} // namespace

Trajectory integrate(const ModelSpec& spec, const SpectralField& w0, const StepperConfig& stepper,
                     const std::vector<double>& capture_times, const StepObserver& observer) {
    stepper.validate();
    w0.config().validate();
    for (double tc : capture_times)
        if (tc < 0.0 || tc > stepper.t_end) throw Error(ErrorKind::InvalidArgument, "capture time outside [0, t_end]");

    Trajectory traj;
    traj.model = spec;
    traj.captures.resize(capture_times.size());

    // capture order by time, stable w.r.t. the request order
    std::vector<std::size_t> order(capture_times.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return capture_times[a] < capture_times[b]; });
    std::size_t next_capture = 0;

    const Stepper st(spec, w0.config());
    SpectralField w = w0;
    double t = 0.0;
    traj.times.push_back(0.0);
    traj.states.push_back(w);
    record(traj.tracks, t, w);
    if (observer) observer(t, w);
    auto take_captures = [&](double now) {
        while (next_capture < order.size() && capture_times[order[next_capture]] <= now) {
            traj.captures[order[next_capture]] = w;
            ++next_capture;
        }
    };
    take_captures(0.0);

    const double eps = 1e-12 * std::max(1.0, stepper.t_end);
    long steps = 0;
    // t = t_base + n·dt avoids drift from repeated summation
    double t_base = 0.0;
    long n_since_base = 0;
    while (t < stepper.t_end - eps) {
        double target = stepper.t_end;
        if (next_capture < order.size()) target = std::min(target, capture_times[order[next_capture]]);
        double dt = stepper.dt;
        bool land = false;
        if (t_base + (n_since_base + 1) * stepper.dt >= target - eps) {
            dt = target - t;
            land = true;
        }
        w = st.step(t, dt, w);
        if (land) {
            t = t_base = target;
            n_since_base = 0;
        } else {
            t = t_base + (++n_since_base) * stepper.dt;
        }
        ++steps;
        record(traj.tracks, t, w);
        if (observer) observer(t, w);
        take_captures(t);
        const bool last = t >= stepper.t_end - eps;
        if (steps % stepper.sample_every == 0 || last) {
            traj.times.push_back(t);
            traj.states.push_back(w);
        }
    }
    return traj;
}

double choose_dt(const ModelSpec& spec, const SpectralField& w0, double cfl_safety, double default_dt) {
    const auto& c = w0.config();
    const auto [u1, u2] = velocity_from_vorticity(w0);
    const PhysicalField g1 = to_physical(u1);
    const PhysicalField g2 = to_physical(u2);
    double umax = 0.0;
    for (std::size_t k = 0; k < g1.values.size(); ++k) umax = std::max(umax, std::hypot(g1.values[k], g2.values[k]));
    umax += spec.basic_flow_amplitude();
    if (umax == 0.0) return default_dt;
    const double h = std::min(c.dx(), c.dy());
    return std::min(default_dt, cfl_safety * h / umax);
}

} // namespace kolmo
