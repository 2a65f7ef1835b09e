#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace kolmo::detail {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

// FFTW_ESTIMATE keeps the chosen algorithm, and therefore the rounding, identical from run to run.
RealFft2d::RealFft2d(int n0, int n1) : n0_(n0), n1_(n1) {
    RealBuffer real(static_cast<std::size_t>(n0) * n1);
    HalfBuffer spec(static_cast<std::size_t>(n0) * half());
    auto* c = reinterpret_cast<fftw_complex*>(spec.data());
    const unsigned flags = FFTW_ESTIMATE;
    forward_plan_ = fftw_plan_dft_r2c_2d(n0, n1, real.data(), c, flags);
    inverse_plan_ = fftw_plan_dft_c2r_2d(n0, n1, c, real.data(), flags);
}

void RealFft2d::inverse(HalfBuffer& in, RealBuffer& out) const {
    out.resize(static_cast<std::size_t>(n0_) * n1_);
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(in.data()),
                         out.data());
}

void RealFft2d::forward(const RealBuffer& in, HalfBuffer& out) const {
    out.resize(static_cast<std::size_t>(n0_) * half());
    // r2c does not modify its input
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
}

const RealFft2d& fft_for(int n0, int n1) {
    static std::map<std::pair<int, int>, std::unique_ptr<RealFft2d>> cache;
    std::lock_guard lock(planner_mutex());
    auto& slot = cache[{n0, n1}];
    if (!slot) slot = std::make_unique<RealFft2d>(n0, n1);
    return *slot;
}

} // namespace kolmo::detail
