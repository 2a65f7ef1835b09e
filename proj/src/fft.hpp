#pragma once

// Thin FFTW wrapper: real <-> half-complex transforms on an n0 × n1 row-major grid.

#include <complex>
#include <cstdlib>
#include <new>
#include <vector>

namespace kolmo::detail {

template <class T>
struct SimdAllocator {
    using value_type = T;
    static constexpr std::size_t kAlign = 64;

    SimdAllocator() = default;
    template <class U>
    SimdAllocator(const SimdAllocator<U>&) {}

    T* allocate(std::size_t n) {
        const std::size_t bytes = (n * sizeof(T) + kAlign - 1) / kAlign * kAlign;
        if (void* p = std::aligned_alloc(kAlign, bytes)) return static_cast<T*>(p);
        throw std::bad_alloc();
    }
    void deallocate(T* p, std::size_t) { std::free(p); }

    template <class U>
    bool operator==(const SimdAllocator<U>&) const { return true; }
};

using RealBuffer = std::vector<double, SimdAllocator<double>>;
using HalfBuffer = std::vector<std::complex<double>, SimdAllocator<std::complex<double>>>;

class RealFft2d {
public:
    RealFft2d(int n0, int n1);

    int n0() const { return n0_; }
    int n1() const { return n1_; }
    int half() const { return n1_ / 2 + 1; }

    /// in: n0 × half complex (destroyed); out: n0 × n1 real, unnormalized Σ c e^{+ik·x}.
    void inverse(HalfBuffer& in, RealBuffer& out) const;
    /// in: n0 × n1 real (preserved); out: n0 × half complex, unnormalized Σ g e^{-ik·x}.
    void forward(const RealBuffer& in, HalfBuffer& out) const;

private:
    int n0_, n1_;
    void* forward_plan_;
    void* inverse_plan_;
};

/// Process-wide cache; plans are created once per size under a lock and are safe to share.
const RealFft2d& fft_for(int n0, int n1);

} // namespace kolmo::detail
