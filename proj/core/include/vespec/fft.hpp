#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

#include "vespec/grid.hpp"

namespace vespec {

using cplx = std::complex<double>;

/// 64-byte aligned allocator so FFTW plans and field buffers share one
/// alignment class (plans are reused across buffers via the new-array
/// execute interface, which requires it).
template <class T>
struct AlignedAllocator {
    using value_type = T;
    static constexpr std::size_t alignment = 64;

    AlignedAllocator() = default;
    template <class U>
    AlignedAllocator(const AlignedAllocator<U>&) {}

    T* allocate(std::size_t count) {
        return static_cast<T*>(
            ::operator new(count * sizeof(T), std::align_val_t{alignment}));
    }
    void deallocate(T* p, std::size_t) noexcept {
        ::operator delete(p, std::align_val_t{alignment});
    }

    /// resize() on buffers that a transform is about to overwrite should
    /// not pay for zero-filling: default-construct means "leave garbage"
    /// for trivially constructible T.
    template <class U>
    void construct(U* p) {
        if constexpr (!std::is_trivially_default_constructible_v<U>)
            ::new (static_cast<void*>(p)) U();
    }
    template <class U, class... Args>
    void construct(U* p, Args&&... args) {
        ::new (static_cast<void*>(p)) U(std::forward<Args>(args)...);
    }

    template <class U>
    bool operator==(const AlignedAllocator<U>&) const { return true; }
};

using RealBuf = std::vector<double, AlignedAllocator<double>>;
using SpecBuf = std::vector<cplx, AlignedAllocator<cplx>>;

/// Forward/inverse real 3D transforms for one grid size.
///
/// Convention: forward() returns Fourier-series coefficients, i.e. it scales
/// the unnormalized FFTW r2c sum by 1/n^3, so that
///   f(x) = sum_k fhat(k) exp(i k . x)   and   inverse(forward(f)) == f.
/// Plans are created once per grid size with FFTW_ESTIMATE (deterministic
/// plan choice, so runs are bit-reproducible) and may be shared read-only
/// across threads; execution uses the new-array interface with per-call
/// scratch, so concurrent calls on distinct buffers are safe.
class SpectralTransform {
  public:
    /// Shared transform for this grid size (plans cached process-wide).
    static const SpectralTransform& get(const Grid& grid);

    void forward(const double* in, cplx* out) const;
    void inverse(const cplx* in, double* out) const;

    ~SpectralTransform();
    SpectralTransform(const SpectralTransform&) = delete;
    SpectralTransform& operator=(const SpectralTransform&) = delete;

  private:
    explicit SpectralTransform(int n);

    int n_;
    std::size_t real_count_;
    std::size_t spec_count_;
    void* fwd_plan_;
    void* inv_plan_;
};

}  // namespace vespec
