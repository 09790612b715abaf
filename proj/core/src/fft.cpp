#include "vespec/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace vespec {

namespace {
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

// Field buffers are a few hundred kB and are allocated/freed constantly;
// keep them on the heap free lists instead of per-allocation mmap, which
// costs a page-fault storm on every touch.
[[maybe_unused]] const bool malloc_tuned = [] {
#if defined(__GLIBC__)
    mallopt(M_MMAP_THRESHOLD, 64 * 1024 * 1024);
    mallopt(M_TRIM_THRESHOLD, 64 * 1024 * 1024);
#endif
    return true;
}();
}  // namespace

SpectralTransform::SpectralTransform(int n)
    : n_(n),
      real_count_(static_cast<std::size_t>(n) * n * n),
      spec_count_(static_cast<std::size_t>(n) * n * (n / 2 + 1)) {
    RealBuf real(real_count_, 0.0);
    SpecBuf spec(spec_count_, cplx{0.0, 0.0});
    // FFTW planning is not thread-safe; execution of a finished plan is.
    std::lock_guard lock(plan_mutex());
    fwd_plan_ = fftw_plan_dft_r2c_3d(
        n, n, n, real.data(), reinterpret_cast<fftw_complex*>(spec.data()),
        FFTW_ESTIMATE);
    inv_plan_ = fftw_plan_dft_c2r_3d(
        n, n, n, reinterpret_cast<fftw_complex*>(spec.data()), real.data(),
        FFTW_ESTIMATE);
}

SpectralTransform::~SpectralTransform() {
    std::lock_guard lock(plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inv_plan_));
}

const SpectralTransform& SpectralTransform::get(const Grid& grid) {
    static std::mutex registry_mutex;
    static std::map<int, std::unique_ptr<SpectralTransform>> registry;
    std::lock_guard lock(registry_mutex);
    auto& slot = registry[grid.n()];
    if (!slot) slot.reset(new SpectralTransform(grid.n()));
    return *slot;
}

void SpectralTransform::forward(const double* in, cplx* out) const {
    // r2c preserves its input; FFTW just lacks a const overload.
    fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_plan_),
                         const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    const double scale = 1.0 / static_cast<double>(real_count_);
    for (std::size_t i = 0; i < spec_count_; ++i) out[i] *= scale;
}

void SpectralTransform::inverse(const cplx* in, double* out) const {
    // c2r destroys its input, so run it on a scratch copy (reused per
    // thread; transforms are hot-path).
    thread_local SpecBuf scratch;
    if (scratch.size() < spec_count_) scratch.resize(spec_count_);
    std::copy(in, in + spec_count_, scratch.begin());
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inv_plan_),
                         reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

}  // namespace vespec
