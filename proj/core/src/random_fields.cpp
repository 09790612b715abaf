#include "vespec/random_fields.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "vespec/spectral_ops.hpp"

namespace vespec {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 step separates component streams of one logical seed
    std::uint64_t z = seed + stream * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double next_phase(std::mt19937_64& rng) {
    // top 53 bits -> [0,1); avoids distribution objects whose sequences are
    // implementation-defined
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * std::numbers::pi * u;
}

}  // namespace

int max_band(const Grid& grid) { return grid.n() / 2 - 1; }

ScalarField random_scalar(const Grid& grid, int band, std::uint64_t seed) {
    if (band < 1 || band > max_band(grid))
        throw std::invalid_argument("random field band out of range");
    std::mt19937_64 rng(seed);

    const std::size_t modes_in_band =
        static_cast<std::size_t>(2 * band + 1) * (2 * band + 1) *
            (2 * band + 1) -
        1;
    const double amplitude = 1.0 / std::sqrt(static_cast<double>(modes_in_band));

    const int n = grid.n();
    SpecBuf spec(grid.spec_count(), cplx{0.0, 0.0});
    auto put = [&](int mx, int my, int mz, cplx v) {
        const int ix = mx >= 0 ? mx : mx + n;
        const int iy = my >= 0 ? my : my + n;
        spec[grid.spec_index(ix, iy, mz)] = v;
    };
    // Canonical half: mz > 0, plus (mz == 0, my > 0), plus
    // (mz == 0, my == 0, mx > 0). Mirrors on the mz == 0 plane are stored
    // explicitly; mirrors with mz < 0 are implied by the r2c layout.
    for (int mx = -band; mx <= band; ++mx)
        for (int my = -band; my <= band; ++my)
            for (int mz = 0; mz <= band; ++mz) {
                const bool canonical =
                    mz > 0 || (mz == 0 && (my > 0 || (my == 0 && mx > 0)));
                if (!canonical) continue;
                const cplx v = std::polar(amplitude, next_phase(rng));
                put(mx, my, mz, v);
                if (mz == 0) put(-mx, -my, 0, std::conj(v));
            }
    return ScalarField::from_spectrum(grid, std::move(spec));
}

VectorField random_vector(const Grid& grid, int band, std::uint64_t seed) {
    VectorField out(grid);
    for (int i = 0; i < 3; ++i)
        out[i] = random_scalar(grid, band, mix_seed(seed, 1 + i));
    return out;
}

TensorField33 random_tensor(const Grid& grid, int band, std::uint64_t seed) {
    TensorField33 out(grid);
    for (int i = 0; i < 9; ++i)
        out.comp[i] = random_scalar(grid, band, mix_seed(seed, 11 + i));
    return out;
}

VectorField random_divfree(const Grid& grid, int band, std::uint64_t seed) {
    return leray_project(random_vector(grid, band, seed));
}

}  // namespace vespec
