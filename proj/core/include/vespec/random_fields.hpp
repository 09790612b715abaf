#pragma once

#include <cstdint>

#include "vespec/field.hpp"

namespace vespec {

// Seeded band-limited random fields with a documented spectrum: every mode
// with |m_i| <= band (and m != 0) gets the same amplitude and an independent
// uniform phase; coefficients satisfy Hermitian symmetry so samples are
// real; the common amplitude is chosen so rms(f) = 1. Phases come straight
// from a std::mt19937_64 stream (standardized sequence), so a (seed, grid,
// band) triple reproduces the field bit-for-bit.

ScalarField random_scalar(const Grid& grid, int band, std::uint64_t seed);
VectorField random_vector(const Grid& grid, int band, std::uint64_t seed);
TensorField33 random_tensor(const Grid& grid, int band, std::uint64_t seed);

/// Leray projection of random_vector (rms close to, not exactly, 1).
VectorField random_divfree(const Grid& grid, int band, std::uint64_t seed);

/// Largest band the generator accepts for this grid (below Nyquist).
int max_band(const Grid& grid);

}  // namespace vespec
