#pragma once

#include <array>
#include <span>

#include "vespec/fft.hpp"
#include "vespec/grid.hpp"

namespace vespec {

/// Real scalar field on a periodic grid, with a lazily synchronized
/// spectral representation.
///
/// At least one of the two representations is valid at any time; the other
/// is materialized on demand. Reading through values()/spectrum() may fill
/// the missing representation, so a single field must not be accessed from
/// multiple threads concurrently (distinct fields are fine; transform plans
/// are shared read-only).
class ScalarField {
  public:
    /// Zero field (samples allocated, spectrum materialized on demand).
    explicit ScalarField(const Grid& grid);
    static ScalarField from_samples(const Grid& grid, RealBuf samples);
    static ScalarField from_spectrum(const Grid& grid, SpecBuf coeffs);

    const Grid& grid() const { return grid_; }

    std::span<const double> values() const;
    const SpecBuf& spectrum() const;

    /// Write access to samples; drops the spectral representation.
    std::span<double> mutate_values();
    /// Write access to coefficients; drops the sample representation.
    SpecBuf& mutate_spectrum();

    /// Which representations are currently materialized.
    bool has_values() const { return real_ok_; }
    bool has_spectrum() const { return spec_ok_; }

    double mean() const;

    /// Throws FieldNotFinite if any entry of the valid representation is
    /// NaN or Inf. `label` names the field in the message.
    void check_finite(const char* label) const;

  private:
    struct NoInit {};
    ScalarField(const Grid& grid, NoInit) : grid_(grid) {}

    Grid grid_;
    mutable RealBuf real_;
    mutable SpecBuf spec_;
    mutable bool real_ok_ = false;
    mutable bool spec_ok_ = false;

    void ensure_real() const;
    void ensure_spec() const;
};

struct VectorField {
    explicit VectorField(const Grid& grid)
        : comp{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

    ScalarField& operator[](int i) { return comp[i]; }
    const ScalarField& operator[](int i) const { return comp[i]; }
    const Grid& grid() const { return comp[0].grid(); }
    void check_finite(const char* label) const;

    std::array<ScalarField, 3> comp;
};

struct TensorField33 {
    explicit TensorField33(const Grid& grid)
        : comp{ScalarField(grid), ScalarField(grid), ScalarField(grid),
               ScalarField(grid), ScalarField(grid), ScalarField(grid),
               ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

    ScalarField& operator()(int i, int j) { return comp[3 * i + j]; }
    const ScalarField& operator()(int i, int j) const { return comp[3 * i + j]; }
    const Grid& grid() const { return comp[0].grid(); }
    void check_finite(const char* label) const;

    std::array<ScalarField, 9> comp;
};

/// a*f + b*g, evaluated in whichever representation avoids transforms.
ScalarField lincomb(double a, const ScalarField& f, double b,
                    const ScalarField& g);
VectorField lincomb(double a, const VectorField& f, double b,
                    const VectorField& g);
TensorField33 lincomb(double a, const TensorField33& f, double b,
                      const TensorField33& g);

/// Pointwise product of sample values.
ScalarField product(const ScalarField& a, const ScalarField& b);

}  // namespace vespec
