#include "vespec/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "vespec/errors.hpp"

namespace vespec {

ScalarField::ScalarField(const Grid& grid)
    : grid_(grid), real_(grid.point_count(), 0.0), real_ok_(true) {}

ScalarField ScalarField::from_samples(const Grid& grid, RealBuf samples) {
    if (samples.size() != grid.point_count())
        throw std::invalid_argument("sample buffer does not match grid");
    ScalarField f(grid, NoInit{});
    f.real_ = std::move(samples);
    f.real_ok_ = true;
    return f;
}

ScalarField ScalarField::from_spectrum(const Grid& grid, SpecBuf coeffs) {
    if (coeffs.size() != grid.spec_count())
        throw std::invalid_argument("spectral buffer does not match grid");
    ScalarField f(grid, NoInit{});
    f.spec_ = std::move(coeffs);
    f.spec_ok_ = true;
    return f;
}

void ScalarField::ensure_real() const {
    if (real_ok_) return;
    real_.resize(grid_.point_count());
    SpectralTransform::get(grid_).inverse(spec_.data(), real_.data());
    real_ok_ = true;
}

void ScalarField::ensure_spec() const {
    if (spec_ok_) return;
    spec_.resize(grid_.spec_count());
    SpectralTransform::get(grid_).forward(real_.data(), spec_.data());
    spec_ok_ = true;
}

std::span<const double> ScalarField::values() const {
    ensure_real();
    return {real_.data(), real_.size()};
}

const SpecBuf& ScalarField::spectrum() const {
    ensure_spec();
    return spec_;
}

std::span<double> ScalarField::mutate_values() {
    ensure_real();
    spec_ok_ = false;
    return {real_.data(), real_.size()};
}

SpecBuf& ScalarField::mutate_spectrum() {
    ensure_spec();
    real_ok_ = false;
    return spec_;
}

double ScalarField::mean() const {
    if (spec_ok_) return spec_[0].real();
    double sum = 0.0;
    for (double v : real_) sum += v;
    return sum / static_cast<double>(real_.size());
}

void ScalarField::check_finite(const char* label) const {
    if (real_ok_) {
        for (double v : real_)
            if (!std::isfinite(v))
                throw FieldNotFinite(std::string(label) + " has non-finite samples");
        return;
    }
    for (const cplx& c : spec_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw FieldNotFinite(std::string(label) +
                                 " has non-finite coefficients");
}

void VectorField::check_finite(const char* label) const {
    for (const auto& c : comp) c.check_finite(label);
}

void TensorField33::check_finite(const char* label) const {
    for (const auto& c : comp) c.check_finite(label);
}

ScalarField lincomb(double a, const ScalarField& f, double b,
                    const ScalarField& g) {
    const Grid& grid = f.grid();
    if (!(grid == g.grid()))
        throw std::invalid_argument("lincomb on mismatched grids");
    // Combine in whichever representation both operands already carry;
    // spectra win ties since downstream consumers are multiplier ops.
    if (f.has_spectrum() && g.has_spectrum()) {
        SpecBuf out(grid.spec_count());
        const SpecBuf& fs = f.spectrum();
        const SpecBuf& gs = g.spectrum();
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = a * fs[i] + b * gs[i];
        return ScalarField::from_spectrum(grid, std::move(out));
    }
    RealBuf out(grid.point_count());
    auto fv = f.values();
    auto gv = g.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * fv[i] + b * gv[i];
    return ScalarField::from_samples(grid, std::move(out));
}

VectorField lincomb(double a, const VectorField& f, double b,
                    const VectorField& g) {
    VectorField out(f.grid());
    for (int i = 0; i < 3; ++i) out[i] = lincomb(a, f[i], b, g[i]);
    return out;
}

TensorField33 lincomb(double a, const TensorField33& f, double b,
                      const TensorField33& g) {
    TensorField33 out(f.grid());
    for (int i = 0; i < 9; ++i) out.comp[i] = lincomb(a, f.comp[i], b, g.comp[i]);
    return out;
}

ScalarField product(const ScalarField& a, const ScalarField& b) {
    const Grid& grid = a.grid();
    if (!(grid == b.grid()))
        throw std::invalid_argument("product on mismatched grids");
    RealBuf out(grid.point_count());
    auto av = a.values();
    auto bv = b.values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = av[i] * bv[i];
    return ScalarField::from_samples(grid, std::move(out));
}

}  // namespace vespec
