#include "vespec/pressure.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "vespec/errors.hpp"
#include "vespec/spectral_ops.hpp"

namespace vespec {

namespace {

double spec_norm(const Grid& g, const SpecBuf& s) {
    double sum = 0.0;
    const int n = g.n();
    const int nzh = g.nz_half();
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int izc = 0; izc < nzh; ++izc, ++idx)
                sum += g.hermitian_weight(izc) * std::norm(s[idx]);
    return std::sqrt(g.volume() * sum);
}

}  // namespace

namespace {

// div(dealias((1/rho~ - 1) grad p)) — the variable-coefficient part of the
// pressure operator; shared by the update and the residual.
SpecBuf coefficient_correction(const Grid& g, const RealBuf& coeff,
                               const ScalarField& p) {
    VectorField gp = grad(p);
    VectorField scaled(g);
    for (int a = 0; a < 3; ++a) {
        auto gv = gp[a].values();
        RealBuf buf(g.point_count());
        for (std::size_t q = 0; q < buf.size(); ++q)
            buf[q] = coeff[q] * gv[q];
        scaled[a] = dealias(ScalarField::from_samples(g, std::move(buf)));
    }
    return div(scaled).spectrum();
}

}  // namespace

ScalarField solve_pressure(const ScalarField& rho_tilde, const VectorField& f,
                           double tol, int max_iter, PressureSolveInfo* info,
                           const ScalarField* initial_guess) {
    const Grid& g = rho_tilde.grid();

    auto rv = rho_tilde.values();
    double mn = rv[0];
    for (double v : rv) mn = std::min(mn, v);
    if (!(mn > 0.0)) throw DensityNonpositive(mn);
    RealBuf coeff(rv.size());  // 1/rho~ - 1
    for (std::size_t p = 0; p < rv.size(); ++p) coeff[p] = 1.0 / rv[p] - 1.0;

    ScalarField div_f = div(f);
    const SpecBuf& rhs0 = div_f.spectrum();
    const double rhs_norm = spec_norm(g, rhs0);
    if (info) *info = {0, 0.0};
    if (rhs_norm == 0.0) return ScalarField(g);

    const double target = tol * rhs_norm;
    const double dk2 = g.dk() * g.dk();
    const int n = g.n();
    const int nzh = g.nz_half();

    ScalarField p(g);
    SpecBuf correction(g.spec_count(), cplx{0.0, 0.0});
    if (initial_guess)
        correction = coefficient_correction(g, coeff, *initial_guess);
    double residual = rhs_norm;

    for (int iter = 1; iter <= max_iter; ++iter) {
        // p = lap^{-1}(div f - correction); both terms have exact zero mean.
        SpecBuf phat(g.spec_count());
        {
            std::size_t idx = 0;
            for (int ix = 0; ix < n; ++ix) {
                const int mx = g.signed_mode(ix);
                for (int iy = 0; iy < n; ++iy) {
                    const int my = g.signed_mode(iy);
                    for (int izc = 0; izc < nzh; ++izc, ++idx) {
                        const double kk =
                            dk2 * (mx * mx + my * my + izc * izc);
                        phat[idx] = kk == 0.0
                                        ? cplx{0.0, 0.0}
                                        : -(rhs0[idx] - correction[idx]) / kk;
                    }
                }
            }
        }
        p = ScalarField::from_spectrum(g, std::move(phat));

        // correction = div(dealias(coeff * grad p)) for the updated p
        correction = coefficient_correction(g, coeff, p);

        // residual of the full variable-coefficient operator
        const SpecBuf& phat2 = p.spectrum();
        double sum = 0.0;
        std::size_t idx = 0;
        for (int ix = 0; ix < n; ++ix) {
            const int mx = g.signed_mode(ix);
            for (int iy = 0; iy < n; ++iy) {
                const int my = g.signed_mode(iy);
                for (int izc = 0; izc < nzh; ++izc, ++idx) {
                    const double kk = dk2 * (mx * mx + my * my + izc * izc);
                    const cplx r = -kk * phat2[idx] + correction[idx] - rhs0[idx];
                    sum += g.hermitian_weight(izc) * std::norm(r);
                }
            }
        }
        residual = std::sqrt(g.volume() * sum);
        if (info) *info = {iter, residual};
        if (residual <= target) return p;
    }
    throw NoConvergence(max_iter, residual);
}

// ---------------------------------------------------------------------------
// 1D pressure transform
// ---------------------------------------------------------------------------

std::vector<double> spectral_derivative_1d(std::span<const double> f,
                                           double length) {
    const int n = static_cast<int>(f.size());
    std::vector<double> in(f.begin(), f.end());
    std::vector<std::complex<double>> spec(n / 2 + 1);
    fftw_plan fwd = fftw_plan_dft_r2c_1d(
        n, in.data(), reinterpret_cast<fftw_complex*>(spec.data()),
        FFTW_ESTIMATE);
    fftw_execute(fwd);
    fftw_destroy_plan(fwd);
    const double dk = 2.0 * std::numbers::pi / length;
    for (int m = 0; m <= n / 2; ++m) {
        const bool nyquist = (2 * m == n);
        spec[m] *= nyquist ? std::complex<double>{0.0, 0.0}
                           : std::complex<double>{0.0, dk * m / n};
    }
    std::vector<double> out(n);
    fftw_plan inv = fftw_plan_dft_c2r_1d(
        n, reinterpret_cast<fftw_complex*>(spec.data()), out.data(),
        FFTW_ESTIMATE);
    fftw_execute(inv);
    fftw_destroy_plan(inv);
    return out;
}

PressureTransform1d pressure_transform_1d(std::span<const double> rho,
                                          std::span<const double> p,
                                          double length) {
    if (rho.size() != p.size() || rho.size() < 4)
        throw std::invalid_argument("pressure_transform_1d: bad sample sizes");
    const std::size_t n = rho.size();
    const double h = length / static_cast<double>(n);

    double mn = rho[0] + 1.0;
    for (double v : rho) mn = std::min(mn, v + 1.0);
    if (!(mn > 0.0)) throw DensityNonpositive(mn);

    std::vector<double> rho_x = spectral_derivative_1d(rho, length);

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = rho[i] + 1.0;
        w[i] = rho_x[i] * p[i] / (d * d);
    }
    double wbar = 0.0;
    for (double v : w) wbar += v;
    wbar /= static_cast<double>(n);
    for (double& v : w) v -= wbar;

    // zero-mean trapezoid antiderivative (periodic: increments sum to 0)
    std::vector<double> anti(n, 0.0);
    for (std::size_t i = 1; i < n; ++i)
        anti[i] = anti[i - 1] + 0.5 * h * (w[i - 1] + w[i]);

    PressureTransform1d out;
    out.integrand_mean = wbar;
    out.p_tilde.resize(n);
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.p_tilde[i] = p[i] / (rho[i] + 1.0) + anti[i];
        mean += out.p_tilde[i];
    }
    mean /= static_cast<double>(n);
    for (double& v : out.p_tilde) v -= mean;
    return out;
}

}  // namespace vespec
