#include "vespec/spectral_ops.hpp"

#include <cmath>

#include "vespec/errors.hpp"

namespace vespec {

namespace {

constexpr double kMeanTol = 1e-12;

// Loop over the stored half-spectrum handing the functor the signed integer
// modes and the linear index. mz >= 0 always; the negative z half is implied.
template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
    const int n = g.n();
    const int nzh = g.nz_half();
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const int mx = g.signed_mode(ix);
        for (int iy = 0; iy < n; ++iy) {
            const int my = g.signed_mode(iy);
            for (int izc = 0; izc < nzh; ++izc, ++idx) fn(idx, mx, my, izc);
        }
    }
}

double spec_sum_sq(const Grid& g, const SpecBuf& s) {
    double sum = 0.0;
    for_each_mode(g, [&](std::size_t idx, int, int, int mz) {
        sum += g.hermitian_weight(mz) * std::norm(s[idx]);
    });
    return sum;
}

bool axis_nyquist(const Grid& g, int m) { return 2 * std::abs(m) == g.n(); }

}  // namespace

double l2_norm(const ScalarField& f) {
    double sum = 0.0;
    for (double v : f.values()) sum += v * v;
    const double h = f.grid().spacing();
    return std::sqrt(sum * h * h * h);
}

double l2_norm(const VectorField& v) {
    double s = 0.0;
    for (const auto& c : v.comp) {
        const double n = l2_norm(c);
        s += n * n;
    }
    return std::sqrt(s);
}

double l2_norm(const TensorField33& t) {
    double s = 0.0;
    for (const auto& c : t.comp) {
        const double n = l2_norm(c);
        s += n * n;
    }
    return std::sqrt(s);
}

double spectral_l2_norm(const ScalarField& f) {
    return std::sqrt(f.grid().volume() * spec_sum_sq(f.grid(), f.spectrum()));
}

double spectral_l2_norm(const VectorField& v) {
    double s = 0.0;
    for (const auto& c : v.comp) s += spec_sum_sq(v.grid(), c.spectrum());
    return std::sqrt(v.grid().volume() * s);
}

double spectral_l2_norm(const TensorField33& t) {
    double s = 0.0;
    for (const auto& c : t.comp) s += spec_sum_sq(t.grid(), c.spectrum());
    return std::sqrt(t.grid().volume() * s);
}

double relative_mean(const ScalarField& f) {
    const double rms = std::sqrt(spec_sum_sq(f.grid(), f.spectrum()));
    if (rms == 0.0) return 0.0;
    return std::abs(f.spectrum()[0]) / rms;
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double max_norm(const VectorField& v) {
    auto x = v[0].values(), y = v[1].values(), z = v[2].values();
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        m = std::max(m, x[i] * x[i] + y[i] * y[i] + z[i] * z[i]);
    return std::sqrt(m);
}

double max_abs(const TensorField33& t) {
    double m = 0.0;
    for (const auto& c : t.comp) m = std::max(m, max_abs(c));
    return m;
}

ScalarField riesz(const ScalarField& f, double s) {
    const Grid& g = f.grid();
    if (s < 0.0) {
        const double rel = relative_mean(f);
        if (rel > kMeanTol) throw NegativeOrderOnNonzeroMean(rel);
    }
    const double dk2 = g.dk() * g.dk();
    const SpecBuf& in = f.spectrum();
    SpecBuf out(g.spec_count());
    for_each_mode(g, [&](std::size_t idx, int mx, int my, int mz) {
        const double kk = dk2 * (mx * mx + my * my + mz * mz);
        if (kk == 0.0) {
            out[idx] = (s == 0.0) ? in[idx] : cplx{0.0, 0.0};
        } else {
            out[idx] = in[idx] * std::pow(kk, 0.5 * s);
        }
    });
    return ScalarField::from_spectrum(g, std::move(out));
}

ScalarField inv_laplacian(const ScalarField& f) {
    const Grid& g = f.grid();
    const double rel = relative_mean(f);
    if (rel > kMeanTol) throw NonzeroMean(rel);
    const double dk2 = g.dk() * g.dk();
    const SpecBuf& in = f.spectrum();
    SpecBuf out(g.spec_count());
    for_each_mode(g, [&](std::size_t idx, int mx, int my, int mz) {
        const double kk = dk2 * (mx * mx + my * my + mz * mz);
        out[idx] = (kk == 0.0) ? cplx{0.0, 0.0} : -in[idx] / kk;
    });
    return ScalarField::from_spectrum(g, std::move(out));
}

ScalarField laplacian(const ScalarField& f) {
    const Grid& g = f.grid();
    const double dk2 = g.dk() * g.dk();
    const SpecBuf& in = f.spectrum();
    SpecBuf out(g.spec_count());
    for_each_mode(g, [&](std::size_t idx, int mx, int my, int mz) {
        out[idx] = -dk2 * (mx * mx + my * my + mz * mz) * in[idx];
    });
    return ScalarField::from_spectrum(g, std::move(out));
}

VectorField laplacian(const VectorField& v) {
    VectorField out(v.grid());
    for (int i = 0; i < 3; ++i) out[i] = laplacian(v[i]);
    return out;
}

namespace {

// d/dx_axis as a spectral multiplier; Nyquist plane of the axis -> 0.
ScalarField axis_derivative(const ScalarField& f, int axis) {
    const Grid& g = f.grid();
    const double dk = g.dk();
    const SpecBuf& in = f.spectrum();
    SpecBuf out(g.spec_count());
    for_each_mode(g, [&](std::size_t idx, int mx, int my, int mz) {
        const int m = axis == 0 ? mx : (axis == 1 ? my : mz);
        if (axis_nyquist(g, m)) {
            out[idx] = cplx{0.0, 0.0};
        } else {
            out[idx] = cplx{0.0, dk * m} * in[idx];
        }
    });
    return ScalarField::from_spectrum(g, std::move(out));
}

}  // namespace

VectorField grad(const ScalarField& f) {
    VectorField out(f.grid());
    for (int a = 0; a < 3; ++a) out[a] = axis_derivative(f, a);
    return out;
}

ScalarField div(const VectorField& v) {
    const Grid& g = v.grid();
    const double dk = g.dk();
    const SpecBuf& x = v[0].spectrum();
    const SpecBuf& y = v[1].spectrum();
    const SpecBuf& z = v[2].spectrum();
    SpecBuf out(g.spec_count());
    for_each_mode(g, [&](std::size_t idx, int mx, int my, int mz) {
        cplx s{0.0, 0.0};
        if (!axis_nyquist(g, mx)) s += cplx{0.0, dk * mx} * x[idx];
        if (!axis_nyquist(g, my)) s += cplx{0.0, dk * my} * y[idx];
        if (!axis_nyquist(g, mz)) s += cplx{0.0, dk * mz} * z[idx];
        out[idx] = s;
    });
    return ScalarField::from_spectrum(g, std::move(out));
}

VectorField div_tensor(const TensorField33& t) {
    VectorField out(t.grid());
    for (int i = 0; i < 3; ++i) {
        VectorField row(t.grid());
        for (int j = 0; j < 3; ++j) row[j] = t(i, j);
        out[i] = div(row);
    }
    return out;
}

TensorField33 grad_vec(const VectorField& u) {
    TensorField33 out(u.grid());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = axis_derivative(u[i], j);
    return out;
}

VectorField leray_project(const VectorField& v) {
    const Grid& g = v.grid();
    const SpecBuf& x = v[0].spectrum();
    const SpecBuf& y = v[1].spectrum();
    const SpecBuf& z = v[2].spectrum();
    SpecBuf ox(g.spec_count()), oy(g.spec_count()), oz(g.spec_count());
    for_each_mode(g, [&](std::size_t idx, int imx, int imy, int imz) {
        const double mx = imx, my = imy, mz = imz;
        const double kk = mx * mx + my * my + mz * mz;
        if (kk == 0.0) {  // constants pass through
            ox[idx] = x[idx];
            oy[idx] = y[idx];
            oz[idx] = z[idx];
            return;
        }
        const cplx kd = (mx * x[idx] + my * y[idx] + mz * z[idx]) / kk;
        ox[idx] = x[idx] - mx * kd;
        oy[idx] = y[idx] - my * kd;
        oz[idx] = z[idx] - mz * kd;
    });
    VectorField out(g);
    out[0] = ScalarField::from_spectrum(g, std::move(ox));
    out[1] = ScalarField::from_spectrum(g, std::move(oy));
    out[2] = ScalarField::from_spectrum(g, std::move(oz));
    return out;
}

ScalarField dealias(const ScalarField& f) {
    const Grid& g = f.grid();
    const SpecBuf& in = f.spectrum();
    SpecBuf out(g.spec_count());
    for_each_mode(g, [&](std::size_t idx, int mx, int my, int mz) {
        out[idx] = g.dealias_keep(mx, my, mz) ? in[idx] : cplx{0.0, 0.0};
    });
    return ScalarField::from_spectrum(g, std::move(out));
}

VectorField dealias(const VectorField& v) {
    VectorField out(v.grid());
    for (int i = 0; i < 3; ++i) out[i] = dealias(v[i]);
    return out;
}

TensorField33 dealias(const TensorField33& t) {
    TensorField33 out(t.grid());
    for (int i = 0; i < 9; ++i) out.comp[i] = dealias(t.comp[i]);
    return out;
}

ScalarField advect(const VectorField& u, const ScalarField& f) {
    const Grid& g = f.grid();
    VectorField gf = grad(f);
    RealBuf out(g.point_count(), 0.0);
    for (int a = 0; a < 3; ++a) {
        auto uv = u[a].values();
        auto gv = gf[a].values();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += uv[i] * gv[i];
    }
    return dealias(ScalarField::from_samples(g, std::move(out)));
}

VectorField advect(const VectorField& u, const VectorField& w) {
    VectorField out(w.grid());
    for (int i = 0; i < 3; ++i) out[i] = advect(u, w[i]);
    return out;
}

TensorField33 advect(const VectorField& u, const TensorField33& t) {
    TensorField33 out(t.grid());
    for (int i = 0; i < 9; ++i) out.comp[i] = advect(u, t.comp[i]);
    return out;
}

ScalarField remove_mean(const ScalarField& f) {
    SpecBuf out(f.spectrum());
    out[0] = cplx{0.0, 0.0};
    return ScalarField::from_spectrum(f.grid(), std::move(out));
}

}  // namespace vespec
