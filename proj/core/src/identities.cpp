#include "vespec/identities.hpp"

#include <cmath>
#include <stdexcept>

#include "vespec/random_fields.hpp"
#include "vespec/spectral_ops.hpp"

namespace vespec {

namespace {

double relative_residual(double diff, double lhs, double rhs) {
    const double scale = std::max({lhs, rhs, 1e-300});
    return diff / scale;
}

VectorField subtract(const VectorField& a, const VectorField& b) {
    VectorField out(a.grid());
    for (int i = 0; i < 3; ++i) out[i] = lincomb(1.0, a[i], -1.0, b[i]);
    return out;
}

}  // namespace

double check_commutator(const VectorField& u, const TensorField33& F) {
    const Grid& g = u.grid();
    {
        const double du = spectral_l2_norm(div(u));
        const double gu = spectral_l2_norm(grad_vec(u));
        if (du > 1e-10 * std::max(gu, 1e-300))
            throw std::invalid_argument("check_commutator needs div u = 0");
    }

    // left side: P div(u . grad F)
    VectorField lhs = leray_project(div_tensor(advect(u, F)));

    // P(u . grad P div F)
    VectorField pdivF = leray_project(div_tensor(F));
    VectorField t1 = leray_project(advect(u, pdivF));

    // P(grad u . grad F), [.]_i = sum_{j,l} (d_j u_l)(d_l F_ij)
    TensorField33 gu = grad_vec(u);  // gu(l, j) = d u_l / d x_j
    std::array<TensorField33, 3> gF{TensorField33(g), TensorField33(g),
                                    TensorField33(g)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            VectorField gij = grad(F(i, j));
            for (int l = 0; l < 3; ++l) gF[l](i, j) = std::move(gij[l]);
        }
    VectorField t2(g);
    for (int i = 0; i < 3; ++i) {
        RealBuf buf(g.point_count(), 0.0);
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l) {
                auto a = gu(l, j).values();
                auto b = gF[l](i, j).values();
                for (std::size_t p = 0; p < buf.size(); ++p)
                    buf[p] += a[p] * b[p];
            }
        t2[i] = dealias(ScalarField::from_samples(g, std::move(buf)));
    }
    t2 = leray_project(t2);

    // P(grad u . grad lap^{-1} div div F), [.]_i = sum_l (d_i u_l)(d_l phi)
    ScalarField phi = inv_laplacian(div(div_tensor(F)));
    VectorField gphi = grad(phi);
    VectorField t3(g);
    for (int i = 0; i < 3; ++i) {
        RealBuf buf(g.point_count(), 0.0);
        for (int l = 0; l < 3; ++l) {
            auto a = gu(l, i).values();
            auto b = gphi[l].values();
            for (std::size_t p = 0; p < buf.size(); ++p)
                buf[p] += a[p] * b[p];
        }
        t3[i] = dealias(ScalarField::from_samples(g, std::move(buf)));
    }
    t3 = leray_project(t3);

    VectorField rhs(g);
    for (int i = 0; i < 3; ++i) {
        ScalarField s = lincomb(1.0, t1[i], 1.0, t2[i]);
        rhs[i] = lincomb(1.0, s, -1.0, t3[i]);
    }
    const double diff = spectral_l2_norm(subtract(lhs, rhs));
    return relative_residual(diff, spectral_l2_norm(lhs),
                             spectral_l2_norm(rhs));
}

ProjectionAlgebraResiduals check_projection_algebra(const Grid& grid,
                                                    int samples,
                                                    std::uint64_t seed) {
    ProjectionAlgebraResiduals out;
    const int band = max_band(grid);
    for (int s = 0; s < samples; ++s) {
        VectorField v = random_vector(grid, band, seed + 1000 * s);
        VectorField pv = leray_project(v);
        VectorField ppv = leray_project(pv);
        const double vn = spectral_l2_norm(v);
        const double gvn = spectral_l2_norm(grad_vec(v));
        out.idempotence = std::max(
            out.idempotence, spectral_l2_norm(subtract(ppv, pv)) / vn);
        out.divergence =
            std::max(out.divergence, spectral_l2_norm(div(pv)) / gvn);

        ScalarField phi = random_scalar(grid, band, seed + 1000 * s + 500);
        VectorField gphi = grad(phi);
        out.gradient_kill =
            std::max(out.gradient_kill, spectral_l2_norm(leray_project(gphi)) /
                                            spectral_l2_norm(gphi));
    }
    return out;
}

double check_G_derivation(const State& state) {
    const Grid& g = state.grid();
    const VectorField& u = state.u;

    // transport rates of (1.1)-type: rho_t = -u.grad rho~, F_t = -u.grad F
    // + (grad u) F
    ScalarField drho = advect(u, state.rho_tilde);
    {
        auto& s = drho.mutate_spectrum();
        for (auto& c : s) c = -c;
    }
    TensorField33 gu = grad_vec(u);
    TensorField33 dF(g);
    {
        TensorField33 adv = advect(u, state.F);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                RealBuf buf(g.point_count(), 0.0);
                for (int l = 0; l < 3; ++l) {
                    auto a = gu(i, l).values();
                    auto b = state.F(l, j).values();
                    for (std::size_t p = 0; p < buf.size(); ++p)
                        buf[p] += a[p] * b[p];
                }
                ScalarField stretch =
                    dealias(ScalarField::from_samples(g, std::move(buf)));
                dF(i, j) = lincomb(-1.0, adv(i, j), 1.0, stretch);
            }
    }

    // d/dt (rho~ F F^T) = drho F F^T + rho~ dF F^T + rho~ F dF^T pointwise
    std::array<std::span<const double>, 9> fv, dfv;
    for (int i = 0; i < 9; ++i) {
        fv[i] = state.F.comp[i].values();
        dfv[i] = dF.comp[i].values();
    }
    auto rho = state.rho_tilde.values();
    auto drv = drho.values();
    TensorField33 lhs(g);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            RealBuf buf(g.point_count());
            for (std::size_t p = 0; p < buf.size(); ++p) {
                double ff = 0.0, dff = 0.0, fdf = 0.0;
                for (int l = 0; l < 3; ++l) {
                    ff += fv[3 * i + l][p] * fv[3 * j + l][p];
                    dff += dfv[3 * i + l][p] * fv[3 * j + l][p];
                    fdf += fv[3 * i + l][p] * dfv[3 * j + l][p];
                }
                buf[p] = drv[p] * ff + rho[p] * (dff + fdf);
            }
            lhs(i, j) = ScalarField::from_samples(g, std::move(buf));
        }

    TensorField33 rhs = rhs_G(u, effective_tensor(state));

    // compare inside the common de-aliased window
    TensorField33 dl = dealias(lhs);
    TensorField33 dr = dealias(rhs);
    double diff = 0.0, ln = 0.0, rn = 0.0;
    for (int i = 0; i < 9; ++i) {
        ScalarField d = lincomb(1.0, dl.comp[i], -1.0, dr.comp[i]);
        const double dn = spectral_l2_norm(d);
        diff += dn * dn;
        const double a = spectral_l2_norm(dl.comp[i]);
        const double b = spectral_l2_norm(dr.comp[i]);
        ln += a * a;
        rn += b * b;
    }
    return relative_residual(std::sqrt(diff), std::sqrt(ln), std::sqrt(rn));
}

double check_divG_evolution(const VectorField& u, const TensorField33& G) {
    const Grid& g = u.grid();
    VectorField lhs = div_tensor(rhs_G(u, G));

    VectorField lap = laplacian(u);
    VectorField adv_div = div_tensor(advect(u, G));
    VectorField q_div = div_tensor(dealias(q_term(grad_vec(u), G)));
    VectorField rhs(g);
    for (int i = 0; i < 3; ++i) {
        ScalarField s = lincomb(1.0, lap[i], -1.0, adv_div[i]);
        rhs[i] = lincomb(1.0, s, -1.0, q_div[i]);
    }
    const double diff = spectral_l2_norm(subtract(lhs, rhs));
    return relative_residual(diff, spectral_l2_norm(lhs),
                             spectral_l2_norm(rhs));
}

}  // namespace vespec
