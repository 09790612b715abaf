#include "vespec/model.hpp"

#include <cmath>

#include "vespec/errors.hpp"
#include "vespec/spectral_ops.hpp"

namespace vespec {

State::State(const Grid& grid) : rho_tilde(grid), u(grid), F(grid) {
    auto r = rho_tilde.mutate_values();
    for (double& v : r) v = 1.0;
    for (int i = 0; i < 3; ++i) {
        auto d = F(i, i).mutate_values();
        for (double& v : d) v = 1.0;
    }
}

double State::min_rho() const {
    double m = rho_tilde.values()[0];
    for (double v : rho_tilde.values()) m = std::min(m, v);
    return m;
}

double State::min_det_F() const {
    std::array<std::span<const double>, 9> f;
    for (int i = 0; i < 9; ++i) f[i] = F.comp[i].values();
    double m = 0.0;
    const std::size_t count = grid().point_count();
    for (std::size_t p = 0; p < count; ++p) {
        const double det =
            f[0][p] * (f[4][p] * f[8][p] - f[5][p] * f[7][p]) -
            f[1][p] * (f[3][p] * f[8][p] - f[5][p] * f[6][p]) +
            f[2][p] * (f[3][p] * f[7][p] - f[4][p] * f[6][p]);
        m = (p == 0) ? det : std::min(m, det);
    }
    return m;
}

TensorField33 effective_tensor(const State& state) {
    const Grid& g = state.grid();
    TensorField33 out(g);
    std::array<std::span<const double>, 9> f;
    for (int i = 0; i < 9; ++i) f[i] = state.F.comp[i].values();
    auto rho = state.rho_tilde.values();
    const std::size_t count = g.point_count();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            RealBuf buf(count);
            for (std::size_t p = 0; p < count; ++p) {
                double s = 0.0;
                for (int l = 0; l < 3; ++l)
                    s += f[3 * i + l][p] * f[3 * j + l][p];
                buf[p] = rho[p] * s - (i == j ? 1.0 : 0.0);
            }
            out(i, j) = ScalarField::from_samples(g, std::move(buf));
        }
    return out;
}

TensorField33 q_term(const TensorField33& grad_u, const TensorField33& G) {
    const Grid& g = grad_u.grid();
    TensorField33 out(g);
    std::array<std::span<const double>, 9> gu, gg;
    for (int i = 0; i < 9; ++i) {
        gu[i] = grad_u.comp[i].values();
        gg[i] = G.comp[i].values();
    }
    const std::size_t count = g.point_count();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            RealBuf buf(count);
            for (std::size_t p = 0; p < count; ++p) {
                double s = 0.0;
                for (int l = 0; l < 3; ++l)
                    s += gu[3 * i + l][p] * gg[3 * l + j][p] +
                         gg[3 * i + l][p] * gu[3 * j + l][p];
                buf[p] = -s;
            }
            out(i, j) = ScalarField::from_samples(g, std::move(buf));
        }
    return out;
}

TensorField33 strain_rate(const VectorField& u) {
    TensorField33 gu = grad_vec(u);
    TensorField33 out(u.grid());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out(i, j) = lincomb(0.5, gu(i, j), 0.5, gu(j, i));
    return out;
}

ScalarField g_coeff(const ScalarField& rho) {
    const Grid& g = rho.grid();
    auto rv = rho.values();
    double mn = rv[0] + 1.0;
    for (double v : rv) mn = std::min(mn, v + 1.0);
    if (!(mn > 0.0)) throw DensityNonpositive(mn);
    RealBuf buf(g.point_count());
    for (std::size_t p = 0; p < buf.size(); ++p)
        buf[p] = rv[p] / (rv[p] + 1.0);
    return ScalarField::from_samples(g, std::move(buf));
}

namespace {

// (grad u) F pointwise, de-aliased.
TensorField33 stretch_term(const TensorField33& grad_u, const TensorField33& F) {
    const Grid& g = grad_u.grid();
    std::array<std::span<const double>, 9> gu, fv;
    for (int i = 0; i < 9; ++i) {
        gu[i] = grad_u.comp[i].values();
        fv[i] = F.comp[i].values();
    }
    const std::size_t count = g.point_count();
    TensorField33 out(g);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            RealBuf buf(count);
            for (std::size_t p = 0; p < count; ++p) {
                double s = 0.0;
                for (int l = 0; l < 3; ++l)
                    s += gu[3 * i + l][p] * fv[3 * l + j][p];
                buf[p] = s;
            }
            out(i, j) = dealias(ScalarField::from_samples(g, std::move(buf)));
        }
    return out;
}

// Reciprocal density; positivity gate for every (1/rho~) coefficient.
RealBuf reciprocal_density(const ScalarField& rho_tilde) {
    auto rv = rho_tilde.values();
    double mn = rv[0];
    for (double v : rv) mn = std::min(mn, v);
    if (!(mn > 0.0)) throw DensityNonpositive(mn);
    RealBuf recip(rv.size());
    for (std::size_t p = 0; p < rv.size(); ++p) recip[p] = 1.0 / rv[p];
    return recip;
}

// u . grad u from an already computed velocity Jacobian.
VectorField self_advection(const VectorField& u, const TensorField33& grad_u) {
    const Grid& g = u.grid();
    VectorField out(g);
    for (int i = 0; i < 3; ++i) {
        RealBuf buf(g.point_count(), 0.0);
        for (int l = 0; l < 3; ++l) {
            auto ul = u[l].values();
            auto gv = grad_u(i, l).values();
            for (std::size_t p = 0; p < buf.size(); ++p)
                buf[p] += ul[p] * gv[p];
        }
        out[i] = dealias(ScalarField::from_samples(g, std::move(buf)));
    }
    return out;
}

// Linearized elastic stress rho I + E + E^T with E = F - I; its divergence
// is the first-order part of div(rho~ F F^T).
TensorField33 linearized_stress(const State& s) {
    const Grid& g = s.grid();
    TensorField33 out(g);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            ScalarField sum = lincomb(1.0, s.F(i, j), 1.0, s.F(j, i));
            if (i == j) {
                auto vals = sum.mutate_values();
                auto rho = s.rho_tilde.values();
                for (std::size_t p = 0; p < vals.size(); ++p)
                    vals[p] += rho[p] - 3.0;  // E + E^T + rho on the diagonal
            }
            out(i, j) = std::move(sum);
        }
    return out;
}

}  // namespace

StageEval stage_force(const State& state, const ModelParams& params) {
    const Grid& g = state.grid();
    StageEval stage{VectorField(g), grad_vec(state.u)};

    if (!params.nonlinear_enabled) {
        VectorField el = div_tensor(linearized_stress(state));
        VectorField lap = laplacian(state.u);
        for (int i = 0; i < 3; ++i)
            stage.force[i] =
                lincomb(params.mu, lap[i], params.c * params.c, el[i]);
        return stage;
    }

    VectorField adv = self_advection(state.u, stage.grad_u);
    VectorField div_stress = div_tensor(effective_tensor(state));
    VectorField lap = laplacian(state.u);
    RealBuf recip = reciprocal_density(state.rho_tilde);

    for (int i = 0; i < 3; ++i) {
        ScalarField b =
            lincomb(params.mu, lap[i], params.c * params.c, div_stress[i]);
        auto bv = b.values();
        RealBuf buf(g.point_count());
        for (std::size_t p = 0; p < buf.size(); ++p)
            buf[p] = recip[p] * bv[p];
        ScalarField scaled =
            dealias(ScalarField::from_samples(g, std::move(buf)));
        stage.force[i] = lincomb(1.0, scaled, -1.0, adv[i]);
    }
    return stage;
}

VectorField unconstrained_accel(const State& state, const ModelParams& params) {
    return stage_force(state, params).force;
}

StateRates rhs_from_stage(const State& state, const ModelParams& params,
                          const StageEval& stage, const ScalarField& pressure) {
    const Grid& g = state.grid();
    StateRates rates(g);

    if (!params.nonlinear_enabled) {
        VectorField gp = grad(pressure);
        for (int i = 0; i < 3; ++i)
            rates.du[i] = lincomb(1.0, stage.force[i], -1.0, gp[i]);
        rates.dF = stage.grad_u;
        return rates;  // drho stays zero
    }

    RealBuf recip = reciprocal_density(state.rho_tilde);
    VectorField gp = grad(pressure);
    for (int i = 0; i < 3; ++i) {
        auto gv = gp[i].values();
        RealBuf buf(g.point_count());
        for (std::size_t p = 0; p < buf.size(); ++p)
            buf[p] = recip[p] * gv[p];
        ScalarField scaled =
            dealias(ScalarField::from_samples(g, std::move(buf)));
        rates.du[i] = lincomb(1.0, stage.force[i], -1.0, scaled);
    }

    rates.drho = advect(state.u, state.rho_tilde);
    {
        auto& v = rates.drho.mutate_spectrum();
        for (auto& c : v) c = -c;
    }

    TensorField33 adv = advect(state.u, state.F);
    TensorField33 st = stretch_term(stage.grad_u, state.F);
    for (int i = 0; i < 9; ++i)
        rates.dF.comp[i] = lincomb(-1.0, adv.comp[i], 1.0, st.comp[i]);
    return rates;
}

StateRates rhs_full(const State& state, const ModelParams& params,
                    const ScalarField& pressure) {
    return rhs_from_stage(state, params, stage_force(state, params), pressure);
}

TensorField33 rhs_G(const VectorField& u, const TensorField33& G) {
    TensorField33 gu = grad_vec(u);
    TensorField33 adv = advect(u, G);
    TensorField33 q = dealias(q_term(gu, G));
    TensorField33 out(u.grid());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            ScalarField d = lincomb(0.5, gu(i, j), 0.5, gu(j, i));  // D(u)
            ScalarField tmp = lincomb(-1.0, adv(i, j), -1.0, q(i, j));
            out(i, j) = lincomb(1.0, tmp, 2.0, d);
        }
    return out;
}

StructureResiduals structure_residuals(const State& state) {
    const Grid& g = state.grid();
    StructureResiduals r;

    // r_state: rho~ det F - 1 pointwise
    {
        std::array<std::span<const double>, 9> f;
        for (int i = 0; i < 9; ++i) f[i] = state.F.comp[i].values();
        auto rho = state.rho_tilde.values();
        double m = 0.0;
        for (std::size_t p = 0; p < g.point_count(); ++p) {
            const double det =
                f[0][p] * (f[4][p] * f[8][p] - f[5][p] * f[7][p]) -
                f[1][p] * (f[3][p] * f[8][p] - f[5][p] * f[6][p]) +
                f[2][p] * (f[3][p] * f[7][p] - f[4][p] * f[6][p]);
            m = std::max(m, std::abs(rho[p] * det - 1.0));
        }
        r.r_state = m;
    }

    // r_div: div(rho~ F^T)
    {
        TensorField33 a(g);
        auto rho = state.rho_tilde.values();
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                auto fv = state.F(j, i).values();
                RealBuf buf(g.point_count());
                for (std::size_t p = 0; p < buf.size(); ++p)
                    buf[p] = rho[p] * fv[p];
                a(i, j) = ScalarField::from_samples(g, std::move(buf));
            }
        VectorField d = div_tensor(a);
        for (int i = 0; i < 3; ++i) r.r_div = std::max(r.r_div, max_abs(d[i]));
    }

    // r_curl: F_lk d_l F_ij - F_lj d_l F_ik, antisymmetric in (j,k)
    {
        std::array<TensorField33, 3> gF{TensorField33(g), TensorField33(g),
                                        TensorField33(g)};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                VectorField gij = grad(state.F(i, j));
                for (int l = 0; l < 3; ++l) gF[l](i, j) = std::move(gij[l]);
            }
        std::array<std::span<const double>, 9> f;
        for (int i = 0; i < 9; ++i) f[i] = state.F.comp[i].values();
        std::array<std::array<std::span<const double>, 9>, 3> df;
        for (int l = 0; l < 3; ++l)
            for (int i = 0; i < 9; ++i) df[l][i] = gF[l].comp[i].values();
        double m = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = j + 1; k < 3; ++k)
                    for (std::size_t p = 0; p < g.point_count(); ++p) {
                        double s = 0.0;
                        for (int l = 0; l < 3; ++l)
                            s += f[3 * l + k][p] * df[l][3 * i + j][p] -
                                 f[3 * l + j][p] * df[l][3 * i + k][p];
                        m = std::max(m, std::abs(s));
                    }
        r.r_curl = m;
    }
    return r;
}

}  // namespace vespec
