#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vespec/errors.hpp"
#include "vespec/identities.hpp"
#include "vespec/model.hpp"
#include "vespec/pressure.hpp"
#include "vespec/random_fields.hpp"
#include "vespec/spectral_ops.hpp"

using namespace vespec;
using testutil::make_field;
using testutil::max_abs_diff;
using testutil::rel_l2_diff;

using testutil::perturbed_state;

TEST_SUITE("model") {

TEST_CASE("effective tensor at and near equilibrium") {
    Grid g(8);
    State eq(g);
    TensorField33 G = effective_tensor(eq);
    for (int i = 0; i < 9; ++i) CHECK(max_abs(G.comp[i]) == 0.0);

    // constant density shift: G = a I
    const double a = 0.3;
    State s(g);
    {
        auto v = s.rho_tilde.mutate_values();
        for (double& x : v) x = 1.0 + a;
    }
    TensorField33 G2 = effective_tensor(s);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto v = G2(i, j).values();
            for (std::size_t p = 0; p < 8; ++p)  // spot-check a few points
                CHECK(v[p] == doctest::Approx(i == j ? a : 0.0).epsilon(1e-14));
        }
}

TEST_CASE("effective tensor matches the pointwise matrix oracle") {
    Grid g(8);
    State s = perturbed_state(g, 0.1, 5, 2);
    TensorField33 G = effective_tensor(s);
    auto rho = s.rho_tilde.values();
    std::array<std::span<const double>, 9> f;
    for (int i = 0; i < 9; ++i) f[i] = s.F.comp[i].values();
    double worst = 0.0, asym = 0.0;
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        double m[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double sum = 0.0;
                for (int l = 0; l < 3; ++l)
                    sum += f[3 * i + l][p] * f[3 * j + l][p];
                m[i][j] = rho[p] * sum - (i == j ? 1.0 : 0.0);
            }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                worst = std::max(worst,
                                 std::abs(m[i][j] - G(i, j).values()[p]));
                asym = std::max(std::abs(G(i, j).values()[p] -
                                         G(j, i).values()[p]),
                                asym);
            }
    }
    CHECK(worst <= 1e-14);
    CHECK(asym <= 1e-13);
}

TEST_CASE("q_term zeros and pointwise oracle") {
    Grid g(8);
    VectorField u = random_divfree(g, 2, 9);
    TensorField33 gu = grad_vec(u);
    TensorField33 zero(g);
    TensorField33 qz = q_term(gu, zero);
    for (int i = 0; i < 9; ++i) CHECK(max_abs(qz.comp[i]) == 0.0);

    TensorField33 gz(g);  // grad u = 0
    TensorField33 G = random_tensor(g, 2, 10);
    TensorField33 qz2 = q_term(gz, G);
    for (int i = 0; i < 9; ++i) CHECK(max_abs(qz2.comp[i]) == 0.0);

    // constant G against a single-mode velocity
    TensorField33 cg(g);
    const double gval[3][3] = {{1.0, 0.5, 0.0},
                               {0.5, -1.0, 0.25},
                               {0.0, 0.25, 2.0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto v = cg(i, j).mutate_values();
            for (double& x : v) x = gval[i][j];
        }
    TensorField33 q = q_term(gu, cg);
    double worst = 0.0, asym = 0.0;
    for (std::size_t p = 0; p < g.point_count(); ++p)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double want = 0.0;
                for (int l = 0; l < 3; ++l)
                    want -= gu(i, l).values()[p] * gval[l][j] +
                            gval[i][l] * gu(j, l).values()[p];
                worst = std::max(worst, std::abs(want - q(i, j).values()[p]));
                asym = std::max(asym, std::abs(q(i, j).values()[p] -
                                               q(j, i).values()[p]));
            }
    CHECK(worst <= 1e-13);
    CHECK(asym <= 1e-13);  // symmetric G gives symmetric Q
}

TEST_CASE("strain rate of a shear flow and its trace") {
    Grid g(8);
    VectorField u(g);
    u[0] = make_field(g, [](double, double y, double) { return std::sin(y); });
    TensorField33 d = strain_rate(u);
    ScalarField want = make_field(g, [](double, double y, double) {
        return 0.5 * std::cos(y);
    });
    CHECK(max_abs_diff(d(0, 1), want) <= 1e-12);
    CHECK(max_abs_diff(d(1, 0), want) <= 1e-12);
    CHECK(max_abs(d(0, 0)) <= 1e-13);
    CHECK(max_abs(d(2, 2)) <= 1e-13);

    VectorField r = random_divfree(g, 3, 21);
    TensorField33 dr = strain_rate(r);
    TensorField33 gu = grad_vec(r);
    double trace = 0.0, asym = 0.0, worst = 0.0;
    for (std::size_t p = 0; p < g.point_count(); ++p) {
        trace = std::max(trace, std::abs(dr(0, 0).values()[p] +
                                         dr(1, 1).values()[p] +
                                         dr(2, 2).values()[p]));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                asym = std::max(asym, std::abs(dr(i, j).values()[p] -
                                               dr(j, i).values()[p]));
                const double want_ij = 0.5 * (gu(i, j).values()[p] +
                                              gu(j, i).values()[p]);
                worst = std::max(worst,
                                 std::abs(want_ij - dr(i, j).values()[p]));
            }
    }
    CHECK(trace <= 1e-12);
    CHECK(asym <= 1e-13);
    CHECK(worst <= 1e-14);
}

TEST_CASE("variable coefficient g(rho)") {
    Grid g(8);
    ScalarField zero(g);
    CHECK(max_abs(g_coeff(zero)) == 0.0);

    ScalarField one(g);
    {
        auto v = one.mutate_values();
        for (double& x : v) x = 1.0;
    }
    ScalarField half = g_coeff(one);
    CHECK(max_abs_diff(half, make_field(g, [](double, double, double) {
              return 0.5;
          })) <= 1e-15);

    ScalarField wave = make_field(g, [](double x, double, double) {
        return 0.1 * std::cos(x);
    });
    ScalarField out = g_coeff(wave);
    auto wv = wave.values();
    auto ov = out.values();
    for (std::size_t p = 0; p < g.point_count(); ++p)
        CHECK(ov[p] == doctest::Approx(wv[p] / (wv[p] + 1.0)).epsilon(1e-15));

    ScalarField bad = make_field(g, [](double, double, double) {
        return -1.5;
    });
    CHECK_THROWS_AS(g_coeff(bad), DensityNonpositive);
}

TEST_CASE("equilibrium is a fixed point of the full right-hand side") {
    Grid g(8);
    State eq(g);
    const ModelParams params;
    ScalarField p0(g);
    StateRates r = rhs_full(eq, params, p0);
    CHECK(max_abs(r.drho) <= 1e-12);
    for (int i = 0; i < 3; ++i) CHECK(max_abs(r.du[i]) <= 1e-12);
    for (int i = 0; i < 9; ++i) CHECK(max_abs(r.dF.comp[i]) <= 1e-12);
}

TEST_CASE("with rho=1, F=I the momentum rate reduces to projected Navier-Stokes") {
    Grid g(8);
    State s(g);
    s.u = random_divfree(g, 2, 33);
    for (int i = 0; i < 3; ++i) {
        SpecBuf sp(s.u[i].spectrum());
        for (auto& c : sp) c *= 0.1;
        s.u[i] = ScalarField::from_spectrum(g, std::move(sp));
    }
    const ModelParams params;
    VectorField f = unconstrained_accel(s, params);
    ScalarField p = solve_pressure(s.rho_tilde, f);
    StateRates r = rhs_full(s, params, p);

    // independent assembly: P(mu lap u - dealias(u . grad u))
    TensorField33 gu = grad_vec(s.u);
    VectorField expect(g);
    for (int i = 0; i < 3; ++i) {
        RealBuf buf(g.point_count(), 0.0);
        for (int l = 0; l < 3; ++l) {
            auto ul = s.u[l].values();
            auto gv = gu(i, l).values();
            for (std::size_t q = 0; q < buf.size(); ++q)
                buf[q] += ul[q] * gv[q];
        }
        ScalarField adv = dealias(ScalarField::from_samples(g, std::move(buf)));
        expect[i] = lincomb(params.mu, laplacian(s.u[i]), -1.0, adv);
    }
    expect = leray_project(expect);
    CHECK(rel_l2_diff(r.du, expect) <= 1e-12);
}

TEST_CASE("full right-hand side matches a term-by-term assembly") {
    Grid g(8);
    State s = perturbed_state(g, 0.05, 55, 2);
    const ModelParams params{1.3, 0.7, true};
    VectorField f = unconstrained_accel(s, params);
    ScalarField p = solve_pressure(s.rho_tilde, f, 1e-12, 200);
    StateRates r = rhs_full(s, params, p);

    // density: -dealias(u . grad rho)
    {
        VectorField gr = grad(s.rho_tilde);
        RealBuf buf(g.point_count(), 0.0);
        for (int l = 0; l < 3; ++l) {
            auto ul = s.u[l].values();
            auto gv = gr[l].values();
            for (std::size_t q = 0; q < buf.size(); ++q)
                buf[q] += ul[q] * gv[q];
        }
        ScalarField want = dealias(ScalarField::from_samples(g, std::move(buf)));
        SpecBuf sp(want.spectrum());
        for (auto& c : sp) c = -c;
        CHECK(rel_l2_diff(r.drho,
                          ScalarField::from_spectrum(g, std::move(sp))) <=
              1e-13);
    }

    // momentum: dealias((1/rho)(mu lap u + c^2 div G - grad p)) - u.grad u
    {
        TensorField33 G = effective_tensor(s);
        VectorField divG = div_tensor(G);
        VectorField gp = grad(p);
        auto rho = s.rho_tilde.values();
        TensorField33 gu = grad_vec(s.u);
        VectorField want(g);
        for (int i = 0; i < 3; ++i) {
            auto lap = laplacian(s.u[i]);
            auto lv = lap.values();
            auto dv = divG[i].values();
            auto pv = gp[i].values();
            RealBuf body(g.point_count());
            for (std::size_t q = 0; q < body.size(); ++q)
                body[q] = (params.mu * lv[q] +
                           params.c * params.c * dv[q]) / rho[q];
            RealBuf pterm(g.point_count());
            for (std::size_t q = 0; q < pterm.size(); ++q)
                pterm[q] = pv[q] / rho[q];
            RealBuf adv(g.point_count(), 0.0);
            for (int l = 0; l < 3; ++l) {
                auto ul = s.u[l].values();
                auto gv = gu(i, l).values();
                for (std::size_t q = 0; q < adv.size(); ++q)
                    adv[q] += ul[q] * gv[q];
            }
            ScalarField a =
                dealias(ScalarField::from_samples(g, std::move(body)));
            ScalarField b =
                dealias(ScalarField::from_samples(g, std::move(pterm)));
            ScalarField cadv =
                dealias(ScalarField::from_samples(g, std::move(adv)));
            want[i] = lincomb(1.0, lincomb(1.0, a, -1.0, b), -1.0, cadv);
        }
        CHECK(rel_l2_diff(r.du, want) <= 1e-12);
    }

    // deformation: -u.grad F + (grad u) F
    {
        TensorField33 gu = grad_vec(s.u);
        double worst = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                VectorField gf = grad(s.F(i, j));
                RealBuf adv(g.point_count(), 0.0);
                RealBuf st(g.point_count(), 0.0);
                for (int l = 0; l < 3; ++l) {
                    auto ul = s.u[l].values();
                    auto gv = gf[l].values();
                    auto guv = gu(i, l).values();
                    auto fv = s.F(l, j).values();
                    for (std::size_t q = 0; q < adv.size(); ++q) {
                        adv[q] += ul[q] * gv[q];
                        st[q] += guv[q] * fv[q];
                    }
                }
                ScalarField a =
                    dealias(ScalarField::from_samples(g, std::move(adv)));
                ScalarField b =
                    dealias(ScalarField::from_samples(g, std::move(st)));
                ScalarField want = lincomb(-1.0, a, 1.0, b);
                worst = std::max(worst, rel_l2_diff(r.dF(i, j), want));
            }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("rhs_full keeps the velocity divergence at the pressure tolerance") {
    Grid g(8);
    State s = perturbed_state(g, 0.05, 77, 2);
    const ModelParams params;
    VectorField f = unconstrained_accel(s, params);
    ScalarField p = solve_pressure(s.rho_tilde, f, 1e-12, 200);
    StateRates r = rhs_full(s, params, p);
    const double divn = spectral_l2_norm(div(r.du));
    const double gn = spectral_l2_norm(grad_vec(r.du));
    CHECK(divn <= 1e-8 * gn);
}

TEST_CASE("tensor evolution right-hand side") {
    Grid g(8);
    VectorField zero(g);
    TensorField33 G = random_tensor(g, 2, 61);
    TensorField33 r = rhs_G(zero, G);
    for (int i = 0; i < 9; ++i) CHECK(max_abs(r.comp[i]) <= 1e-15);

    VectorField u = random_divfree(g, 2, 62);
    TensorField33 gzero(g);
    TensorField33 r2 = rhs_G(u, gzero);
    TensorField33 d = strain_rate(u);
    double worst = 0.0;
    for (int i = 0; i < 9; ++i)
        worst = std::max(worst,
                         rel_l2_diff(r2.comp[i], lincomb(2.0, d.comp[i], 0.0,
                                                         d.comp[i])));
    CHECK(worst <= 1e-13);

    // generic inputs: independent pointwise assembly
    TensorField33 G3 = random_tensor(g, 2, 63);
    TensorField33 r3 = rhs_G(u, G3);
    TensorField33 gu = grad_vec(u);
    double worst3 = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            VectorField gg = grad(G3(i, j));
            RealBuf adv(g.point_count(), 0.0);
            RealBuf q(g.point_count(), 0.0);
            for (int l = 0; l < 3; ++l) {
                auto ul = u[l].values();
                auto gv = gg[l].values();
                auto a = gu(i, l).values();
                auto b = G3(l, j).values();
                auto c2 = G3(i, l).values();
                auto dd = gu(j, l).values();
                for (std::size_t pt = 0; pt < adv.size(); ++pt) {
                    adv[pt] += ul[pt] * gv[pt];
                    q[pt] -= a[pt] * b[pt] + c2[pt] * dd[pt];
                }
            }
            ScalarField sadv =
                dealias(ScalarField::from_samples(g, std::move(adv)));
            ScalarField sq =
                dealias(ScalarField::from_samples(g, std::move(q)));
            ScalarField dij = lincomb(0.5, gu(i, j), 0.5, gu(j, i));
            ScalarField want =
                lincomb(1.0, lincomb(-1.0, sadv, -1.0, sq), 2.0, dij);
            worst3 = std::max(worst3, rel_l2_diff(r3(i, j), want));
        }
    CHECK(worst3 <= 1e-12);
}

TEST_CASE("advection conserves the density mean exactly") {
    Grid g(8);
    VectorField u = random_divfree(g, 2, 71);
    ScalarField rho = random_scalar(g, 2, 72);
    ScalarField adv = advect(u, rho);
    CHECK(std::abs(adv.spectrum()[0]) <= 1e-12);
}

TEST_CASE("structure residuals: equilibrium, generic data, flow-map data") {
    Grid g(16);
    State eq(g);
    auto r0 = structure_residuals(eq);
    CHECK(r0.r_div == 0.0);
    CHECK(r0.r_curl == 0.0);
    CHECK(r0.r_state == 0.0);

    const double eps = 1e-2;
    State generic = perturbed_state(g, eps, 91, 2);
    auto rg = structure_residuals(generic);
    CHECK(rg.r_div > 1e-3 * eps);
    CHECK(rg.r_curl > 1e-3 * eps);
    CHECK(rg.r_state > 1e-3 * eps);
}

}  // TEST_SUITE
