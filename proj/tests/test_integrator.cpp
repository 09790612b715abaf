#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vespec/errors.hpp"
#include "vespec/integrator.hpp"
#include "vespec/random_fields.hpp"
#include "vespec/spectral_ops.hpp"

using namespace vespec;
using testutil::make_field;
using testutil::perturbed_state;
using testutil::rel_l2_diff;

TEST_SUITE("integrator") {

TEST_CASE("equilibrium is exactly stationary over many steps") {
    Grid g(4);
    State s(g);
    const ModelParams params;
    StepperConfig cfg;
    cfg.dt = 1e-2;
    for (int i = 0; i < 10000; ++i) s = step(s, params, cfg);
    double drift = 0.0;
    for (double v : s.rho_tilde.values())
        drift = std::max(drift, std::abs(v - 1.0));
    for (int i = 0; i < 3; ++i) drift = std::max(drift, max_abs(s.u[i]));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto v = s.F(i, j).values();
            for (double x : v)
                drift = std::max(drift, std::abs(x - (i == j ? 1.0 : 0.0)));
        }
    CHECK(drift <= 1e-10);
    CHECK(s.t == doctest::Approx(100.0));
}

TEST_CASE("linear mode: exact heat decay of a single divergence-free mode") {
    Grid g(8);
    State s(g);
    // k = (1,1,0), amplitude along (1,-1,0): div-free, |k|^2 = 2
    s.u[0] = make_field(g, [](double x, double y, double) {
        return std::cos(x + y);
    });
    s.u[1] = make_field(g, [](double x, double y, double) {
        return -std::cos(x + y);
    });
    ModelParams params;
    params.nonlinear_enabled = false;
    StepperConfig cfg;
    cfg.dt = 2e-2;

    const double u0 = max_abs(s.u[0]);
    for (int m = 1; m <= 50; ++m) {
        s = step(s, params, cfg);
        const double expect = u0 * std::exp(-2.0 * cfg.dt * m);
        const double got = max_abs(s.u[0]);
        CHECK(std::abs(got - expect) <= 1e-13 * expect);
    }
}

TEST_CASE("Richardson refinement: second-order convergence in dt") {
    Grid g(8);
    const ModelParams params;
    auto advance = [&](double dt, double T) {
        State s = perturbed_state(g, 0.05, 1234, 2);
        StepperConfig cfg;
        cfg.dt = dt;
        while (s.t < T - 1e-12) s = step(s, params, cfg);
        return s;
    };
    const double T = 0.2;
    State a = advance(2e-2, T);
    State b = advance(1e-2, T);
    State c = advance(5e-3, T);
    const double e1 = rel_l2_diff(a.u, b.u);
    const double e2 = rel_l2_diff(b.u, c.u);
    const double order = std::log2(e1 / e2);
    CHECK(order >= 1.8);
}

TEST_CASE("cfl_dt formula") {
    Grid g(32);
    const double h = g.spacing();
    State eq(g);
    ModelParams params;
    StepperConfig cfg;
    cfg.dt = 1e9;
    cfg.cfl = 0.4;
    // u = 0, G = 0: the elastic speed c(1 + 0) = 1 rules
    CHECK(cfl_dt(eq, params, cfg) == doctest::Approx(0.4 * h).epsilon(1e-12));
    cfg.dt = 1e-4;  // cap applies
    CHECK(cfl_dt(eq, params, cfg) == doctest::Approx(1e-4));

    // unit-amplitude velocity: still dt = cfl h / max(1, 1)
    State s(g);
    s.u[0] = make_field(g, [](double, double y, double) {
        return std::sin(y);
    });
    cfg.dt = 1e9;
    CHECK(cfl_dt(s, params, cfg) == doctest::Approx(0.4 * h).epsilon(1e-12));

    // random state equals a direct evaluation of the formula
    State r = perturbed_state(g, 0.2, 77, 3);
    const double umax = max_norm(r.u);
    const double gmax = max_abs(effective_tensor(r));
    const double expect =
        std::min(cfg.dt, 0.4 * h / std::max({umax, params.c *
                                             (1.0 + std::sqrt(gmax)), 1e-8}));
    CHECK(cfl_dt(r, params, cfg) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("evolve_G_step: frozen velocity and leading-order growth") {
    Grid g(8);
    VectorField zero(g);
    TensorField33 G = random_tensor(g, 2, 5);
    TensorField33 out = evolve_G_step(zero, zero, G, 0.1);
    double diff = 0.0;
    for (int i = 0; i < 9; ++i)
        diff = std::max(diff, rel_l2_diff(out.comp[i], G.comp[i]));
    CHECK(diff <= 1e-15);

    VectorField u = random_divfree(g, 2, 6);
    TensorField33 gzero(g);
    TensorField33 d = strain_rate(u);
    auto leading_error = [&](double dt) {
        TensorField33 g1 = evolve_G_step(u, u, gzero, dt);
        double m = 0.0;
        for (int i = 0; i < 9; ++i) {
            ScalarField want = lincomb(2.0 * dt, d.comp[i], 0.0, d.comp[i]);
            m = std::max(m, spectral_l2_norm(
                                lincomb(1.0, g1.comp[i], -1.0, want)));
        }
        return m;
    };
    const double c1 = leading_error(1e-2);
    const double c2 = leading_error(5e-3);
    CHECK(c2 <= c1 / 3.0);  // O(dt^2) remainder
}

TEST_CASE("co-evolved G tracks the direct effective tensor at scheme order") {
    Grid g(16);
    const ModelParams params;
    auto gap_at = [&](double dt) {
        State s = perturbed_state(g, 0.02, 99, 2);
        TensorField33 co = effective_tensor(s);
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.co_evolve_G = true;
        const double T = 0.5;
        while (s.t < T - 1e-12) s = step(s, params, cfg, &co);
        TensorField33 direct = effective_tensor(s);
        double gap = 0.0;
        for (int i = 0; i < 9; ++i) {
            const double d = spectral_l2_norm(
                lincomb(1.0, co.comp[i], -1.0, direct.comp[i]));
            gap += d * d;
        }
        return std::sqrt(gap);
    };
    const double g1 = gap_at(2e-2);
    const double g2 = gap_at(1e-2);
    const double g3 = gap_at(5e-3);
    CHECK(std::log2(g1 / g2) >= 1.8);
    CHECK(std::log2(g2 / g3) >= 1.8);
}

TEST_CASE("steps preserve the divergence constraint and the density mean") {
    Grid g(8);
    State s = perturbed_state(g, 0.05, 314, 2);
    const ModelParams params;
    StepperConfig cfg;
    cfg.dt = 5e-3;
    for (int i = 0; i < 200; ++i) s = step(s, params, cfg);
    const double divn = spectral_l2_norm(div(s.u));
    const double gn = spectral_l2_norm(grad_vec(s.u));
    CHECK(divn <= 1e-8 * gn);
    CHECK(std::abs(s.rho_tilde.mean() - 1.0) <= 1e-10);
    // velocity stays in the zero-mean frame
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(s.u[i].mean()) <= 1e-14);
}

TEST_CASE("invariant violations reject the step with a reason") {
    Grid g(8);
    const ModelParams params;
    StepperConfig cfg;
    cfg.dt = 1e-2;

    State bad(g);
    {
        auto v = bad.rho_tilde.mutate_values();
        for (double& x : v) x = -0.5;
    }
    CHECK_THROWS_AS(step(bad, params, cfg), StepRejected);

    State nan_state(g);
    nan_state.u[0].mutate_values()[0] = std::nan("");
    CHECK_THROWS_AS(step(nan_state, params, cfg), StepRejected);

    // density too far from 1 for the pressure preconditioner
    State stiff(g);
    {
        auto v = stiff.rho_tilde.mutate_values();
        const Grid& gg = stiff.grid();
        for (int ix = 0; ix < gg.n(); ++ix)
            for (int iy = 0; iy < gg.n(); ++iy)
                for (int iz = 0; iz < gg.n(); ++iz)
                    v[gg.real_index(ix, iy, iz)] = std::max(
                        1.0 + 1.5 * std::cos(gg.coordinate(ix)), 0.05);
    }
    stiff.u = random_divfree(g, 2, 11);
    StepperConfig strict = cfg;
    strict.pressure_max_iter = 40;
    CHECK_THROWS_AS(step(stiff, params, strict), StepRejected);
}

}  // TEST_SUITE
