#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "test_util.hpp"
#include "vespec/errors.hpp"
#include "vespec/pressure.hpp"
#include "vespec/random_fields.hpp"
#include "vespec/spectral_ops.hpp"

using namespace vespec;
using testutil::make_field;
using testutil::max_abs_diff;
using testutil::rel_l2_diff;

namespace {
constexpr double pi = std::numbers::pi;

ScalarField unit_density(const Grid& g) {
    ScalarField one(g);
    auto v = one.mutate_values();
    for (double& x : v) x = 1.0;
    return one;
}

// the discrete variable-coefficient operator the solver contracts on:
// lap p + div(dealias((1/rho - 1) grad p))
ScalarField pressure_operator(const ScalarField& rho_tilde,
                              const ScalarField& p) {
    const Grid& g = p.grid();
    auto rv = rho_tilde.values();
    VectorField gp = grad(p);
    VectorField scaled(g);
    for (int a = 0; a < 3; ++a) {
        auto gv = gp[a].values();
        RealBuf buf(g.point_count());
        for (std::size_t q = 0; q < buf.size(); ++q)
            buf[q] = (1.0 / rv[q] - 1.0) * gv[q];
        scaled[a] = dealias(ScalarField::from_samples(g, std::move(buf)));
    }
    return lincomb(1.0, laplacian(p), 1.0, div(scaled));
}

}  // namespace

TEST_SUITE("pressure") {

TEST_CASE("constant density: gradient data is reproduced in one iteration") {
    Grid g(8);
    ScalarField phi = make_field(g, [](double x, double, double) {
        return std::sin(x);
    });
    VectorField f = grad(phi);
    PressureSolveInfo info;
    ScalarField p = solve_pressure(unit_density(g), f, 1e-10, 200, &info);
    CHECK(info.iterations == 1);
    CHECK(max_abs_diff(p, phi) <= 1e-12);
}

TEST_CASE("constant density: p equals the spectral projection oracle") {
    Grid g(8);
    VectorField f = random_vector(g, 3, 303);
    ScalarField p = solve_pressure(unit_density(g), f, 1e-10, 200);
    ScalarField want = inv_laplacian(div(f));
    CHECK(rel_l2_diff(p, want) <= 1e-12);
}

TEST_CASE("variable density converges and the residual re-verifies") {
    Grid g(32);
    ScalarField rho = make_field(g, [](double x, double, double) {
        return 1.0 + 0.05 * std::cos(x);
    });
    VectorField f(g);
    f[0] = make_field(g, [](double, double y, double) {
        return std::sin(y);
    });
    f[1] = make_field(g, [](double, double, double z) {
        return std::cos(z);
    });
    PressureSolveInfo info;
    ScalarField p = solve_pressure(rho, f, 1e-10, 50, &info);
    CHECK(info.iterations <= 50);
    CHECK(std::abs(p.mean()) <= 1e-13);

    ScalarField lhs = pressure_operator(rho, p);
    ScalarField rhs = div(f);
    const double resid = spectral_l2_norm(lincomb(1.0, lhs, -1.0, rhs));
    CHECK(resid <= 1e-10 * spectral_l2_norm(rhs));
}

TEST_CASE("far-from-unit density reports NoConvergence") {
    Grid g(16);
    ScalarField rho = make_field(g, [](double x, double, double) {
        return std::max(1.0 + 1.5 * std::cos(x), 0.05);
    });
    VectorField f = random_vector(g, 2, 404);
    CHECK_THROWS_AS(solve_pressure(rho, f, 1e-10, 50), NoConvergence);
}

TEST_CASE("nonpositive density is rejected up front") {
    Grid g(8);
    ScalarField rho = make_field(g, [](double, double, double) {
        return -0.2;
    });
    VectorField f = random_vector(g, 2, 405);
    CHECK_THROWS_AS(solve_pressure(rho, f), DensityNonpositive);
}

TEST_CASE("1d transform: constant density cases") {
    const int n = 64;
    std::vector<double> rho(n, 0.0), p(n);
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = 2.0 * pi * i / n;
        p[i] = std::cos(2.0 * x) + 0.7;
        mean += p[i];
    }
    mean /= n;
    auto out = pressure_transform_1d(rho, p);
    for (int i = 0; i < n; ++i)
        CHECK(out.p_tilde[i] == doctest::Approx(p[i] - mean).epsilon(1e-12));

    const double a = 0.5;
    std::vector<double> rho2(n, a);
    auto out2 = pressure_transform_1d(rho2, p);
    for (int i = 0; i < n; ++i)
        CHECK(out2.p_tilde[i] ==
              doctest::Approx((p[i] - mean) / (1.0 + a)).epsilon(1e-12));
}

TEST_CASE("1d transform is linear in p") {
    const int n = 128;
    std::vector<double> rho(n), p(n);
    for (int i = 0; i < n; ++i) {
        const double x = 2.0 * pi * i / n;
        rho[i] = 0.2 * std::sin(x);
        p[i] = std::cos(2.0 * x);
    }
    auto base = pressure_transform_1d(rho, p);
    const double lambda = -3.25;
    std::vector<double> ps(n);
    for (int i = 0; i < n; ++i) ps[i] = lambda * p[i];
    auto scaled = pressure_transform_1d(rho, ps);
    for (int i = 0; i < n; ++i)
        CHECK(scaled.p_tilde[i] ==
              doctest::Approx(lambda * base.p_tilde[i]).epsilon(1e-12));
}

TEST_CASE("1d transform derivative property refines at second order") {
    std::vector<double> residuals;
    for (int n : {128, 256, 512}) {
        std::vector<double> rho(n), p(n);
        for (int i = 0; i < n; ++i) {
            const double x = 2.0 * pi * i / n;
            rho[i] = 0.2 * std::sin(x);
            p[i] = std::cos(2.0 * x);
        }
        auto out = pressure_transform_1d(rho, p);
        auto dpt = spectral_derivative_1d(out.p_tilde, 2.0 * pi);
        auto dp = spectral_derivative_1d(p, 2.0 * pi);
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            worst = std::max(worst,
                             std::abs(dpt[i] - dp[i] / (rho[i] + 1.0)));
        residuals.push_back(worst);
    }
    CHECK(residuals[1] <= residuals[0] / 4.0);
    CHECK(residuals[2] <= residuals[1] / 4.0);
}

TEST_CASE("1d transform rejects nonpositive density") {
    const int n = 32;
    std::vector<double> rho(n, -1.5), p(n, 1.0);
    CHECK_THROWS_AS(pressure_transform_1d(rho, p), DensityNonpositive);
}

}  // TEST_SUITE
