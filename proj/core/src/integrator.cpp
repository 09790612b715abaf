#include "vespec/integrator.hpp"

#include <cmath>

#include "vespec/errors.hpp"
#include "vespec/pressure.hpp"
#include "vespec/spectral_ops.hpp"

namespace vespec {

namespace {

// exp(-mu |k|^2 dt) on every stored mode.
VectorField apply_heat_factor(const VectorField& v, double mu_dt) {
    const Grid& g = v.grid();
    const double dk2 = g.dk() * g.dk();
    const int n = g.n();
    const int nzh = g.nz_half();
    VectorField out(g);
    for (int a = 0; a < 3; ++a) {
        const SpecBuf& in = v[a].spectrum();
        SpecBuf s(g.spec_count());
        std::size_t idx = 0;
        for (int ix = 0; ix < n; ++ix) {
            const int mx = g.signed_mode(ix);
            for (int iy = 0; iy < n; ++iy) {
                const int my = g.signed_mode(iy);
                for (int izc = 0; izc < nzh; ++izc, ++idx) {
                    const double kk = dk2 * (mx * mx + my * my + izc * izc);
                    s[idx] = in[idx] * std::exp(-mu_dt * kk);
                }
            }
        }
        out[a] = ScalarField::from_spectrum(g, std::move(s));
    }
    return out;
}

// Explicit part of u_t = mu lap u + N: N = du - mu lap u.
VectorField explicit_part(const VectorField& du, const VectorField& u,
                          double mu) {
    VectorField lap = laplacian(u);
    VectorField out(u.grid());
    for (int i = 0; i < 3; ++i) out[i] = lincomb(1.0, du[i], -mu, lap[i]);
    return out;
}

// Projected, zero-mean velocity (perturbations live in the zero-mean frame).
VectorField constrain_velocity(const VectorField& u) {
    VectorField out = leray_project(u);
    for (int i = 0; i < 3; ++i) out[i].mutate_spectrum()[0] = cplx{0.0, 0.0};
    return out;
}

const ScalarField& pressure_density(const State& s, const ModelParams& p,
                                    ScalarField& ones_storage) {
    if (p.nonlinear_enabled) return s.rho_tilde;
    auto v = ones_storage.mutate_values();
    for (double& x : v) x = 1.0;
    return ones_storage;
}

}  // namespace

double cfl_dt(const State& state, const ModelParams& params,
              const StepperConfig& cfg) {
    constexpr double floor = 1e-8;
    const double h = state.grid().spacing();
    const double u_max = max_norm(state.u);
    const double g_max = max_abs(effective_tensor(state));
    const double speed =
        std::max({u_max, params.c * (1.0 + std::sqrt(g_max)), floor});
    return std::min(cfg.dt, cfg.cfl * h / speed);
}

TensorField33 evolve_G_step(const VectorField& u_begin,
                            const VectorField& u_stage,
                            const TensorField33& G, double dt) {
    TensorField33 k1 = rhs_G(u_begin, G);
    TensorField33 predictor = lincomb(1.0, G, dt, k1);
    TensorField33 k2 = rhs_G(u_stage, predictor);
    TensorField33 sum = lincomb(1.0, k1, 1.0, k2);
    return lincomb(1.0, G, 0.5 * dt, sum);
}

State step(const State& state, const ModelParams& params,
           const StepperConfig& cfg, TensorField33* co_G, StepStats* stats) {
    const Grid& g = state.grid();
    const double dt = cfg.adaptive ? cfl_dt(state, params, cfg) : cfg.dt;
    int pressure_iters = 0;

    try {
        ScalarField ones(g);

        // stage 1 at t
        StageEval s1 = stage_force(state, params);
        PressureSolveInfo info1;
        ScalarField p1 =
            solve_pressure(pressure_density(state, params, ones), s1.force,
                           cfg.pressure_tol, cfg.pressure_max_iter, &info1);
        pressure_iters += info1.iterations;
        StateRates r1 = rhs_from_stage(state, params, s1, p1);
        VectorField n1 = explicit_part(r1.du, state.u, params.mu);

        // predictor at t + dt
        State mid(g);
        mid.t = state.t + dt;
        mid.rho_tilde = lincomb(1.0, state.rho_tilde, dt, r1.drho);
        mid.F = lincomb(1.0, state.F, dt, r1.dF);
        {
            VectorField shifted(g);
            for (int i = 0; i < 3; ++i)
                shifted[i] = lincomb(1.0, state.u[i], dt, n1[i]);
            mid.u = constrain_velocity(
                apply_heat_factor(shifted, params.mu * dt));
        }

        // stage 2 at t + dt; pressure warm-started from stage 1
        StageEval s2 = stage_force(mid, params);
        PressureSolveInfo info2;
        ScalarField p2 =
            solve_pressure(pressure_density(mid, params, ones), s2.force,
                           cfg.pressure_tol, cfg.pressure_max_iter, &info2,
                           &p1);
        pressure_iters += info2.iterations;
        StateRates r2 = rhs_from_stage(mid, params, s2, p2);
        VectorField n2 = explicit_part(r2.du, mid.u, params.mu);

        State out(g);
        out.t = state.t + dt;
        out.rho_tilde = lincomb(1.0, state.rho_tilde, 0.5 * dt,
                                lincomb(1.0, r1.drho, 1.0, r2.drho));
        out.F = lincomb(1.0, state.F, 0.5 * dt, lincomb(1.0, r1.dF, 1.0, r2.dF));
        {
            VectorField decayed = apply_heat_factor(state.u, params.mu * dt);
            VectorField n1_decayed = apply_heat_factor(n1, params.mu * dt);
            VectorField u_new(g);
            for (int i = 0; i < 3; ++i) {
                ScalarField expl = lincomb(1.0, n1_decayed[i], 1.0, n2[i]);
                u_new[i] = lincomb(1.0, decayed[i], 0.5 * dt, expl);
            }
            out.u = constrain_velocity(u_new);
        }

        out.rho_tilde.check_finite("rho_tilde");
        out.u.check_finite("u");
        out.F.check_finite("F");
        const double min_rho = out.min_rho();
        if (!(min_rho > 0.0))
            throw StepRejected("density reached " + std::to_string(min_rho),
                               state.t);

        if (cfg.co_evolve_G && co_G)
            *co_G = evolve_G_step(state.u, mid.u, *co_G, dt);

        if (stats) {
            stats->dt_used = dt;
            stats->pressure_iterations = pressure_iters;
            stats->min_rho = min_rho;
            stats->min_det_F = out.min_det_F();
        }
        return out;
    } catch (const NoConvergence& e) {
        throw StepRejected(std::string("pressure solve: ") + e.what(), state.t);
    } catch (const DensityNonpositive& e) {
        throw StepRejected(std::string("density: ") + e.what(), state.t);
    } catch (const FieldNotFinite& e) {
        throw StepRejected(std::string("non-finite field: ") + e.what(),
                           state.t);
    }
}

}  // namespace vespec
