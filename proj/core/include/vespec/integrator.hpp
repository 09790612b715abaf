#pragma once

#include "vespec/model.hpp"

namespace vespec {

struct StepperConfig {
    double dt = 1e-2;   ///< step size (upper bound when adaptive)
    double cfl = 0.4;   ///< CFL number in (0, 1]
    bool adaptive = false;
    bool co_evolve_G = false;
    double pressure_tol = 1e-10;
    int pressure_max_iter = 200;
};

struct StepStats {
    double dt_used = 0.0;
    int pressure_iterations = 0;  ///< both stages combined
    double min_rho = 0.0;
    double min_det_F = 0.0;
};

/// CFL step bound: cfl * h / max(||u||_inf, c (1 + ||G||_inf^{1/2}), floor),
/// capped at cfg.dt. G is the effective tensor of the state.
double cfl_dt(const State& state, const ModelParams& params,
              const StepperConfig& cfg);

/// One Heun step of G_t = -u.grad G - Q(grad u, G) + 2 D(u), using the
/// velocities at the step's two stage times.
TensorField33 evolve_G_step(const VectorField& u_begin,
                            const VectorField& u_stage,
                            const TensorField33& G, double dt);

/// One IFRK2 step (Heun with the integrating factor exp(-mu |k|^2 dt) on u;
/// rho~ and F advanced by the matching explicit two-stage scheme). The
/// pressure is solved once per stage; after the step u is re-projected to
/// the divergence-free, zero-mean subspace. Throws StepRejected on NaN,
/// nonpositive density, or pressure non-convergence. When cfg.co_evolve_G
/// is set and co_G is non-null, *co_G is advanced alongside by
/// evolve_G_step with the same stage velocities.
State step(const State& state, const ModelParams& params,
           const StepperConfig& cfg, TensorField33* co_G = nullptr,
           StepStats* stats = nullptr);

}  // namespace vespec
