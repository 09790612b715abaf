#pragma once

#include "vespec/field.hpp"

namespace vespec {

struct ModelParams {
    double mu = 1.0;  ///< shear viscosity
    double c = 1.0;   ///< elastic wave speed
    /// When false, right-hand sides evaluate the linearization about the
    /// equilibrium (1, 0, I) — used by exact-decay integration tests.
    bool nonlinear_enabled = true;
};

/// Evolved unknowns (rho~, u, F) at one time instant.
struct State {
    /// Constructs the equilibrium state (1, 0, I).
    explicit State(const Grid& grid);

    ScalarField rho_tilde;
    VectorField u;
    TensorField33 F;
    double t = 0.0;

    const Grid& grid() const { return rho_tilde.grid(); }
    double min_rho() const;
    double min_det_F() const;
};

struct StateRates {
    explicit StateRates(const Grid& grid) : drho(grid), du(grid), dF(grid) {}
    ScalarField drho;
    VectorField du;
    TensorField33 dF;
};

/// Effective tensor G = rho~ F F^T - I (pointwise; always symmetric).
TensorField33 effective_tensor(const State& state);

/// Q(grad u, G) = -(grad u) G - G (grad u)^T (pointwise).
TensorField33 q_term(const TensorField33& grad_u, const TensorField33& G);

/// D(u) = (grad u + (grad u)^T)/2; trace D = div u.
TensorField33 strain_rate(const VectorField& u);

/// g(rho) = rho/(rho + 1); throws DensityNonpositive if min(rho + 1) <= 0.
ScalarField g_coeff(const ScalarField& rho);

/// Acceleration before the pressure gradient is removed:
///   f = (1/rho~)(mu lap u + c^2 div(rho~ F F^T)) - u . grad u,
/// every product de-aliased. The pressure then solves
/// div((1/rho~) grad p) = div f so that du = f - (1/rho~) grad p is
/// divergence-free up to the pressure tolerance.
VectorField unconstrained_accel(const State& state, const ModelParams& params);

/// Rates of the full system for a given pressure (normally the output of
/// solve_pressure for this state):
///   drho = -u . grad rho~,
///   du   = f - (1/rho~) grad p,
///   dF   = -u . grad F + (grad u) F.
StateRates rhs_full(const State& state, const ModelParams& params,
                    const ScalarField& pressure);

/// Stage work shared between the force and the rates (the velocity
/// Jacobian feeds both the advection and the stretch term); the stepper
/// evaluates it once per stage.
struct StageEval {
    VectorField force;
    TensorField33 grad_u;
};
StageEval stage_force(const State& state, const ModelParams& params);
StateRates rhs_from_stage(const State& state, const ModelParams& params,
                          const StageEval& stage, const ScalarField& pressure);

/// Effective-tensor evolution: G_t = -u . grad G - Q(grad u, G) + 2 D(u).
TensorField33 rhs_G(const VectorField& u, const TensorField33& G);

/// Sup-norm residuals of the three structural constraints on initial data
/// (reported, never enforced):
///   r_state: rho~ det F - 1,
///   r_div:   div(rho~ F^T),
///   r_curl:  F_lk d_l F_ij - F_lj d_l F_ik.
struct StructureResiduals {
    double r_div = 0.0;
    double r_curl = 0.0;
    double r_state = 0.0;
};
StructureResiduals structure_residuals(const State& state);

}  // namespace vespec
