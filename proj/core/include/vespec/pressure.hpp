#pragma once

#include <span>
#include <vector>

#include "vespec/field.hpp"

namespace vespec {

struct PressureSolveInfo {
    int iterations = 0;
    double residual = 0.0;
};

/// Solves div((1/rho~) grad p) = div f for zero-mean p by fixed-point
/// iteration preconditioned with the constant-coefficient inverse Laplacian:
///
///   p^{m+1} = lap^{-1}[ div f - div( (1/rho~ - 1) grad p^m ) ],
///
/// the variable-coefficient product de-aliased (the residual is measured
/// against the identical discrete operator). Converges when
/// ||1/rho~ - 1||_inf < 1; otherwise throws NoConvergence after max_iter.
/// Residual target is tol * ||div f||_{L^2}.
/// An optional initial guess (e.g. the previous stage's pressure)
/// warm-starts the iteration.
ScalarField solve_pressure(const ScalarField& rho_tilde, const VectorField& f,
                           double tol = 1e-10, int max_iter = 200,
                           PressureSolveInfo* info = nullptr,
                           const ScalarField* initial_guess = nullptr);

struct PressureTransform1d {
    std::vector<double> p_tilde;
    /// Mean of the integrand rho_x p/(rho+1)^2 that had to be removed for a
    /// periodic antiderivative to exist.
    double integrand_mean = 0.0;
};

/// One-dimensional transformed pressure on a periodic grid:
///   p~ = p/(rho+1) + A[ rho_x p/(rho+1)^2 ],
/// with A the zero-mean trapezoid antiderivative (the integrand's mean is
/// subtracted and reported). Satisfies d/dx p~ = p_x/(rho+1) up to the
/// removed mean and O(h^2); linear in p. rho holds samples of rho~ - 1.
PressureTransform1d pressure_transform_1d(std::span<const double> rho,
                                          std::span<const double> p,
                                          double length = 6.283185307179586);

/// Spectral derivative of periodic 1D samples (helper shared with tests).
std::vector<double> spectral_derivative_1d(std::span<const double> f,
                                           double length);

}  // namespace vespec
