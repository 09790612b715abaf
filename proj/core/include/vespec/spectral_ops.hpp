#pragma once

#include "vespec/field.hpp"

namespace vespec {

// ---------------------------------------------------------------------------
// Fourier-multiplier calculus on the periodic grid.
//
// Conventions (see also Grid):
//   * even multipliers (|k|^s, -|k|^2, Leray projector) act on every stored
//     mode; the Nyquist planes carry |k| = (2*pi/L) * n/2 unambiguously.
//   * first-derivative multipliers i*k_a annihilate the Nyquist plane of
//     their axis (the sign of k there is not representable). Consequently
//     div(grad f) == laplacian(f) on fields with no Nyquist content; evolved
//     fields are always 2/3-dealiased and never reach those planes.
//   * the zero mode: derivatives map it to zero; riesz forces it to zero for
//     s != 0; the Leray projector passes it through (constants are
//     divergence-free).
// ---------------------------------------------------------------------------

/// ||f||_{L^2} from samples: sqrt(h^3 * sum f^2).
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& v);
double l2_norm(const TensorField33& t);

/// ||f||_{L^2} from coefficients: sqrt(V * sum_k |fhat(k)|^2); equals
/// l2_norm by Parseval.
double spectral_l2_norm(const ScalarField& f);
double spectral_l2_norm(const VectorField& v);
double spectral_l2_norm(const TensorField33& t);

/// |fhat(0)| / rms(f); 0 for the zero field. Gate for negative-order
/// multipliers.
double relative_mean(const ScalarField& f);

/// Pointwise max of |f|, |v| (Euclidean), or max |T_ij|.
double max_abs(const ScalarField& f);
double max_norm(const VectorField& v);
double max_abs(const TensorField33& t);

/// Riesz multiplier |k|^s. For s < 0 requires relative_mean <= 1e-12
/// (throws NegativeOrderOnNonzeroMean). The zero mode maps to 0 when s != 0.
ScalarField riesz(const ScalarField& f, double s);

/// -fhat(k)/|k|^2 with zero-mode 0; requires zero mean (throws NonzeroMean).
ScalarField inv_laplacian(const ScalarField& f);

ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);

VectorField grad(const ScalarField& f);
ScalarField div(const VectorField& v);
/// (div T)_i = d_j T_ij (contraction over the second index).
VectorField div_tensor(const TensorField33& t);
/// (grad u)_ij = d u_i / d x_j (Jacobian).
TensorField33 grad_vec(const VectorField& u);

/// Helmholtz/Leray projection: vhat - k (k . vhat)/|k|^2, zero mode
/// unchanged.
VectorField leray_project(const VectorField& v);

/// 2/3-rule truncation: zero every mode with 3|m_i| >= n on any axis.
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);
TensorField33 dealias(const TensorField33& t);

/// dealias(u . grad f) — convective derivative with the product de-aliased.
ScalarField advect(const VectorField& u, const ScalarField& f);
VectorField advect(const VectorField& u, const VectorField& w);
TensorField33 advect(const VectorField& u, const TensorField33& t);

/// f - mean(f).
ScalarField remove_mean(const ScalarField& f);

}  // namespace vespec
