#pragma once

#include <cstdint>

#include "vespec/model.hpp"

namespace vespec {

// Numerical verification of the standalone algebraic identities the
// energy analysis rests on, on band-limited inputs where the de-aliased
// products are exact convolutions, so every identity holds to round-off.
// All residuals are relative L^2: ||lhs - rhs|| / max(||lhs||, ||rhs||).

/// Commutator of projected divergence and advection for a tensor field:
///   P div(u . grad F) = P(u . grad P div F) + P(grad u . grad F)
///                       - P(grad u . grad lap^{-1} div div F),
/// with [grad u . grad F]_i = sum_j d_j u . grad F_ij and
/// [grad u . grad lap^{-1} div div F]_i = d_i u . grad lap^{-1} div div F.
/// Requires div u = 0 (relative divergence <= 1e-10).
double check_commutator(const VectorField& u, const TensorField33& F);

struct ProjectionAlgebraResiduals {
    double idempotence = 0.0;  ///< max ||P P v - P v|| / ||v||
    double divergence = 0.0;   ///< max ||div P v|| / ||grad v||
    double gradient_kill = 0.0;  ///< max ||P grad phi|| / ||grad phi||
};
/// Evaluates the projector algebra on `samples` seeded random fields.
ProjectionAlgebraResiduals check_projection_algebra(const Grid& grid,
                                                    int samples,
                                                    std::uint64_t seed);

/// Consistency of the effective-tensor evolution with the transport
/// equations: d/dt(rho~ F F^T) assembled from the three transport rates
/// against -u . grad G - Q(grad u, G) + 2 D(u) on G = rho~ F F^T - I.
double check_G_derivation(const State& state);

/// Divergence form of the evolution: div G_t + div(u . grad G)
/// + div Q(grad u, G) = lap u for divergence-free u.
double check_divG_evolution(const VectorField& u, const TensorField33& G);

}  // namespace vespec
