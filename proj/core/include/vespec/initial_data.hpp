#pragma once

#include <cstdint>

#include "vespec/model.hpp"

namespace vespec {

struct RunConfig;

/// Smallness functional of the global-existence statement:
///   || |k|^{-1}(rho~ - 1) ||_{H^3} + || |k|^{-1} u ||_{H^3}
///   + || |k|^{-1}(F - I) ||_{H^3}.
double theorem_norm(const State& state);

struct InitialData {
    State state;
    double theorem_norm = 0.0;
    StructureResiduals residuals;
};

/// Seeded band-limited random perturbation of (1, 0, I), rescaled so the
/// theorem norm equals cfg.epsilon exactly (each term is 1-homogeneous in
/// its perturbation). u is Leray-projected before rescaling. The structural
/// residuals of the data are measured and reported, never enforced.
InitialData generate_initial_data(const RunConfig& cfg, const Grid& grid);

/// Data built from an actual flow map x(X) = X + a * psi(X) with psi a
/// seeded band-limited periodic displacement: F is the Eulerian deformation
/// gradient (inverse map by fixed point, spectra evaluated off-grid), and
/// rho~ = 1/det F, so rho~ det F = 1 holds up to the 2/3 truncation applied
/// to store the fields as solver states.
State generate_flow_map_data(const Grid& grid, double amplitude, int band,
                             std::uint64_t seed);

}  // namespace vespec
