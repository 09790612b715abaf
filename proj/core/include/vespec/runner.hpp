#pragma once

#include "vespec/run_config.hpp"

namespace vespec {

/// Executes the configured mode (simulate | identities | dissipation |
/// decay-report), writing machine-readable artifacts under cfg.output_dir.
/// Returns the process exit code: nonzero when a simulation step was
/// rejected or an identity check failed.
int run(const RunConfig& cfg);

}  // namespace vespec
