#pragma once

#include <cstdint>
#include <string>

namespace vespec {

/// Everything a run needs; every key of the plain-text config file maps
/// 1:1 onto a field here (command-line flags override file values).
struct RunConfig {
    int n = 32;
    double box_length = 6.283185307179586;
    double mu = 1.0;
    double c = 1.0;
    double gamma0 = 0.25;
    double epsilon = 1e-2;
    double t_end = 10.0;
    double dt = 5e-2;
    double cfl = 0.4;
    bool adaptive = true;
    int snapshot_every = 5;
    std::uint64_t seed = 12345;
    std::string output_dir = "out";
    std::string mode = "simulate";  ///< simulate|identities|dissipation|decay-report
    bool co_evolve_G = false;
    bool dump_fields = false;
    int data_band = 0;  ///< 0 -> n/6
    double pressure_tol = 1e-10;
    int pressure_max_iter = 200;

    /// Throws std::invalid_argument on out-of-range values
    /// (n even >= 8, 0 < gamma0 < 1/2, epsilon > 0, ...).
    void validate() const;

    int effective_data_band() const {
        return data_band > 0 ? data_band : std::max(1, n / 6);
    }
};

/// Parses `key = value` lines ('#' comments); unknown keys are errors.
RunConfig load_config(const std::string& path);

/// Sets one field by key name (same names as the config file).
void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value);

}  // namespace vespec
