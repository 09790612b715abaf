#include "vespec/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vespec {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("bad boolean value: " + v);
}

}  // namespace

void RunConfig::validate() const {
    if (n < 8 || n % 2 != 0)
        throw std::invalid_argument("n must be even and >= 8");
    if (!(box_length > 0.0))
        throw std::invalid_argument("box_length must be positive");
    if (!(mu > 0.0) || !(c > 0.0))
        throw std::invalid_argument("mu and c must be positive");
    if (!(gamma0 > 0.0 && gamma0 < 0.5))
        throw std::invalid_argument("gamma0 must lie in (0, 1/2)");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("epsilon must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(cfl > 0.0 && cfl <= 1.0))
        throw std::invalid_argument("cfl must lie in (0, 1]");
    if (snapshot_every < 1)
        throw std::invalid_argument("snapshot_every must be >= 1");
    if (data_band < 0 || (data_band > 0 && data_band > n / 2 - 1))
        throw std::invalid_argument("data_band out of range");
    if (!(pressure_tol > 0.0) || pressure_max_iter < 1)
        throw std::invalid_argument("bad pressure solver settings");
    if (mode != "simulate" && mode != "identities" && mode != "dissipation" &&
        mode != "decay-report")
        throw std::invalid_argument("unknown mode: " + mode);
}

void apply_override(RunConfig& cfg, const std::string& key,
                    const std::string& value) {
    const std::string v = trim(value);
    if (key == "n") cfg.n = std::stoi(v);
    else if (key == "box_length") cfg.box_length = std::stod(v);
    else if (key == "mu") cfg.mu = std::stod(v);
    else if (key == "c") cfg.c = std::stod(v);
    else if (key == "gamma0") cfg.gamma0 = std::stod(v);
    else if (key == "epsilon") cfg.epsilon = std::stod(v);
    else if (key == "t_end") cfg.t_end = std::stod(v);
    else if (key == "dt") cfg.dt = std::stod(v);
    else if (key == "cfl") cfg.cfl = std::stod(v);
    else if (key == "adaptive") cfg.adaptive = parse_bool(v);
    else if (key == "snapshot_every") cfg.snapshot_every = std::stoi(v);
    else if (key == "seed") cfg.seed = std::stoull(v);
    else if (key == "output_dir") cfg.output_dir = v;
    else if (key == "mode") cfg.mode = v;
    else if (key == "co_evolve_G") cfg.co_evolve_G = parse_bool(v);
    else if (key == "dump_fields") cfg.dump_fields = parse_bool(v);
    else if (key == "data_band") cfg.data_band = std::stoi(v);
    else if (key == "pressure_tol") cfg.pressure_tol = std::stod(v);
    else if (key == "pressure_max_iter") cfg.pressure_max_iter = std::stoi(v);
    else throw std::invalid_argument("unknown config key: " + key);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " is not key = value");
        apply_override(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return cfg;
}

}  // namespace vespec
