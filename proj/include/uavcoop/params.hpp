#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "uavcoop/errors.hpp"

namespace uavcoop {

/// Every scalar of the network model, shared by the analytics and the simulator.
///
/// Distances are in meters, densities in BSs per square meter. The SIR threshold
/// is linear. The NLoS Nakagami order is fixed to 1 and therefore not a field.
struct SystemParams {
    double env_b = 0.136;        ///< environment constant B of the LoS law
    double env_c = 11.95;        ///< environment constant C of the LoS law
    double radius_rc = 500.0;    ///< malfunction disc radius
    double uav_height = 300.0;   ///< UAV altitude
    double bs_density = 2e-5;    ///< ground-BS density
    double alpha_los = 2.5;      ///< LoS path-loss exponent
    double alpha_nlos = 3.0;     ///< NLoS (and ground) path-loss exponent
    int m_los = 4;               ///< Nakagami order of LoS links
    double delta = 0.2;          ///< cooperation parameter in [0, 1]
    double sir_threshold = 0.5;  ///< SIR threshold, linear
    int quad_n = 32;             ///< Chebyshev-Gauss node count
    double sim_radius = 40000.0; ///< simulation window radius
    std::int64_t sim_drops = 20000;

    bool operator==(const SystemParams&) const = default;
};

/// Largest LoS Nakagami order accepted; keeps every factorial used exact in 64 bits.
inline constexpr int kMaxNakagamiOrder = 20;

struct Violation {
    std::string field;
    std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Lists every violated invariant; an empty report means the parameters are usable.
[[nodiscard]] ValidationReport validate(const SystemParams& params);

/// Throws ConfigError naming the first violation when the report is non-empty.
void require_valid(const SystemParams& params);

/// Names of all configuration keys, in serialization order.
[[nodiscard]] const std::vector<std::string>& param_keys();

/// Serializes to a flat JSON object with one key per field.
[[nodiscard]] std::string to_config_text(const SystemParams& params);

/// Parses a flat JSON object. Missing keys keep their defaults; unknown keys and
/// wrongly typed values raise ConfigError naming the key.
[[nodiscard]] SystemParams parse_config_text(const std::string& text);

[[nodiscard]] SystemParams load_config(const std::filesystem::path& path);

/// Sets one field from a numeric value, as used by sweeps and CLI overrides.
void set_param(SystemParams& params, const std::string& key, double value);

[[nodiscard]] double get_param(const SystemParams& params, const std::string& key);

[[nodiscard]] inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace uavcoop
