#pragma once

#include <optional>
#include <string_view>

#include "uavcoop/params.hpp"

namespace uavcoop {

enum class LinkTag { LoS, NLoS };

/// UAV-to-UE link state with its path-loss exponent and Nakagami order.
struct LinkState {
    LinkTag tag;
    double alpha;
    int m;

    bool operator==(const LinkState&) const = default;
};

[[nodiscard]] LinkState make_link_state(const SystemParams& params, LinkTag tag);

/// Ground links are always NLoS Rayleigh.
inline constexpr int kNlosNakagamiOrder = 1;

enum class RegionLabel { A1, A2, A3 };

[[nodiscard]] std::string_view to_string(RegionLabel r);
[[nodiscard]] std::string_view to_string(LinkTag t);

/// Probability that the UAV link is LoS at horizontal distance r0.
/// The elevation angle enters in degrees.
[[nodiscard]] double los_probability(const SystemParams& params, double r0);

/// Elevation angle in degrees; 90 at r0 = 0.
[[nodiscard]] double elevation_deg(double uav_height, double r0);

/// (H^2 + r0^2)^(-alpha/2).
[[nodiscard]] double average_gain(const LinkState& state, double r0, double uav_height);

/// r^(-alpha) for a ground link at distance r.
[[nodiscard]] double average_gain(double alpha, double r);

/// Region boundaries on the nearest-BS distance. `b` is empty when unbounded (delta = 0).
struct RegionThresholds {
    double a;
    std::optional<double> b;
};

[[nodiscard]] RegionThresholds region_thresholds(const SystemParams& params, const LinkState& state,
                                                 double r0);

[[nodiscard]] RegionLabel assign_region(const SystemParams& params, const LinkState& state,
                                        double r0, double r1);

/// Same rule given precomputed thresholds.
[[nodiscard]] RegionLabel assign_region(const RegionThresholds& th, double r1);

}  // namespace uavcoop
