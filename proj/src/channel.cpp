#include "uavcoop/channel.hpp"

#include <cmath>
#include <numbers>

namespace uavcoop {

LinkState make_link_state(const SystemParams& params, LinkTag tag)
{
    if (tag == LinkTag::LoS) return {tag, params.alpha_los, params.m_los};
    return {tag, params.alpha_nlos, kNlosNakagamiOrder};
}

std::string_view to_string(RegionLabel r)
{
    switch (r) {
    case RegionLabel::A1: return "A1";
    case RegionLabel::A2: return "A2";
    case RegionLabel::A3: return "A3";
    }
    return "?";
}

std::string_view to_string(LinkTag t) { return t == LinkTag::LoS ? "LoS" : "NLoS"; }

double elevation_deg(double uav_height, double r0)
{
    if (!(r0 >= 0.0)) throw DomainError("elevation_deg: r0 must be >= 0");
    if (r0 == 0.0) return 90.0;
    return std::atan(uav_height / r0) * 180.0 / std::numbers::pi;
}

double los_probability(const SystemParams& params, double r0)
{
    const double phi = elevation_deg(params.uav_height, r0);
    return 1.0 / (1.0 + params.env_c * std::exp(-params.env_b * (phi - params.env_c)));
}

double average_gain(const LinkState& state, double r0, double uav_height)
{
    if (!(r0 >= 0.0)) throw DomainError("average_gain: r0 must be >= 0");
    const double d2 = uav_height * uav_height + r0 * r0;
    if (d2 == 0.0) throw DomainError("average_gain: UAV and UE coincide (H = r0 = 0)");
    return std::pow(d2, -0.5 * state.alpha);
}

double average_gain(double alpha, double r)
{
    if (!(r > 0.0)) throw DomainError("average_gain: distance must be > 0");
    return std::pow(r, -alpha);
}

RegionThresholds region_thresholds(const SystemParams& params, const LinkState& state, double r0)
{
    if (!(r0 >= 0.0 && r0 <= params.radius_rc))
        throw DomainError("region_thresholds: r0 must lie in [0, R_c]");
    const double d2 = params.uav_height * params.uav_height + r0 * r0;
    const double uav_pl = std::pow(d2, 0.5 * state.alpha);  // d^alpha_s
    const double inv = 1.0 / params.alpha_nlos;
    RegionThresholds th{std::pow(params.delta * uav_pl, inv), std::nullopt};
    if (params.delta > 0.0) th.b = std::pow(uav_pl / params.delta, inv);
    return th;
}

RegionLabel assign_region(const RegionThresholds& th, double r1)
{
    if (r1 <= th.a) return RegionLabel::A1;
    if (!th.b || r1 <= *th.b) return RegionLabel::A2;
    return RegionLabel::A3;
}

RegionLabel assign_region(const SystemParams& params, const LinkState& state, double r0, double r1)
{
    return assign_region(region_thresholds(params, state, r0), r1);
}

}  // namespace uavcoop
