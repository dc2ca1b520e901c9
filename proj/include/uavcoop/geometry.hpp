#pragma once

#include "uavcoop/params.hpp"

namespace uavcoop {

/// UE position and hole data needed for nearest-BS statistics.
struct HoleGeometry {
    double r0;          ///< UE horizontal distance from the disc centre
    double radius_rc;   ///< malfunction disc radius
    double bs_density;  ///< ground-BS density
};

/// Builds a HoleGeometry, requiring 0 <= r0 <= R_c.
[[nodiscard]] HoleGeometry make_hole_geometry(const SystemParams& params, double r0);

/// Area of the disc of radius r around the UE that lies outside the malfunction
/// disc. Zero while the UE disc is inside the hole, R_c - r0 >= r.
[[nodiscard]] double lens_exclusion_area(const HoleGeometry& g, double r);

/// d/dr of lens_exclusion_area: the arc length of the UE circle outside the hole.
[[nodiscard]] double lens_exclusion_area_derivative(const HoleGeometry& g, double r);

/// Conditional CDF of the nearest ground-BS distance given r0.
[[nodiscard]] double nearest_bs_cdf(const HoleGeometry& g, double r);

/// Conditional pdf of the nearest ground-BS distance given r0.
[[nodiscard]] double nearest_bs_pdf(const HoleGeometry& g, double r);

/// Smallest r with nearest_bs_cdf(r) >= p, for p in [0, 1).
[[nodiscard]] double nearest_bs_quantile(const HoleGeometry& g, double p);

/// Upper truncation for integrals over r1: CDF(r_max) >= 1 - 1e-8.
[[nodiscard]] double truncation_radius(const HoleGeometry& g);

inline constexpr double kTruncationMass = 1e-8;

}  // namespace uavcoop
