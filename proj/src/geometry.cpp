#include "uavcoop/geometry.hpp"

#include <cmath>
#include <numbers>

#include "uavcoop/numerics.hpp"

namespace uavcoop {

namespace {

constexpr double pi = std::numbers::pi;

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

// Angle at the UE between the direction to the disc centre and a point at
// distance r on the hole boundary (law of cosines).
double lens_half_angle(const HoleGeometry& g, double r)
{
    return clamped_acos((g.r0 * g.r0 + r * r - g.radius_rc * g.radius_rc) / (2.0 * g.r0 * r));
}

// Angle at the disc centre subtending the same boundary point.
double hole_half_angle(const HoleGeometry& g, double r)
{
    const double rc = g.radius_rc;
    return clamped_acos((rc * rc + g.r0 * g.r0 - r * r) / (2.0 * rc * g.r0));
}

}  // namespace

HoleGeometry make_hole_geometry(const SystemParams& params, double r0)
{
    if (!(r0 >= 0.0 && r0 <= params.radius_rc))
        throw DomainError("UE distance r0 must lie in [0, R_c]");
    return {r0, params.radius_rc, params.bs_density};
}

double lens_exclusion_area(const HoleGeometry& g, double r)
{
    if (!(r > 0.0)) throw DomainError("lens_exclusion_area: r must be > 0");
    const double rc = g.radius_rc;
    if (r <= rc - g.r0) return 0.0;
    if (g.r0 == 0.0 || r >= rc + g.r0) return pi * (r * r - rc * rc);

    const double t1 = hole_half_angle(g, r);
    const double t2 = lens_half_angle(g, r);
    const double s0 = t1 * rc * rc - rc * rc * std::sin(t1) * std::cos(t1);
    const double s1 = t2 * r * r - r * r * std::sin(t2) * std::cos(t2);
    return std::max(0.0, pi * r * r - s0 - s1);
}

double lens_exclusion_area_derivative(const HoleGeometry& g, double r)
{
    if (!(r > 0.0)) throw DomainError("lens_exclusion_area_derivative: r must be > 0");
    const double rc = g.radius_rc;
    if (r <= rc - g.r0) return 0.0;
    if (g.r0 == 0.0 || r >= rc + g.r0) return 2.0 * pi * r;
    return 2.0 * r * (pi - lens_half_angle(g, r));
}

double nearest_bs_cdf(const HoleGeometry& g, double r)
{
    if (!(r >= 0.0)) throw DomainError("nearest_bs_cdf: r must be >= 0");
    if (r <= g.radius_rc - g.r0) return 0.0;
    return -std::expm1(-g.bs_density * lens_exclusion_area(g, r));
}

double nearest_bs_pdf(const HoleGeometry& g, double r)
{
    if (!(r >= 0.0)) throw DomainError("nearest_bs_pdf: r must be >= 0");
    if (r <= g.radius_rc - g.r0) return 0.0;
    return g.bs_density * lens_exclusion_area_derivative(g, r) *
           std::exp(-g.bs_density * lens_exclusion_area(g, r));
}

double nearest_bs_quantile(const HoleGeometry& g, double p)
{
    if (!(p >= 0.0 && p < 1.0)) throw DomainError("nearest_bs_quantile: p must lie in [0, 1)");
    const double lo = std::max(g.radius_rc - g.r0, 0.0);
    if (p == 0.0) return lo;
    // S(r) is increasing, so solve S(r) = -log(1 - p) / lambda.
    const double target = -std::log1p(-p) / g.bs_density;
    // Outer-branch solution bounds the root from above.
    double hi = std::sqrt(g.radius_rc * g.radius_rc + target / pi) + g.r0 + 1.0;
    hi = std::max(hi, g.radius_rc + g.r0);
    auto f = [&](double r) { return (r > 0.0 ? lens_exclusion_area(g, r) : 0.0) - target; };
    return find_root(f, lo, hi, 1e-13 * hi);
}

double truncation_radius(const HoleGeometry& g)
{
    return nearest_bs_quantile(g, 1.0 - kTruncationMass);
}

}  // namespace uavcoop
