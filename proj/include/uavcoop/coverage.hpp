#pragma once

#include <array>
#include <string_view>

#include "uavcoop/channel.hpp"
#include "uavcoop/interference.hpp"
#include "uavcoop/numerics.hpp"
#include "uavcoop/params.hpp"

namespace uavcoop {

/// Joint probabilities {UE in region i and covered}, plus their sum.
struct CoverageBreakdown {
    double pc1 = 0.0;
    double pc2 = 0.0;
    double pc3 = 0.0;
    double total = 0.0;
};

/// Expected region areas (m^2) and the same areas normalized by pi R_c^2.
struct AreaFractions {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;
};

/// Partial fractions of beta0^m beta1 / ((s + beta0)^m (s + beta1)).
/// a0[k-1] holds A_{0k}, k = 1..m; a1 holds A_{11}.
struct PartialFractionCoeffs {
    int alpha0 = 1;
    double beta0 = 0.0;
    int alpha1 = 1;
    double beta1 = 0.0;
    std::vector<double> a0;
    double a1 = 0.0;
    double u0 = 0.0;
    double u1 = 0.0;
};

/// Throws DomainError when |beta0 - beta1| / max(beta0, beta1) < 1e-9.
[[nodiscard]] PartialFractionCoeffs make_partial_fractions(int m, double beta0, double beta1,
                                                           double epsilon);

/// Evaluates the decomposition at s (for checking the reconstruction).
[[nodiscard]] double partial_fraction_value(const PartialFractionCoeffs& pf, double s);

/// Conditional coverage given r0, r1 and the UAV link state, one per service mode.
[[nodiscard]] double p1(const SystemParams& params, const LinkState& state, double r0, double r1);
[[nodiscard]] double p1_no_uav(const SystemParams& params, double r0, double r1);
[[nodiscard]] double p2(const SystemParams& params, const LinkState& state, double r0, double r1);
[[nodiscard]] double p3(const SystemParams& params, const LinkState& state, double r0, double r1);

/// Same quantities on a prebuilt context (r0, r1 taken from it).
[[nodiscard]] double p1(const SystemParams& params, const LinkState& state, const LaplaceContext& ctx);
[[nodiscard]] double p2(const SystemParams& params, const LinkState& state, const LaplaceContext& ctx);
[[nodiscard]] double p3(const SystemParams& params, const LinkState& state, const LaplaceContext& ctx);

/// Pr(UE in A_i | r0) mixed over the link state; indices 0..2 for A1..A3.
[[nodiscard]] std::array<double, 3> region_probabilities(const SystemParams& params, double r0);

[[nodiscard]] CoverageBreakdown conditional_coverage(const SystemParams& params, double r0,
                                                     const QuadOptions& opts = {});

[[nodiscard]] double benchmark_uav_only_coverage(const SystemParams& params, double r0,
                                                 const QuadOptions& opts = {});
[[nodiscard]] double benchmark_ground_only_coverage(const SystemParams& params, double r0,
                                                    const QuadOptions& opts = {});

enum class Scheme { Proposed, UavOnly, GroundOnly };

[[nodiscard]] std::string_view to_string(Scheme s);
[[nodiscard]] Scheme parse_scheme(std::string_view text);

/// Coverage probability at r0 under the given scheme.
[[nodiscard]] double scheme_coverage(const SystemParams& params, Scheme scheme, double r0,
                                     const QuadOptions& opts = {});

/// Region-averaged coverage: each pc_i integrated against 2 r0 / R_c^2.
[[nodiscard]] CoverageBreakdown average_coverage(const SystemParams& params,
                                                 const QuadOptions& opts = {});

[[nodiscard]] AreaFractions area_fractions(const SystemParams& params,
                                           const QuadOptions& opts = {1e-9, 0.0, 4000});

/// Base-station count per region for the NSE: (1, 2, 1).
inline constexpr std::array<double, 3> kRegionBsCount = {1.0, 2.0, 1.0};

/// Normalized spectral efficiency, nats per channel use per BS.
[[nodiscard]] double nse(const SystemParams& params, Scheme scheme = Scheme::Proposed,
                         const QuadOptions& opts = {});

/// NSE of the proposed scheme from already averaged region coverages.
[[nodiscard]] double nse_from_breakdown(const CoverageBreakdown& avg, double epsilon);

}  // namespace uavcoop
