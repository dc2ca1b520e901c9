#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "uavcoop/channel.hpp"
#include "uavcoop/coverage.hpp"
#include "uavcoop/params.hpp"
#include "uavcoop/rng.hpp"

namespace uavcoop {

/// Ground BS in polar coordinates about the disc centre.
struct BsPoint {
    double radius;
    double angle;
};

/// One drop of ground BSs in the annulus R_c <= |y| < sim_radius.
struct PppRealization {
    std::vector<BsPoint> points;
    std::uint64_t seed = 0;
    std::int64_t count = 0;
};

[[nodiscard]] PppRealization sample_ppp(const SystemParams& params, std::uint64_t seed);

/// Unit-mean Gamma power with integer shape m (m = 1 is exponential).
[[nodiscard]] double sample_fading_power(int m, Xoshiro256pp& rng);

/// Result of one end-to-end drop for a UE at fixed r0.
struct DropOutcome {
    RegionLabel region = RegionLabel::A2;
    LinkState link_state{LinkTag::LoS, 0.0, 1};
    double sir = 0.0;        ///< SIR of the proposed scheme in the assigned region
    bool covered = false;    ///< sir > sir_threshold
    double r1 = 0.0;         ///< nearest-BS distance
    double h0 = 0.0;         ///< UAV received power
    double h1 = 0.0;         ///< nearest-BS received power
    double i2 = 0.0;         ///< interference from all other ground BSs
    int empty_resamples = 0;
};

/// Draws link state, PPP and fading for drop `drop_index` of stream `seed`.
[[nodiscard]] DropOutcome simulate_drop(const SystemParams& params, double r0, std::uint64_t seed,
                                        std::int64_t drop_index = 0);

/// SIR of a scheme for the powers in a drop outcome.
[[nodiscard]] double scheme_sir(Scheme scheme, const DropOutcome& d);

struct CoverageEstimate {
    double estimate = 0.0;
    double half_width = 0.0;  ///< 95% normal-approximation half-width
    double pc1 = 0.0;         ///< joint region/coverage fractions (proposed scheme)
    double pc2 = 0.0;
    double pc3 = 0.0;
    std::int64_t drops = 0;
    std::int64_t empty_resamples = 0;
};

[[nodiscard]] CoverageEstimate estimate_coverage(const SystemParams& params, double r0,
                                                 std::int64_t drops, std::uint64_t base_seed,
                                                 Scheme scheme = Scheme::Proposed);

/// Coverage at several thresholds from one shared set of drops. The threshold
/// in params only matters through `epsilons`.
[[nodiscard]] std::vector<CoverageEstimate> estimate_coverage_curve(
    const SystemParams& params, double r0, const std::vector<double>& epsilons, std::int64_t drops,
    std::uint64_t base_seed, Scheme scheme = Scheme::Proposed);

/// Nearest ground-BS distance for a UE at r0, drawn without a simulation window.
[[nodiscard]] double sample_nearest_distance(const SystemParams& params, double r0, Xoshiro256pp& rng);

[[nodiscard]] std::vector<double> sample_nearest_distances(const SystemParams& params, double r0,
                                                           std::int64_t n, std::uint64_t base_seed);

/// r0 drawn with density 2 r0 / R_c^2, link state and nearest BS drawn, region classified.
[[nodiscard]] AreaFractions estimate_area_fractions(const SystemParams& params, std::int64_t drops,
                                                    std::uint64_t base_seed);

/// Mean over drops of covered * log(1 + eps) / N_region, r0 uniform over the disc.
[[nodiscard]] double estimate_nse(const SystemParams& params, std::int64_t drops,
                                  std::uint64_t base_seed, Scheme scheme = Scheme::Proposed);

struct MeanEstimate {
    double mean = 0.0;
    double half_width = 0.0;
};

/// Empirical E[exp(-s I2)] given the nearest BS at distance r1 from a UE at r0,
/// with the other BSs drawn in the annulus R_c <= |y| < sim_radius.
[[nodiscard]] MeanEstimate estimate_conditional_laplace(const SystemParams& params, double r0,
                                                        double r1, double s, std::int64_t trials,
                                                        std::uint64_t base_seed);

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
[[nodiscard]] double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Asymptotic 99% critical value of the one-sample KS statistic.
[[nodiscard]] double ks_critical_99(std::int64_t n);

}  // namespace uavcoop
