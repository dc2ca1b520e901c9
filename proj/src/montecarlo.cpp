#include "uavcoop/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "uavcoop/parallel.hpp"

namespace uavcoop {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Substream layout inside one drop.
constexpr std::uint64_t kSubPpp = 0;
constexpr std::uint64_t kSubUav = 1;
constexpr std::uint64_t kSubPosition = 2;
constexpr std::uint64_t kSubPppRetry = 16;
constexpr int kMaxEmptyResamples = 1000;

std::uint64_t ppp_substream(int attempt)
{
    return attempt == 0 ? kSubPpp : kSubPppRetry + static_cast<std::uint64_t>(attempt);
}

// Ground path-loss gain from the squared distance.
struct GroundGain {
    double alpha;
    double operator()(double d2) const
    {
        if (alpha == 3.0) return 1.0 / (d2 * std::sqrt(d2));
        return std::pow(d2, -0.5 * alpha);
    }
};

double annulus_mean_count(const SystemParams& p)
{
    return p.bs_density * std::numbers::pi * (p.sim_radius * p.sim_radius - p.radius_rc * p.radius_rc);
}

// Draws the Poisson count, then (radius, angle, fading) per point, in that order.
template <class F>
std::int64_t for_each_bs(const SystemParams& p, Xoshiro256pp& rng, F&& fn)
{
    std::poisson_distribution<std::int64_t> count_law(annulus_mean_count(p));
    const std::int64_t count = count_law(rng);
    const double rc2 = p.radius_rc * p.radius_rc;
    const double span = p.sim_radius * p.sim_radius - rc2;
    for (std::int64_t i = 0; i < count; ++i) {
        const double radius = std::sqrt(rc2 + rng.uniform() * span);
        const double angle = two_pi * rng.uniform();
        const double fading = rng.exponential();
        fn(radius, angle, fading);
    }
    return count;
}

// Squared distance from (radius, angle) to the UE at (r0, 0).
double squared_distance(double radius, double angle, double r0)
{
    return std::max(radius * radius + r0 * r0 - 2.0 * radius * r0 * std::cos(angle), 0.0);
}

struct GroundDraw {
    double r1_sq = std::numeric_limits<double>::infinity();
    double h1 = 0.0;
    double i2 = 0.0;
    int empty_resamples = 0;
};

GroundDraw draw_ground(const SystemParams& p, double r0, std::uint64_t seed, std::int64_t drop)
{
    const GroundGain gain{p.alpha_nlos};
    for (int attempt = 0; attempt <= kMaxEmptyResamples; ++attempt) {
        Xoshiro256pp rng(stream_key(seed, static_cast<std::uint64_t>(drop), ppp_substream(attempt)));
        GroundDraw g;
        g.empty_resamples = attempt;
        const auto n = for_each_bs(p, rng, [&](double radius, double angle, double fading) {
            const double d2 = squared_distance(radius, angle, r0);
            const double h = fading * gain(d2);
            if (d2 < g.r1_sq) {
                g.i2 += g.h1;
                g.h1 = h;
                g.r1_sq = d2;
            } else {
                g.i2 += h;
            }
        });
        if (n > 0) return g;
    }
    throw DomainError("simulation window holds no ground BS after repeated draws; raise bs_density or sim_radius");
}

double uav_gain_distance_term(const SystemParams& p, const LinkState& st, double r0)
{
    const double d2 = p.uav_height * p.uav_height + r0 * r0;
    if (d2 == 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(d2, -0.5 * st.alpha);
}

LinkState draw_link_state(const SystemParams& p, double r0, Xoshiro256pp& rng)
{
    const bool los = rng.uniform() < los_probability(p, r0);
    return make_link_state(p, los ? LinkTag::LoS : LinkTag::NLoS);
}

double proposed_sir(RegionLabel region, double h0, double h1, double i2)
{
    switch (region) {
    case RegionLabel::A1: return h1 / (h0 + i2);
    case RegionLabel::A2: return (h0 + h1) / i2;
    case RegionLabel::A3: return h0 / (h1 + i2);
    }
    return 0.0;
}

double half_width_95(double p, std::int64_t n)
{
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

std::size_t region_index(RegionLabel r) { return static_cast<std::size_t>(r); }

}  // namespace

PppRealization sample_ppp(const SystemParams& params, std::uint64_t seed)
{
    require_valid(params);
    Xoshiro256pp rng(seed);
    PppRealization out;
    out.seed = seed;
    out.count = for_each_bs(params, rng, [&](double radius, double angle, double) {
        out.points.push_back({radius, angle});
    });
    return out;
}

double sample_fading_power(int m, Xoshiro256pp& rng)
{
    if (m < 1) throw DomainError("sample_fading_power: m must be >= 1");
    double sum = 0.0;
    for (int i = 0; i < m; ++i) sum += rng.exponential();
    return sum / m;
}

DropOutcome simulate_drop(const SystemParams& params, double r0, std::uint64_t seed, std::int64_t drop_index)
{
    if (!(r0 >= 0.0 && r0 <= params.radius_rc)) throw DomainError("simulate_drop: r0 must lie in [0, R_c]");
    Xoshiro256pp uav(stream_key(seed, static_cast<std::uint64_t>(drop_index), kSubUav));
    DropOutcome d;
    d.link_state = draw_link_state(params, r0, uav);
    d.h0 = sample_fading_power(d.link_state.m, uav) * uav_gain_distance_term(params, d.link_state, r0);

    const auto g = draw_ground(params, r0, seed, drop_index);
    d.r1 = std::sqrt(g.r1_sq);
    d.h1 = g.h1;
    d.i2 = g.i2;
    d.empty_resamples = g.empty_resamples;
    d.region = assign_region(params, d.link_state, r0, d.r1);
    d.sir = proposed_sir(d.region, d.h0, d.h1, d.i2);
    d.covered = d.sir > params.sir_threshold;
    return d;
}

double scheme_sir(Scheme scheme, const DropOutcome& d)
{
    switch (scheme) {
    case Scheme::Proposed: return proposed_sir(d.region, d.h0, d.h1, d.i2);
    case Scheme::UavOnly: return d.h0 / (d.h1 + d.i2);
    case Scheme::GroundOnly: return d.h1 / d.i2;
    }
    return 0.0;
}

std::vector<CoverageEstimate> estimate_coverage_curve(const SystemParams& params, double r0,
                                                      const std::vector<double>& epsilons,
                                                      std::int64_t drops, std::uint64_t base_seed,
                                                      Scheme scheme)
{
    require_valid(params);
    if (drops < 1) throw DomainError("estimate_coverage: drops must be >= 1");
    std::vector<DropOutcome> outcomes(static_cast<std::size_t>(drops));
    parallel_for(drops, [&](std::int64_t i) {
        outcomes[static_cast<std::size_t>(i)] = simulate_drop(params, r0, base_seed, i);
    });

    std::int64_t empties = 0;
    for (const auto& d : outcomes) empties += d.empty_resamples;

    std::vector<CoverageEstimate> out;
    out.reserve(epsilons.size());
    for (double eps : epsilons) {
        std::int64_t covered = 0;
        std::array<std::int64_t, 3> by_region{};
        for (const auto& d : outcomes) {
            if (scheme_sir(scheme, d) > eps) {
                ++covered;
                ++by_region[region_index(d.region)];
            }
        }
        CoverageEstimate e;
        const double n = static_cast<double>(drops);
        e.estimate = static_cast<double>(covered) / n;
        e.half_width = half_width_95(e.estimate, drops);
        if (scheme == Scheme::Proposed) {
            e.pc1 = static_cast<double>(by_region[0]) / n;
            e.pc2 = static_cast<double>(by_region[1]) / n;
            e.pc3 = static_cast<double>(by_region[2]) / n;
        }
        e.drops = drops;
        e.empty_resamples = empties;
        out.push_back(e);
    }
    return out;
}

CoverageEstimate estimate_coverage(const SystemParams& params, double r0, std::int64_t drops,
                                   std::uint64_t base_seed, Scheme scheme)
{
    return estimate_coverage_curve(params, r0, {params.sir_threshold}, drops, base_seed, scheme).front();
}

double sample_nearest_distance(const SystemParams& params, double r0, Xoshiro256pp& rng)
{
    // BSs in order of distance from the disc centre: lambda * pi * (rho^2 - R_c^2)
    // is a unit-rate Poisson process.
    const double rc2 = params.radius_rc * params.radius_rc;
    const double area_per_unit = 1.0 / (params.bs_density * std::numbers::pi);
    double gamma = 0.0;
    double best2 = std::numeric_limits<double>::infinity();
    for (;;) {
        gamma += rng.exponential();
        const double rho = std::sqrt(rc2 + gamma * area_per_unit);
        const double reach = rho - r0;
        if (reach > 0.0 && reach * reach >= best2) break;
        const double angle = two_pi * rng.uniform();
        const double x = rho * std::cos(angle) - r0;
        const double y = rho * std::sin(angle);
        best2 = std::min(best2, x * x + y * y);
    }
    return std::sqrt(best2);
}

std::vector<double> sample_nearest_distances(const SystemParams& params, double r0, std::int64_t n,
                                             std::uint64_t base_seed)
{
    if (!(r0 >= 0.0 && r0 <= params.radius_rc)) throw DomainError("sample_nearest_distances: r0 must lie in [0, R_c]");
    std::vector<double> out(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
    parallel_for(n, [&](std::int64_t i) {
        Xoshiro256pp rng(stream_key(base_seed, static_cast<std::uint64_t>(i), kSubPpp));
        out[static_cast<std::size_t>(i)] = sample_nearest_distance(params, r0, rng);
    });
    return out;
}

AreaFractions estimate_area_fractions(const SystemParams& params, std::int64_t drops, std::uint64_t base_seed)
{
    require_valid(params);
    if (drops < 1) throw DomainError("estimate_area_fractions: drops must be >= 1");
    std::vector<unsigned char> label(static_cast<std::size_t>(drops));
    parallel_for(drops, [&](std::int64_t i) {
        Xoshiro256pp pos(stream_key(base_seed, static_cast<std::uint64_t>(i), kSubPosition));
        const double r0 = params.radius_rc * std::sqrt(pos.uniform());
        Xoshiro256pp uav(stream_key(base_seed, static_cast<std::uint64_t>(i), kSubUav));
        const auto state = draw_link_state(params, r0, uav);
        Xoshiro256pp ground(stream_key(base_seed, static_cast<std::uint64_t>(i), kSubPpp));
        const double r1 = sample_nearest_distance(params, r0, ground);
        label[static_cast<std::size_t>(i)] =
            static_cast<unsigned char>(region_index(assign_region(params, state, r0, r1)));
    });
    std::array<std::int64_t, 3> counts{};
    for (auto l : label) ++counts[l];
    AreaFractions f;
    const double n = static_cast<double>(drops);
    const double area = std::numbers::pi * params.radius_rc * params.radius_rc;
    f.f1 = static_cast<double>(counts[0]) / n;
    f.f2 = static_cast<double>(counts[1]) / n;
    f.f3 = static_cast<double>(counts[2]) / n;
    f.c1 = f.f1 * area;
    f.c2 = f.f2 * area;
    f.c3 = f.f3 * area;
    return f;
}

double estimate_nse(const SystemParams& params, std::int64_t drops, std::uint64_t base_seed, Scheme scheme)
{
    require_valid(params);
    if (drops < 1) throw DomainError("estimate_nse: drops must be >= 1");
    std::vector<double> share(static_cast<std::size_t>(drops), 0.0);
    parallel_for(drops, [&](std::int64_t i) {
        Xoshiro256pp pos(stream_key(base_seed, static_cast<std::uint64_t>(i), kSubPosition));
        const double r0 = params.radius_rc * std::sqrt(pos.uniform());
        const auto d = simulate_drop(params, r0, base_seed, i);
        if (scheme_sir(scheme, d) <= params.sir_threshold) return;
        const double bs = scheme == Scheme::Proposed ? kRegionBsCount[region_index(d.region)] : 1.0;
        share[static_cast<std::size_t>(i)] = 1.0 / bs;
    });
    double sum = 0.0;
    for (double s : share) sum += s;
    return std::log1p(params.sir_threshold) * sum / static_cast<double>(drops);
}

MeanEstimate estimate_conditional_laplace(const SystemParams& params, double r0, double r1, double s,
                                          std::int64_t trials, std::uint64_t base_seed)
{
    require_valid(params);
    if (trials < 2) throw DomainError("estimate_conditional_laplace: need at least two trials");
    const GroundGain gain{params.alpha_nlos};
    const double r1_sq = r1 * r1;
    std::vector<double> value(static_cast<std::size_t>(trials));
    parallel_for(trials, [&](std::int64_t i) {
        Xoshiro256pp rng(stream_key(base_seed, static_cast<std::uint64_t>(i), kSubPpp));
        double i2 = 0.0;
        for_each_bs(params, rng, [&](double radius, double angle, double fading) {
            const double d2 = squared_distance(radius, angle, r0);
            if (d2 > r1_sq) i2 += fading * gain(d2);
        });
        value[static_cast<std::size_t>(i)] = std::exp(-s * i2);
    });
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double v : value) {
        sum += v;
        sum_sq += v * v;
    }
    const double n = static_cast<double>(trials);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return {mean, 1.96 * std::sqrt(var / n)};
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf)
{
    if (sample.empty()) throw DomainError("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_99(std::int64_t n) { return 1.62762 / std::sqrt(static_cast<double>(n)); }

}  // namespace uavcoop
