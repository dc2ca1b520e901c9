#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "uavcoop/coverage.hpp"
#include "uavcoop/geometry.hpp"

using namespace uavcoop;

namespace {

constexpr double pi = std::numbers::pi;

// Edge UEs approach the limit like eps^(2/3), so the threshold must be small.
constexpr double kTinyThreshold = 1e-10;

// Area of the disc of radius r about a point at distance d from the origin,
// minus its intersection with the disc of radius rc about the origin.
double lens_oracle(double rc, double d, double r)
{
    double inter = 0.0;
    if (d + r <= rc) {
        inter = pi * r * r;
    } else if (d + rc <= r) {
        inter = pi * rc * rc;
    } else if (d < r + rc) {
        const double a = r * r * std::acos((d * d + r * r - rc * rc) / (2 * d * r));
        const double b = rc * rc * std::acos((d * d + rc * rc - r * r) / (2 * d * rc));
        const double c = 0.5 * std::sqrt((-d + r + rc) * (d + r - rc) * (d - r + rc) * (d + r + rc));
        inter = a + b - c;
    }
    return pi * r * r - inter;
}

double cdf_oracle(const SystemParams& p, double r0, double r)
{
    if (r <= 0.0) return 0.0;
    return 1.0 - std::exp(-p.bs_density * lens_oracle(p.radius_rc, r0, r));
}

double path_loss(const SystemParams& p, const LinkState& st, double r0)
{
    return std::pow(p.uav_height * p.uav_height + r0 * r0, 0.5 * st.alpha);
}

struct SimPoint {
    double r0;
    double r1;
};

}  // namespace

TEST(PartialFractions, ReconstructsRationalFunction)
{
    // Grid limited to s <= beta0: far beyond the poles the terms cancel to
    // below double precision relative to the value.
    for (int m : {1, 2, 4}) {
        for (auto [b0, b1] : {std::pair{2.0e6, 5.0e6}, std::pair{9.0e7, 1.0e6}, std::pair{1.0, 1.5}}) {
            const auto pf = make_partial_fractions(m, b0, b1, 0.5);
            ASSERT_EQ(pf.a0.size(), static_cast<std::size_t>(m));
            EXPECT_DOUBLE_EQ(pf.u0, 0.5 * b0);
            EXPECT_DOUBLE_EQ(pf.u1, 0.5 * b1);
            for (double f : {0.0, 0.01, 0.3, 1.0}) {
                const double s = f * b0;
                const double exact = std::pow(b0 / (s + b0), m) * b1 / (s + b1);
                EXPECT_NEAR(partial_fraction_value(pf, s), exact, 1e-10 * exact) << m << " " << s;
            }
        }
    }
}

TEST(PartialFractions, RejectsCoincidentPoles)
{
    EXPECT_THROW((void)make_partial_fractions(4, 1e6, 1e6 * (1 + 1e-12), 0.5), DomainError);
    EXPECT_THROW((void)make_partial_fractions(0, 1.0, 2.0, 0.5), DomainError);
    EXPECT_NO_THROW((void)make_partial_fractions(4, 1e6, 1e6 * (1 + 1e-8), 0.5));
}

TEST(P1, NeverExceedsGroundOnlyAndApproachesItAtLargeHeight)
{
    SystemParams p;
    for (auto tag : {LinkTag::LoS, LinkTag::NLoS}) {
        const auto st = make_link_state(p, tag);
        for (auto [r0, r1] : {SimPoint{450, 80}, SimPoint{300, 400}, SimPoint{0, 700}})
            EXPECT_LE(p1(p, st, r0, r1), p1_no_uav(p, r0, r1));
    }
    p.uav_height = 1e6;
    const auto st = make_link_state(p, LinkTag::LoS);
    EXPECT_NEAR(p1(p, st, 450.0, 80.0), p1_no_uav(p, 450.0, 80.0), 1e-6);
}

TEST(P1NoUav, IsTheLaplaceTransformAtTheThreshold)
{
    const SystemParams p;
    const auto ctx = make_context(p, 500.0, 100.0);
    EXPECT_EQ(p1_no_uav(p, 500.0, 100.0), laplace_i2(ctx, std::pow(100.0, 3.0) * 0.5));
}

TEST(ConditionalProbabilities, SmallThresholdLimit)
{
    SystemParams p;
    p.sir_threshold = kTinyThreshold;
    const auto los = make_link_state(p, LinkTag::LoS);
    for (auto [r0, r1] : {SimPoint{450, 80}, SimPoint{250, 300}, SimPoint{100, 600}}) {
        EXPECT_NEAR(p1(p, los, r0, r1), 1.0, 1e-4);
        EXPECT_NEAR(p1_no_uav(p, r0, r1), 1.0, 1e-4);
        EXPECT_NEAR(p2(p, los, r0, r1), 1.0, 1e-4);
        EXPECT_NEAR(p3(p, los, r0, r1), 1.0, 1e-4);
    }
}

TEST(ConditionalProbabilities, NonIncreasingInThreshold)
{
    SystemParams p;
    for (auto tag : {LinkTag::LoS, LinkTag::NLoS}) {
        const auto st = make_link_state(p, tag);
        for (auto [r0, r1] : {SimPoint{450, 80}, SimPoint{250, 300}, SimPoint{100, 600}}) {
            double prev[3] = {1.0, 1.0, 1.0};
            for (double eps : {0.01, 0.1, 0.5, 1.0, 3.0, 10.0}) {
                p.sir_threshold = eps;
                const double v[3] = {p1(p, st, r0, r1), p2(p, st, r0, r1), p3(p, st, r0, r1)};
                for (int i = 0; i < 3; ++i) {
                    EXPECT_LE(v[i], prev[i] + 1e-12) << "p" << i + 1 << " eps=" << eps;
                    EXPECT_GE(v[i], 0.0);
                    prev[i] = v[i];
                }
            }
        }
    }
}

// With exponential UAV fading, h0 + h1 is hypoexponential and its tail is
// (b1 e^{-b0 x} - b0 e^{-b1 x}) / (b1 - b0); average over I2 by its transform.
TEST(P2, ExponentialFadingTwoPoleForm)
{
    SystemParams p;
    p.m_los = 1;
    const auto st = make_link_state(p, LinkTag::LoS);
    for (auto [r0, r1] : {SimPoint{250, 300}, SimPoint{450, 100}, SimPoint{100, 700}}) {
        const auto ctx = make_context(p, r0, r1);
        const double b0 = path_loss(p, st, r0);
        const double b1 = std::pow(r1, 3.0);
        const double e = p.sir_threshold;
        const double expect = (b1 * laplace_i2(ctx, b0 * e) - b0 * laplace_i2(ctx, b1 * e)) / (b1 - b0);
        EXPECT_NEAR(p2(p, st, r0, r1), expect, 1e-12) << r0 << " " << r1;
    }
}

TEST(P2, CoincidentPolesReduceToErlangTail)
{
    const SystemParams p;
    const auto st = make_link_state(p, LinkTag::LoS);
    const double r0 = 450.0;
    const double beta = st.m * path_loss(p, st, r0);
    const double r1 = std::cbrt(beta);
    const auto ctx = make_context(p, r0, r1);
    const double u = std::pow(r1, 3.0) * p.sir_threshold;
    const auto series = laplace_i2_series(ctx, u, st.m);
    double expect = 0.0;
    double c = 1.0;
    for (int k = 0; k <= st.m; ++k) {
        expect += c * series[static_cast<std::size_t>(k)];
        c *= -u / (k + 1);
    }
    EXPECT_NEAR(p2(p, st, r0, r1), expect, 1e-9);
}

TEST(P2, ContinuousAcrossEvaluationPaths)
{
    const SystemParams p;
    const auto st = make_link_state(p, LinkTag::LoS);
    const double r0 = 450.0;
    const double beta0 = st.m * path_loss(p, st, r0);
    for (double gap : {1e-2, std::pow(10.0, -1.5), 0.1}) {
        for (double side : {-1.0, 1.0}) {
            const double b1 = beta0 * (1.0 + side * gap);
            const double lo = p2(p, st, r0, std::cbrt(b1 * (1 - 1e-9)));
            const double hi = p2(p, st, r0, std::cbrt(b1 * (1 + 1e-9)));
            EXPECT_NEAR(lo, hi, 1e-8) << gap << " " << side;
        }
    }
    // Sweeping r1 through the pole coincidence gives a smooth, bounded curve.
    const double rc = std::cbrt(beta0);
    double prev = p2(p, st, r0, rc * 0.9);
    for (int i = 1; i <= 200; ++i) {
        const double v = p2(p, st, r0, rc * (0.9 + 0.2 * i / 200.0));
        EXPECT_LT(std::abs(v - prev), 5e-3);
        EXPECT_GT(v, 0.0);
        EXPECT_LT(v, 1.0);
        prev = v;
    }
}

TEST(P3, ExponentialFadingIsProductOfTransforms)
{
    SystemParams p;
    p.m_los = 1;
    const auto st = make_link_state(p, LinkTag::LoS);
    const double r0 = 100.0;
    const double r1 = 600.0;
    const auto ctx = make_context(p, r0, r1);
    const double u = path_loss(p, st, r0) * p.sir_threshold;
    const double expect = laplace_i2(ctx, u) / (1.0 + u / std::pow(r1, 3.0));
    EXPECT_NEAR(p3(p, st, r0, r1), expect, 1e-14);
}

// Fix the UE and nearest BS, redraw the rest of the network and all fading.
TEST(ConditionalProbabilities, MatchConditionalSimulation)
{
    const SystemParams p;
    const auto los = make_link_state(p, LinkTag::LoS);
    const auto nlos = make_link_state(p, LinkTag::NLoS);
    const oracle::ConditionalSim sim{p.radius_rc, p.bs_density, p.alpha_nlos, 3000.0};
    const double eps = p.sir_threshold;
    constexpr int trials = 100000;

    struct Case {
        double r0;
        double r1;
        const LinkState* st;
        int mode;  // 0: ground only, 1: ground with UAV interference, 2: both, 3: UAV
    };
    const std::vector<Case> cases = {
        {450, 80, &los, 1}, {450, 80, &nlos, 1}, {500, 100, &los, 0}, {250, 300, &los, 2}, {100, 600, &los, 3},
    };
    for (const auto& c : cases) {
        const double d_pl = path_loss(p, *c.st, c.r0);
        long hits = 0;
        sim.run(c.r0, c.r1, trials, 1000 + static_cast<std::uint64_t>(c.r0),
                [&](const oracle::ConditionalSim::Trial& t, std::mt19937_64& gen) {
                    const double h0 = oracle::gamma_power(c.st->m, gen) / d_pl;
                    bool ok = false;
                    switch (c.mode) {
                    case 0: ok = t.h1 > eps * t.i2; break;
                    case 1: ok = t.h1 > eps * (t.i2 + h0); break;
                    case 2: ok = h0 + t.h1 > eps * t.i2; break;
                    case 3: ok = h0 > eps * (t.h1 + t.i2); break;
                    }
                    hits += ok ? 1 : 0;
                });
        const double mc = static_cast<double>(hits) / trials;
        double analytic = 0.0;
        switch (c.mode) {
        case 0: analytic = p1_no_uav(p, c.r0, c.r1); break;
        case 1: analytic = p1(p, *c.st, c.r0, c.r1); break;
        case 2: analytic = p2(p, *c.st, c.r0, c.r1); break;
        case 3: analytic = p3(p, *c.st, c.r0, c.r1); break;
        }
        EXPECT_NEAR(analytic, mc, 0.01) << "mode " << c.mode << " r0=" << c.r0 << " r1=" << c.r1;
    }
}

TEST(RegionProbabilities, MatchIndependentLensArea)
{
    SystemParams p;
    for (double delta : {0.2, 0.7}) {
        p.delta = delta;
        for (double r0 : {0.0, 120.0, 300.0, 480.0}) {
            const double w = los_probability(p, r0);
            double expect[3] = {0, 0, 0};
            for (auto tag : {LinkTag::LoS, LinkTag::NLoS}) {
                const auto st = make_link_state(p, tag);
                const double ws = tag == LinkTag::LoS ? w : 1.0 - w;
                const double dpl = path_loss(p, st, r0);
                const double a = std::cbrt(delta * dpl);
                const double b = std::cbrt(dpl / delta);
                const double fa = cdf_oracle(p, r0, a);
                const double fb = cdf_oracle(p, r0, b);
                expect[0] += ws * fa;
                expect[1] += ws * (fb - fa);
                expect[2] += ws * (1.0 - fb);
            }
            const auto got = region_probabilities(p, r0);
            for (int i = 0; i < 3; ++i) EXPECT_NEAR(got[static_cast<std::size_t>(i)], expect[i], 1e-10) << r0;
        }
    }
}

TEST(ConditionalCoverage, SmallThresholdRecoversRegionProbabilities)
{
    SystemParams p;
    p.sir_threshold = kTinyThreshold;
    for (double r0 : {0.0, 200.0, 300.0, 500.0}) {
        const auto b = conditional_coverage(p, r0);
        const auto r = region_probabilities(p, r0);
        EXPECT_NEAR(b.total, 1.0, 1e-4);
        EXPECT_NEAR(b.pc1, r[0], 1e-4);
        EXPECT_NEAR(b.pc2, r[1], 1e-4);
        EXPECT_NEAR(b.pc3, r[2], 1e-4);
        EXPECT_EQ(b.total, b.pc1 + b.pc2 + b.pc3);
    }
}

TEST(ConditionalCoverage, DeltaZeroLeavesOnlyCooperation)
{
    SystemParams p;
    p.delta = 0.0;
    for (double r0 : {0.0, 250.0, 500.0}) {
        const auto b = conditional_coverage(p, r0);
        EXPECT_EQ(b.pc1, 0.0);
        EXPECT_EQ(b.pc3, 0.0);
        EXPECT_GT(b.pc2, 0.0);
        // All-cooperation serves with h0 + h1, which dominates either link alone.
        EXPECT_GE(b.total, benchmark_uav_only_coverage(p, r0) - 1e-5);
        EXPECT_GE(b.total, benchmark_ground_only_coverage(p, r0) - 1e-5);
    }
}

TEST(ConditionalCoverage, NonIncreasingInThreshold)
{
    SystemParams p;
    double prev = 1.0;
    for (double db : {-10.0, -5.0, 0.0, 5.0, 10.0}) {
        p.sir_threshold = db_to_linear(db);
        const auto b = conditional_coverage(p, 200.0);
        EXPECT_LE(b.total, prev + 1e-6);
        EXPECT_LE(b.total, 1.0 + 1e-6);
        prev = b.total;
    }
}

TEST(Benchmarks, SmallThresholdAndOrderings)
{
    SystemParams p;
    EXPECT_GT(conditional_coverage(p, 400.0).total, benchmark_uav_only_coverage(p, 400.0));
    EXPECT_GT(conditional_coverage(p, 100.0).total, benchmark_ground_only_coverage(p, 100.0) + 0.5);
    p.sir_threshold = kTinyThreshold;
    for (double r0 : {0.0, 250.0, 500.0}) {
        EXPECT_NEAR(benchmark_uav_only_coverage(p, r0), 1.0, 1e-4);
        EXPECT_NEAR(benchmark_ground_only_coverage(p, r0), 1.0, 1e-4);
    }
}

TEST(Schemes, ParseAndDispatch)
{
    for (auto s : {Scheme::Proposed, Scheme::UavOnly, Scheme::GroundOnly}) EXPECT_EQ(parse_scheme(to_string(s)), s);
    EXPECT_THROW((void)parse_scheme("both"), ConfigError);
    const SystemParams p;
    EXPECT_EQ(scheme_coverage(p, Scheme::GroundOnly, 300.0), benchmark_ground_only_coverage(p, 300.0));
}

TEST(AreaFractions, SumToOneAndScaleByDiscArea)
{
    SystemParams p;
    for (double delta : {0.1, 0.5, 1.0}) {
        p.delta = delta;
        const auto f = area_fractions(p);
        EXPECT_NEAR(f.f1 + f.f2 + f.f3, 1.0, 1e-6);
        const double area = pi * p.radius_rc * p.radius_rc;
        EXPECT_NEAR(f.c1, f.f1 * area, 1e-9 * area);
        EXPECT_NEAR(f.c3, f.f3 * area, 1e-9 * area);
        for (double v : {f.f1, f.f2, f.f3}) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(AreaFractions, DeltaZeroIsAllCooperative)
{
    SystemParams p;
    p.delta = 0.0;
    const auto f = area_fractions(p);
    EXPECT_EQ(f.f1, 0.0);
    EXPECT_EQ(f.f3, 0.0);
    EXPECT_NEAR(f.f2, 1.0, 1e-12);
}

TEST(AreaFractions, OrderingInDelta)
{
    SystemParams p;
    AreaFractions prev{};
    prev.f2 = 2.0;
    for (int i = 1; i <= 9; ++i) {
        p.delta = i / 10.0;
        const auto f = area_fractions(p);
        EXPECT_GE(f.f1, prev.f1);
        EXPECT_GE(f.f3, prev.f3);
        EXPECT_LE(f.f2, prev.f2);
        prev = f;
    }
}

TEST(AreaFractions, OrderingInDensity)
{
    SystemParams p;
    AreaFractions prev{};
    prev.f3 = 2.0;
    for (double lam : {5e-6, 1e-5, 2e-5, 3e-5, 5e-5}) {
        p.bs_density = lam;
        const auto f = area_fractions(p);
        EXPECT_GE(f.f1, prev.f1);
        EXPECT_LE(f.f3, prev.f3);
        prev = f;
    }
}

// Uniform UE in the disc: integrate the region probabilities by plain
// Gauss-Kronrod over r0 with the lens-area oracle.
TEST(AreaFractions, MatchIndependentRadialIntegral)
{
    const SystemParams p;
    auto comp = [&](int i) {
        auto f = [&](double r0) {
            const double w = los_probability(p, r0);
            double v = 0.0;
            for (auto tag : {LinkTag::LoS, LinkTag::NLoS}) {
                const auto st = make_link_state(p, tag);
                const double dpl = path_loss(p, st, r0);
                const double fa = cdf_oracle(p, r0, std::cbrt(p.delta * dpl));
                const double fb = cdf_oracle(p, r0, std::cbrt(dpl / p.delta));
                const double prob = i == 0 ? fa : (i == 1 ? fb - fa : 1.0 - fb);
                v += (tag == LinkTag::LoS ? w : 1.0 - w) * prob;
            }
            return v * 2.0 * r0 / (p.radius_rc * p.radius_rc);
        };
        using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
        return GK::integrate(f, 0.0, p.radius_rc, 30, 1e-12);
    };
    const auto f = area_fractions(p);
    EXPECT_NEAR(f.f1, comp(0), 1e-7);
    EXPECT_NEAR(f.f2, comp(1), 1e-7);
    EXPECT_NEAR(f.f3, comp(2), 1e-7);
}

TEST(Nse, Limits)
{
    SystemParams p;
    p.sir_threshold = 1e-9;
    EXPECT_LT(nse(p), 1e-8);
    p.sir_threshold = 0.5;
    p.delta = 0.0;
    const auto avg = average_coverage(p);
    EXPECT_EQ(avg.pc1, 0.0);
    EXPECT_EQ(avg.pc3, 0.0);
    EXPECT_NEAR(nse(p), avg.pc2 * std::log1p(0.5) / 2.0, 1e-15);
}

TEST(Nse, IntegrateThenSumEqualsSumThenIntegrate)
{
    const SystemParams p;
    const QuadOptions tight{1e-9, 0.0, 20000};
    const double a = nse(p, Scheme::Proposed, tight);
    const double rc2 = p.radius_rc * p.radius_rc;
    const QuadOptions inner{1e-10, 0.0, 20000};
    auto f = [&](double r0) {
        const auto b = conditional_coverage(p, r0, inner);
        return std::log1p(p.sir_threshold) * (b.pc1 + b.pc2 / 2.0 + b.pc3) * 2.0 * r0 / rc2;
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double b = GK::integrate(f, 0.0, p.radius_rc, 12, 1e-9);
    EXPECT_NEAR(a, b, 1e-8);
}

TEST(Nse, ProposedBeatsBenchmarks)
{
    SystemParams p;
    for (double rc : {200.0, 800.0}) {
        p.radius_rc = rc;
        const double prop = nse(p);
        EXPECT_GE(prop, nse(p, Scheme::UavOnly));
        EXPECT_GE(prop, nse(p, Scheme::GroundOnly));
    }
}
