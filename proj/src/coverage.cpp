#include "uavcoop/coverage.hpp"

#include <cmath>
#include <numbers>

#include "uavcoop/geometry.hpp"

namespace uavcoop {

namespace {

// d^alpha_s for the UAV link.
double uav_path_loss(const SystemParams& params, const LinkState& state, double r0)
{
    const double d2 = params.uav_height * params.uav_height + r0 * r0;
    return std::pow(d2, 0.5 * state.alpha);
}

// sum_{l<k} (-u)^l / l! * L^(l)(u) from a precomputed derivative series.
double gamma_sum(const std::vector<double>& series, double u, int k)
{
    double acc = 0.0;
    double coeff = 1.0;
    for (int l = 0; l < k; ++l) {
        acc += coeff * series[static_cast<std::size_t>(l)];
        coeff *= -u / (l + 1);
    }
    return acc;
}

// Below this relative pole gap the partial fractions lose too many digits and
// p2 switches to the integral remainder form.
double pole_gap_threshold(int m) { return std::pow(10.0, -6.0 / m); }

std::vector<double> sorted_breaks(double lo, double hi, std::initializer_list<double> inner)
{
    std::vector<double> b{lo};
    for (double x : inner)
        if (x > lo && x < hi) b.push_back(x);
    b.push_back(hi);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

double lower_r1(const SystemParams& params, double r0) { return std::max(params.radius_rc - r0, 0.0); }

double upper_or(const RegionThresholds& th, double fallback) { return th.b ? *th.b : fallback; }

// r0 values in (0, R_c) where a threshold curve crosses the hole edge R_c - r0.
std::vector<double> threshold_kinks(const SystemParams& params)
{
    std::vector<double> kinks;
    const double rc = params.radius_rc;
    for (auto tag : {LinkTag::LoS, LinkTag::NLoS}) {
        const auto state = make_link_state(params, tag);
        for (int which = 0; which < 2; ++which) {
            auto f = [&](double r0) {
                const auto th = region_thresholds(params, state, r0);
                const double t = which == 0 ? th.a : upper_or(th, 2.0 * rc);
                return t - (rc - r0);
            };
            if ((f(0.0) < 0.0) != (f(rc) < 0.0)) kinks.push_back(find_root(f, 0.0, rc, 1e-10 * rc));
        }
    }
    return kinks;
}

std::vector<double> outer_breaks(const SystemParams& params)
{
    std::vector<double> b{0.0};
    for (double k : threshold_kinks(params))
        if (k > 0.0 && k < params.radius_rc) b.push_back(k);
    b.push_back(params.radius_rc);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

QuadOptions inner_options(const QuadOptions& outer)
{
    QuadOptions in = outer;
    in.abs_tol = outer.abs_tol * 0.1;
    return in;
}

}  // namespace

PartialFractionCoeffs make_partial_fractions(int m, double beta0, double beta1, double epsilon)
{
    if (m < 1 || m > kMaxNakagamiOrder) throw DomainError("make_partial_fractions: m must lie in [1, 20]");
    if (!(beta0 > 0.0 && beta1 > 0.0)) throw DomainError("make_partial_fractions: poles must be > 0");
    if (std::abs(beta0 - beta1) / std::max(beta0, beta1) < 1e-9)
        throw DomainError("make_partial_fractions: coincident poles");

    PartialFractionCoeffs pf;
    pf.alpha0 = m;
    pf.beta0 = beta0;
    pf.alpha1 = 1;
    pf.beta1 = beta1;
    pf.u0 = beta0 * epsilon;
    pf.u1 = beta1 * epsilon;
    const double num = std::pow(beta0, m) * beta1;
    pf.a0.resize(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) {
        const int n = m - k;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        pf.a0[static_cast<std::size_t>(k - 1)] = sign * num / std::pow(beta1 - beta0, n + 1);
    }
    pf.a1 = num / std::pow(beta0 - beta1, m);
    return pf;
}

double partial_fraction_value(const PartialFractionCoeffs& pf, double s)
{
    double v = pf.a1 / (s + pf.beta1);
    for (int k = 1; k <= pf.alpha0; ++k) v += pf.a0[static_cast<std::size_t>(k - 1)] / std::pow(s + pf.beta0, k);
    return v;
}

double p1(const SystemParams& params, const LinkState& state, const LaplaceContext& ctx)
{
    const double s = std::pow(ctx.r1, ctx.alpha) * params.sir_threshold;
    const double d_pl = uav_path_loss(params, state, ctx.r0);
    if (d_pl == 0.0) return 0.0;
    return laplace_i2(ctx, s) / std::pow(1.0 + s / (d_pl * state.m), state.m);
}

double p2(const SystemParams& params, const LinkState& state, const LaplaceContext& ctx)
{
    const double d_pl = uav_path_loss(params, state, ctx.r0);
    if (d_pl == 0.0) return 1.0;
    const int m = state.m;
    const double eps = params.sir_threshold;
    const double beta0 = m * d_pl;
    const double beta1 = std::pow(ctx.r1, ctx.alpha);
    const double u0 = beta0 * eps;
    const double u1 = beta1 * eps;

    const double gap = std::abs(beta0 - beta1) / std::max(beta0, beta1);
    if (gap >= pole_gap_threshold(m)) {
        // A_{0k} / beta0^k = (1 - rho) rho^(m-k) and A_{11} / beta1 = rho^m.
        const double rho = beta0 / (beta0 - beta1);
        const auto s0 = laplace_i2_series(ctx, u0, m - 1);
        double acc = 0.0;
        double rp = 1.0;  // rho^(m-k), k running down from m
        for (int k = m; k >= 1; --k) {
            acc += (1.0 - rho) * rp * gamma_sum(s0, u0, k);
            rp *= rho;
        }
        return acc + rp * laplace_i2(ctx, u1);
    }

    // Taylor form with integral remainder; exact for any pole pair.
    const auto s0 = laplace_i2_series(ctx, u0, m - 1);
    double acc = gamma_sum(s0, u0, m);
    const auto& gl = gauss_legendre_16();
    double rem = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
        const double tau = gl.x[i];
        const double w = u0 + tau * (u1 - u0);
        rem += gl.w[i] * std::pow(1.0 - tau, m - 1) * laplace_i2_deriv(ctx, m, w);
    }
    acc += std::pow(-u0, m) / factorial_d(m - 1) * rem;
    return acc;
}

double p3(const SystemParams& params, const LinkState& state, const LaplaceContext& ctx)
{
    const double d_pl = uav_path_loss(params, state, ctx.r0);
    if (d_pl == 0.0) return 1.0;
    const double u = state.m * d_pl * params.sir_threshold;
    const auto series = laplace_h1_plus_i2_series(ctx, u, state.m - 1);
    return gamma_sum(series, u, state.m);
}

double p1_no_uav(const SystemParams& params, double r0, double r1)
{
    const auto ctx = make_context(params, r0, r1);
    return laplace_i2(ctx, std::pow(r1, ctx.alpha) * params.sir_threshold);
}

double p1(const SystemParams& params, const LinkState& state, double r0, double r1)
{
    return p1(params, state, make_context(params, r0, r1));
}

double p2(const SystemParams& params, const LinkState& state, double r0, double r1)
{
    return p2(params, state, make_context(params, r0, r1));
}

double p3(const SystemParams& params, const LinkState& state, double r0, double r1)
{
    return p3(params, state, make_context(params, r0, r1));
}

std::array<double, 3> region_probabilities(const SystemParams& params, double r0)
{
    const auto g = make_hole_geometry(params, r0);
    const double w_los = los_probability(params, r0);
    std::array<double, 3> out{};
    for (auto tag : {LinkTag::LoS, LinkTag::NLoS}) {
        const auto state = make_link_state(params, tag);
        const double w = tag == LinkTag::LoS ? w_los : 1.0 - w_los;
        const auto th = region_thresholds(params, state, r0);
        const double fa = nearest_bs_cdf(g, th.a);
        const double fb = th.b ? nearest_bs_cdf(g, *th.b) : 1.0;
        out[0] += w * fa;
        out[1] += w * (fb - fa);
        out[2] += w * (1.0 - fb);
    }
    return out;
}

CoverageBreakdown conditional_coverage(const SystemParams& params, double r0, const QuadOptions& opts)
{
    const auto g = make_hole_geometry(params, r0);
    const auto los = make_link_state(params, LinkTag::LoS);
    const auto nlos = make_link_state(params, LinkTag::NLoS);
    const auto th_l = region_thresholds(params, los, r0);
    const auto th_n = region_thresholds(params, nlos, r0);
    const double lo = lower_r1(params, r0);
    const double hi = truncation_radius(g);

    auto integrand = [&](double r1) {
        std::array<double, 6> v{};
        const double pdf = nearest_bs_pdf(g, r1);
        if (pdf == 0.0) return v;
        const auto ctx = make_context(params, r0, r1);
        const LinkState* states[2] = {&los, &nlos};
        const RegionThresholds* ths[2] = {&th_l, &th_n};
        for (std::size_t i = 0; i < 2; ++i) {
            const auto& st = *states[i];
            switch (assign_region(*ths[i], r1)) {
            case RegionLabel::A1: v[3 * i] = p1(params, st, ctx) * pdf; break;
            case RegionLabel::A2: v[3 * i + 1] = p2(params, st, ctx) * pdf; break;
            case RegionLabel::A3: v[3 * i + 2] = p3(params, st, ctx) * pdf; break;
            }
        }
        return v;
    };

    const auto breaks = sorted_breaks(lo, hi, {th_l.a, upper_or(th_l, hi), th_n.a, upper_or(th_n, hi),
                                               params.radius_rc + r0});
    const auto r = integrate_adaptive<6>(integrand, breaks, opts);
    const double w = los_probability(params, r0);
    CoverageBreakdown out;
    out.pc1 = w * r[0] + (1.0 - w) * r[3];
    out.pc2 = w * r[1] + (1.0 - w) * r[4];
    out.pc3 = w * r[2] + (1.0 - w) * r[5];
    out.total = out.pc1 + out.pc2 + out.pc3;
    return out;
}

double benchmark_uav_only_coverage(const SystemParams& params, double r0, const QuadOptions& opts)
{
    const auto g = make_hole_geometry(params, r0);
    const auto los = make_link_state(params, LinkTag::LoS);
    const auto nlos = make_link_state(params, LinkTag::NLoS);
    const double lo = lower_r1(params, r0);
    const double hi = truncation_radius(g);
    auto integrand = [&](double r1) {
        std::array<double, 2> v{};
        const double pdf = nearest_bs_pdf(g, r1);
        if (pdf == 0.0) return v;
        const auto ctx = make_context(params, r0, r1);
        v[0] = p3(params, los, ctx) * pdf;
        v[1] = p3(params, nlos, ctx) * pdf;
        return v;
    };
    const auto breaks = sorted_breaks(lo, hi, {params.radius_rc + r0});
    const auto r = integrate_adaptive<2>(integrand, breaks, opts);
    const double w = los_probability(params, r0);
    return w * r[0] + (1.0 - w) * r[1];
}

double benchmark_ground_only_coverage(const SystemParams& params, double r0, const QuadOptions& opts)
{
    const auto g = make_hole_geometry(params, r0);
    const double lo = lower_r1(params, r0);
    const double hi = truncation_radius(g);
    auto integrand = [&](double r1) {
        const double pdf = nearest_bs_pdf(g, r1);
        if (pdf == 0.0) return 0.0;
        return p1_no_uav(params, r0, r1) * pdf;
    };
    const auto breaks = sorted_breaks(lo, hi, {params.radius_rc + r0});
    return integrate(integrand, breaks, opts);
}

std::string_view to_string(Scheme s)
{
    switch (s) {
    case Scheme::Proposed: return "proposed";
    case Scheme::UavOnly: return "uav-only";
    case Scheme::GroundOnly: return "ground-only";
    }
    return "?";
}

Scheme parse_scheme(std::string_view text)
{
    if (text == "proposed") return Scheme::Proposed;
    if (text == "uav-only") return Scheme::UavOnly;
    if (text == "ground-only") return Scheme::GroundOnly;
    throw ConfigError("unknown scheme '" + std::string(text) + "'");
}

double scheme_coverage(const SystemParams& params, Scheme scheme, double r0, const QuadOptions& opts)
{
    switch (scheme) {
    case Scheme::Proposed: return conditional_coverage(params, r0, opts).total;
    case Scheme::UavOnly: return benchmark_uav_only_coverage(params, r0, opts);
    case Scheme::GroundOnly: return benchmark_ground_only_coverage(params, r0, opts);
    }
    throw DomainError("scheme_coverage: unknown scheme");
}

CoverageBreakdown average_coverage(const SystemParams& params, const QuadOptions& opts)
{
    const double rc2 = params.radius_rc * params.radius_rc;
    const auto inner = inner_options(opts);
    auto integrand = [&](double r0) {
        const auto b = conditional_coverage(params, r0, inner);
        const double w = 2.0 * r0 / rc2;
        return std::array<double, 3>{w * b.pc1, w * b.pc2, w * b.pc3};
    };
    const auto breaks = outer_breaks(params);
    const auto r = integrate_adaptive<3>(integrand, breaks, opts);
    return {r[0], r[1], r[2], r[0] + r[1] + r[2]};
}

AreaFractions area_fractions(const SystemParams& params, const QuadOptions& opts)
{
    const double rc2 = params.radius_rc * params.radius_rc;
    auto integrand = [&](double r0) {
        const auto p = region_probabilities(params, r0);
        const double w = 2.0 * r0 / rc2;
        return std::array<double, 3>{w * p[0], w * p[1], w * p[2]};
    };
    const auto breaks = outer_breaks(params);
    const auto r = integrate_adaptive<3>(integrand, breaks, opts);
    const double area = std::numbers::pi * rc2;
    return {r[0] * area, r[1] * area, r[2] * area, r[0], r[1], r[2]};
}

double nse_from_breakdown(const CoverageBreakdown& avg, double epsilon)
{
    const double rate = std::log1p(epsilon);
    return rate * (avg.pc1 / kRegionBsCount[0] + avg.pc2 / kRegionBsCount[1] + avg.pc3 / kRegionBsCount[2]);
}

double nse(const SystemParams& params, Scheme scheme, const QuadOptions& opts)
{
    if (scheme == Scheme::Proposed) return nse_from_breakdown(average_coverage(params, opts), params.sir_threshold);
    const double rc2 = params.radius_rc * params.radius_rc;
    const auto inner = inner_options(opts);
    auto integrand = [&](double r0) { return scheme_coverage(params, scheme, r0, inner) * 2.0 * r0 / rc2; };
    const std::vector<double> breaks{0.0, params.radius_rc};
    return std::log1p(params.sir_threshold) * integrate(integrand, std::span<const double>(breaks), opts);
}

}  // namespace uavcoop
