#include "uavcoop/interference.hpp"

#include <cmath>
#include <numbers>

#include "uavcoop/numerics.hpp"

namespace uavcoop {

namespace {

constexpr double pi = std::numbers::pi;

// Terms of eta^(t) before the t! (-1)^t lambda prefactor, for t = 0..tmax.
// Entry 0 is the positive integral Q / lambda.
std::vector<double> eta_kernel(const LaplaceContext& ctx, double s, int tmax)
{
    const double a0 = 2.0 / ctx.alpha;
    std::vector<double> out(static_cast<std::size_t>(tmax + 1), 0.0);

    auto tail = [&](double r, int t) {
        const double q = s * std::pow(r, -ctx.alpha);
        const double y = q / (1.0 + q);
        if (t == 0) return upper_incomplete_beta_tail(y, a0, 1.0 - a0);
        return upper_incomplete_beta_tail(y, a0 + 1.0, t - a0);
    };

    for (int t = 0; t <= tmax; ++t) {
        const double scale = std::pow(s, a0 - t) / ctx.alpha;
        double total = 2.0 * (pi - ctx.big_theta) * tail(ctx.r1, t);
        if (ctx.case_tag == InterferenceCase::Overlap) {
            double sum = 0.0;
            for (std::size_t n = 0; n < ctx.node_radius.size(); ++n)
                sum += ctx.node_weight[n] * tail(ctx.node_radius[n], t);
            total += ctx.big_theta * pi / ctx.quad_n * sum;
        }
        out[static_cast<std::size_t>(t)] = scale * total;
    }
    return out;
}

// eta^(0..tmax)(s), s > 0.
std::vector<double> eta_series(const LaplaceContext& ctx, double s, int tmax)
{
    auto k = eta_kernel(ctx, s, tmax);
    k[0] = -ctx.bs_density * k[0];
    for (int t = 1; t <= tmax; ++t) {
        const double sign = (t % 2 == 0) ? 1.0 : -1.0;
        k[static_cast<std::size_t>(t)] *= sign * factorial_d(t) * ctx.bs_density;
    }
    return k;
}

}  // namespace

double hole_exit_radius(double radius_rc, double r0, double theta)
{
    const double sn = std::sin(theta);
    return std::sqrt(radius_rc * radius_rc - r0 * r0 * sn * sn) - r0 * std::cos(theta);
}

LaplaceContext make_context(const SystemParams& params, double r0, double r1, int quad_n)
{
    const double rc = params.radius_rc;
    if (!(r0 >= 0.0 && r0 <= rc)) throw DomainError("make_context: r0 must lie in [0, R_c]");
    if (!(r1 > rc - r0)) throw DomainError("make_context: r1 must exceed R_c - r0");

    LaplaceContext ctx;
    ctx.r0 = r0;
    ctx.r1 = r1;
    ctx.bs_density = params.bs_density;
    ctx.alpha = params.alpha_nlos;
    ctx.quad_n = quad_n > 0 ? quad_n : params.quad_n;

    if (r0 == 0.0 || r1 >= rc + r0) return ctx;

    ctx.case_tag = InterferenceCase::Overlap;
    const double c = (r0 * r0 + r1 * r1 - rc * rc) / (2.0 * r0 * r1);
    ctx.big_theta = std::acos(std::clamp(c, -1.0, 1.0));

    const auto cheb = cheb_nodes(ctx.quad_n);
    const std::size_t n = cheb.nodes.size();
    ctx.node_angle.resize(n);
    ctx.node_radius.resize(n);
    ctx.node_weight.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = cheb.nodes[i];
        const double angle = 0.5 * ctx.big_theta * (x - 1.0) + pi;
        ctx.node_angle[i] = angle;
        ctx.node_radius[i] = hole_exit_radius(rc, r0, angle);
        ctx.node_weight[i] = std::sqrt(1.0 - x * x);
    }
    return ctx;
}

double eta(const LaplaceContext& ctx, double s)
{
    if (!(s >= 0.0)) throw DomainError("eta: s must be >= 0");
    if (s == 0.0) return 0.0;
    return eta_series(ctx, s, 0)[0];
}

double eta_deriv(const LaplaceContext& ctx, int t, double s)
{
    if (t < 1) throw DomainError("eta_deriv: order must be >= 1");
    if (!(s > 0.0)) throw DomainError("eta_deriv: s must be > 0");
    if (t > kMaxNakagamiOrder) throw DomainError("eta_deriv: order exceeds 20");
    return eta_series(ctx, s, t)[static_cast<std::size_t>(t)];
}

double laplace_i2(const LaplaceContext& ctx, double s) { return std::exp(eta(ctx, s)); }

std::vector<double> laplace_i2_series(const LaplaceContext& ctx, double s, int max_order)
{
    if (max_order < 0) throw DomainError("laplace_i2_series: order must be >= 0");
    if (max_order > kMaxNakagamiOrder) throw DomainError("laplace_i2_series: order exceeds 20");
    if (max_order == 0) return {laplace_i2(ctx, s)};
    if (!(s > 0.0)) throw DomainError("laplace_i2_series: derivatives need s > 0");

    const auto e = eta_series(ctx, s, max_order);
    std::vector<double> lap(static_cast<std::size_t>(max_order + 1), 0.0);
    lap[0] = std::exp(e[0]);
    for (int k = 1; k <= max_order; ++k) {
        double acc = 0.0;
        for (int l = 0; l < k; ++l)
            acc += static_cast<double>(binomial(k - 1, l)) * e[static_cast<std::size_t>(k - l)] *
                   lap[static_cast<std::size_t>(l)];
        lap[static_cast<std::size_t>(k)] = acc;
    }
    return lap;
}

double laplace_i2_deriv(const LaplaceContext& ctx, int k, double s)
{
    return laplace_i2_series(ctx, s, k)[static_cast<std::size_t>(k)];
}

double laplace_h1_deriv(double r1, double alpha, int t, double u)
{
    if (t < 0) throw DomainError("laplace_h1_deriv: order must be >= 0");
    if (!(u >= 0.0)) throw DomainError("laplace_h1_deriv: u must be >= 0");
    if (!(r1 > 0.0)) throw DomainError("laplace_h1_deriv: r1 must be > 0");
    const double c = std::pow(r1, alpha);
    const double inv = 1.0 / (u + c);
    const double sign = (t % 2 == 0) ? 1.0 : -1.0;
    return sign * factorial_d(t) * c * inv * std::pow(inv, t);
}

std::vector<double> laplace_h1_plus_i2_series(const LaplaceContext& ctx, double u, int max_order)
{
    const auto li = laplace_i2_series(ctx, u, max_order);
    std::vector<double> lh(static_cast<std::size_t>(max_order + 1));
    for (int t = 0; t <= max_order; ++t)
        lh[static_cast<std::size_t>(t)] = laplace_h1_deriv(ctx.r1, ctx.alpha, t, u);

    std::vector<double> out(static_cast<std::size_t>(max_order + 1), 0.0);
    for (int l = 0; l <= max_order; ++l) {
        double acc = 0.0;
        for (int p = 0; p <= l; ++p)
            acc += static_cast<double>(binomial(l, p)) * li[static_cast<std::size_t>(p)] *
                   lh[static_cast<std::size_t>(l - p)];
        out[static_cast<std::size_t>(l)] = acc;
    }
    return out;
}

double laplace_h1_plus_i2_deriv(const LaplaceContext& ctx, int l, double u)
{
    return laplace_h1_plus_i2_series(ctx, u, l)[static_cast<std::size_t>(l)];
}

}  // namespace uavcoop
