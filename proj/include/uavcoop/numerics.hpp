#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "uavcoop/errors.hpp"

namespace uavcoop {

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Complete beta function B(a, b) for a, b > 0.
[[nodiscard]] double complete_beta(double a, double b);

/// Lower incomplete beta  B(x; a, b) = int_0^x t^(a-1) (1-t)^(b-1) dt  (not regularized).
[[nodiscard]] double lower_incomplete_beta(double x, double a, double b);

/// Upper incomplete beta  int_x^1 t^(a-1) (1-t)^(b-1) dt  (not regularized).
///
/// Evaluated with a Lentz continued fraction on whichever tail converges,
/// relative accuracy about 1e-13. Requires 0 <= x <= 1, a > 0 and b > 0
/// (b <= 0 is accepted only at x = 1, where the result is 0).
[[nodiscard]] double upper_incomplete_beta(double x, double a, double b);

/// Same integral with the lower limit passed as its complement y = 1 - x.
/// Callers that know 1 - x more accurately than x (x close to 1) use this.
[[nodiscard]] double upper_incomplete_beta_tail(double y, double a, double b);

/// Exact factorial for 0 <= n <= 20.
[[nodiscard]] std::uint64_t factorial(int n);

[[nodiscard]] double factorial_d(int n);

/// Exact binomial coefficient for 0 <= k <= n <= 62.
[[nodiscard]] std::uint64_t binomial(int n, int k);

/// Row k-1 of Pascal's triangle: C(k-1, l) for l = 0..k-1. Requires k >= 1.
[[nodiscard]] std::vector<std::uint64_t> falling_factorial_coeffs(int k);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// Chebyshev-Gauss (first kind) nodes cos((2i-1) pi / (2n)), i = 1..n.
struct ChebNodes {
    int n = 0;
    std::vector<double> nodes;
};

[[nodiscard]] ChebNodes cheb_nodes(int n);

/// Gauss-Legendre rule on [0, 1] with 16 nodes.
struct GaussRule16 {
    std::array<double, 16> x;
    std::array<double, 16> w;
};

[[nodiscard]] const GaussRule16& gauss_legendre_16();

struct QuadOptions {
    double abs_tol = 1e-5;
    double rel_tol = 0.0;
    int max_intervals = 4000;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t K>
struct Panel {
    double a;
    double b;
    std::array<double, K> value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <std::size_t K, class F>
Panel<K> gk15(F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    std::array<double, K> kron{};
    std::array<double, K> gauss{};

    const std::array<double, K> fc = f(c);
    for (std::size_t k = 0; k < K; ++k) {
        kron[k] = kWgk[7] * fc[k];
        gauss[k] = kWg[3] * fc[k];
    }
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const std::array<double, K> f1 = f(c - dx);
        const std::array<double, K> f2 = f(c + dx);
        for (std::size_t k = 0; k < K; ++k) {
            kron[k] += kWgk[j] * (f1[k] + f2[k]);
            if (j % 2 == 1) gauss[k] += kWg[j / 2] * (f1[k] + f2[k]);
        }
    }
    Panel<K> p{a, b, {}, 0.0};
    for (std::size_t k = 0; k < K; ++k) {
        p.value[k] = kron[k] * h;
        p.error = std::max(p.error, std::abs((kron[k] - gauss[k]) * h));
    }
    return p;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of a vector-valued integrand.
///
/// `f(x)` returns std::array<double, K>. The range [breaks.front(), breaks.back()]
/// is split at every interior break before refinement starts, so integrand kinks
/// at known points never sit inside a panel. Refinement stops when the summed
/// error estimate (max over components) is below max(abs_tol, rel_tol * |I|).
/// Throws IntegrationError when `max_intervals` panels do not suffice.
template <std::size_t K, class F>
std::array<double, K> integrate_adaptive(F&& f, std::span<const double> breaks,
                                         const QuadOptions& opts = {})
{
    if (breaks.size() < 2) throw DomainError("integrate_adaptive: need at least two breakpoints");
    std::priority_queue<detail::Panel<K>> heap;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i] <= breaks[i + 1]))
            throw DomainError("integrate_adaptive: breakpoints must be non-decreasing");
        if (breaks[i] < breaks[i + 1]) heap.push(detail::gk15<K>(f, breaks[i], breaks[i + 1]));
    }
    if (heap.empty()) return {};

    auto totals = [&heap]() {
        std::array<double, K> value{};
        double error = 0.0;
        auto copy = heap;
        while (!copy.empty()) {
            const auto& p = copy.top();
            for (std::size_t k = 0; k < K; ++k) value[k] += p.value[k];
            error += p.error;
            copy.pop();
        }
        return std::pair{value, error};
    };

    double error = 0.0;
    std::array<double, K> value{};
    {
        auto [v, e] = totals();
        value = v;
        error = e;
    }
    auto target = [&]() {
        double mag = 0.0;
        for (double v : value) mag = std::max(mag, std::abs(v));
        return std::max(opts.abs_tol, opts.rel_tol * mag);
    };

    while (error > target()) {
        if (static_cast<int>(heap.size()) >= opts.max_intervals)
            throw IntegrationError("adaptive quadrature did not reach tolerance " +
                                   std::to_string(target()) + " (estimated error " +
                                   std::to_string(error) + ")");
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw IntegrationError("adaptive quadrature exhausted floating-point resolution");
        const auto left = detail::gk15<K>(f, worst.a, mid);
        const auto right = detail::gk15<K>(f, mid, worst.b);
        heap.push(left);
        heap.push(right);
        error += left.error + right.error - worst.error;
        for (std::size_t k = 0; k < K; ++k) value[k] += left.value[k] + right.value[k] - worst.value[k];
    }
    // Re-sum from the panels so the result does not carry incremental drift.
    return totals().first;
}

/// Scalar convenience wrapper around integrate_adaptive.
template <class F>
double integrate(F&& f, std::span<const double> breaks, const QuadOptions& opts = {})
{
    auto wrapped = [&f](double x) { return std::array<double, 1>{f(x)}; };
    return integrate_adaptive<1>(wrapped, breaks, opts)[0];
}

template <class F>
double integrate(F&& f, double a, double b, const QuadOptions& opts = {})
{
    const std::array<double, 2> breaks{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(breaks), opts);
}

/// Bisection root search on a bracket where f(lo) and f(hi) differ in sign
/// (or one of them is zero). Returns the bracket midpoint once its width is
/// below `x_tol`.
template <class F>
double find_root(F&& f, double lo, double hi, double x_tol)
{
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0) == (fhi < 0)) throw DomainError("find_root: bracket does not change sign");
    for (int it = 0; it < 200 && hi - lo > x_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace uavcoop
