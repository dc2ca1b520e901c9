#include "uavcoop/numerics.hpp"

#include <numbers>

namespace uavcoop {

namespace {

// Modified Lentz evaluation of the incomplete-beta continued fraction
// (the form that converges for x < (a + 1) / (a + b + 2)).
double beta_continued_fraction(double a, double b, double x)
{
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 1000; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h;
    }
    throw IntegrationError("incomplete beta continued fraction did not converge");
}

// int_0^x t^(a-1) (1-t)^(b-1) dt given both x and 1 - x.
double lower_beta_impl(double x, double one_minus_x, double a, double b)
{
    if (x <= 0.0) return 0.0;
    if (one_minus_x <= 0.0) return complete_beta(a, b);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        const double front = std::exp(a * std::log(x) + b * std::log(one_minus_x));
        return front * beta_continued_fraction(a, b, x) / a;
    }
    const double front = std::exp(b * std::log(one_minus_x) + a * std::log(x));
    return complete_beta(a, b) - front * beta_continued_fraction(b, a, one_minus_x) / b;
}

void check_beta_args(double x, double a, const char* who)
{
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(who) + ": x must lie in [0, 1]");
    if (!(a > 0.0)) throw DomainError(std::string(who) + ": a must be > 0");
}

}  // namespace

double complete_beta(double a, double b)
{
    if (!(a > 0.0 && b > 0.0)) throw DomainError("complete_beta: a and b must be > 0");
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double lower_incomplete_beta(double x, double a, double b)
{
    check_beta_args(x, a, "lower_incomplete_beta");
    if (!(b > 0.0)) throw DomainError("lower_incomplete_beta: b must be > 0");
    return lower_beta_impl(x, 1.0 - x, a, b);
}

double upper_incomplete_beta(double x, double a, double b)
{
    check_beta_args(x, a, "upper_incomplete_beta");
    if (x == 1.0) return 0.0;
    if (!(b > 0.0)) throw DomainError("upper_incomplete_beta: b must be > 0 unless x = 1");
    return lower_beta_impl(1.0 - x, x, b, a);
}

double upper_incomplete_beta_tail(double y, double a, double b)
{
    check_beta_args(y, a, "upper_incomplete_beta");
    if (y == 0.0) return 0.0;
    if (!(b > 0.0)) throw DomainError("upper_incomplete_beta: b must be > 0 unless x = 1");
    // Substituting t -> 1 - t turns the upper tail into a lower one with swapped shapes.
    return lower_beta_impl(y, 1.0 - y, b, a);
}

std::uint64_t factorial(int n)
{
    static constexpr auto table = [] {
        std::array<std::uint64_t, 21> t{};
        t[0] = 1;
        for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    if (n < 0 || n > 20) throw DomainError("factorial: n must lie in [0, 20]");
    return table[static_cast<std::size_t>(n)];
}

double factorial_d(int n) { return static_cast<double>(factorial(n)); }

std::uint64_t binomial(int n, int k)
{
    if (n < 0 || k < 0 || k > n || n > 62) throw DomainError("binomial: need 0 <= k <= n <= 62");
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

std::vector<std::uint64_t> falling_factorial_coeffs(int k)
{
    if (k < 1) throw DomainError("falling_factorial_coeffs: k must be >= 1");
    std::vector<std::uint64_t> row(static_cast<std::size_t>(k));
    for (int l = 0; l < k; ++l) row[static_cast<std::size_t>(l)] = binomial(k - 1, l);
    return row;
}

ChebNodes cheb_nodes(int n)
{
    if (n < 1) throw DomainError("cheb_nodes: n must be >= 1");
    ChebNodes out{n, std::vector<double>(static_cast<std::size_t>(n))};
    for (int i = 1; i <= n; ++i)
        out.nodes[static_cast<std::size_t>(i - 1)] = std::cos((2.0 * i - 1.0) * std::numbers::pi / (2.0 * n));
    return out;
}

const GaussRule16& gauss_legendre_16()
{
    static const GaussRule16 rule = [] {
        constexpr int n = 16;
        GaussRule16 r{};
        for (int i = 0; i < n; ++i) {
            // Newton iteration on P_n from the Chebyshev-like initial guess.
            double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0;
                double p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            r.x[static_cast<std::size_t>(i)] = 0.5 * (1.0 - z);
            r.w[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - z * z) * dp * dp);
        }
        return r;
    }();
    return rule;
}

}  // namespace uavcoop
