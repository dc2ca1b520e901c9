#pragma once

#include <vector>

#include "uavcoop/params.hpp"

namespace uavcoop {

enum class InterferenceCase { Overlap, Outside };

/// Frozen evaluation context for the Laplace transform of the interference
/// beyond the nearest BS, at UE distance r0 and nearest-BS distance r1.
struct LaplaceContext {
    double r0 = 0.0;
    double r1 = 0.0;
    double bs_density = 0.0;
    double alpha = 0.0;  ///< ground path-loss exponent
    int quad_n = 0;
    InterferenceCase case_tag = InterferenceCase::Outside;
    double big_theta = 0.0;            ///< lens half-angle, 0 when Outside
    std::vector<double> node_angle;    ///< c_n, Overlap only
    std::vector<double> node_radius;   ///< z(c_n), Overlap only
    std::vector<double> node_weight;   ///< sqrt(1 - theta_n^2), Overlap only
};

/// Requires 0 <= r0 <= R_c and r1 > R_c - r0. `quad_n` overrides params.quad_n when > 0.
[[nodiscard]] LaplaceContext make_context(const SystemParams& params, double r0, double r1,
                                          int quad_n = 0);

/// Exit distance from the UE to the hole boundary along a ray at angle theta
/// from the outward radial direction.
[[nodiscard]] double hole_exit_radius(double radius_rc, double r0, double theta);

/// Exponent of the Laplace transform, eta(s) <= 0, s >= 0.
[[nodiscard]] double eta(const LaplaceContext& ctx, double s);

/// t-th derivative of eta, t >= 1, s > 0. Sign is (-1)^t.
[[nodiscard]] double eta_deriv(const LaplaceContext& ctx, int t, double s);

/// exp(eta(s)).
[[nodiscard]] double laplace_i2(const LaplaceContext& ctx, double s);

/// L^(0..max_order)(s) in one pass; element k is the k-th derivative.
[[nodiscard]] std::vector<double> laplace_i2_series(const LaplaceContext& ctx, double s,
                                                    int max_order);

/// k-th derivative of the Laplace transform, k >= 0, s > 0.
[[nodiscard]] double laplace_i2_deriv(const LaplaceContext& ctx, int k, double s);

/// t-th derivative of the Laplace transform of the nearest-BS power, at u >= 0.
[[nodiscard]] double laplace_h1_deriv(double r1, double alpha, int t, double u);

/// Derivatives 0..max_order of the product L_h1 * L_I2 at u > 0.
[[nodiscard]] std::vector<double> laplace_h1_plus_i2_series(const LaplaceContext& ctx, double u,
                                                            int max_order);

[[nodiscard]] double laplace_h1_plus_i2_deriv(const LaplaceContext& ctx, int l, double u);

}  // namespace uavcoop
