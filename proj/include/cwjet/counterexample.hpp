#pragma once

#include "cwjet/jet.hpp"

#include <cstdint>
#include <vector>

namespace cwjet::cex {

/// Finite truncation of the bounded analytic convex function on a
/// neighborhood of the unit ball whose restriction to the ball has no
/// continuous convex extension. dim is the ambient dimension, K the series
/// truncation (terms n = 2..K, K <= dim), r the ray parameter of the probe
/// point r*e1 (r >= 2; divergence regime is r > 2), k the index of the
/// sphere point supplying the tangent plane (2 <= k <= min(K, dim)).
struct Config {
    int dim = 0;
    int K = 0;
    double r = 3.0;
    int k = 2;
};

void validate_config(const Config& cfg);

/// Tangent-plane evaluation through two independent routes plus the
/// quantities they are built from.
struct Report {
    double f_value = 0.0;        // f at the sphere point
    double F_value = 0.0;        // F = f + ||.||^2 / 2 at the sphere point
    Vec grad_F;                  // gradient of F at the sphere point
    double tangent_direct = 0.0;       // F(p) + <grad F(p), r e1 - p>
    double tangent_closed_form = 0.0;  // same value via the scalar series
    double lower_bound = 0.0;          // k (r - 2)
};

/// Unit sphere point e1/2 + sqrt(3)/2 * e_k (1-based k >= 2). Any two of
/// them have inner product 1/4.
Vec probe_point(int dim, int k);

/// f(x) = sum_{n=2}^{K} (x_1/2 + sqrt(3)/2 x_n)^{2n}. Requires ||x|| < 2
/// (the series domain) and dim(x) >= K.
double f_value(const Vec& x, int K);

/// F = f + ||x||^2/2 with its gradient by term-wise differentiation.
std::pair<double, Vec> F_value_and_grad(const Vec& x, int K);

/// Tangent plane of F at probe_point(k), evaluated at r*e1, computed both
/// from the gradient and from the closed-form scalar series; both dominate
/// k (r - 2).
Report tangent_value(const Config& cfg);

/// max of f over uniform samples of the unit ball; bounded by 49/24.
double ball_bound_scan(int dim, int K, int samples, std::uint64_t seed);

/// Tangent values for an increasing list of indices k at fixed r > 2;
/// grows without bound as k does, witnessing that the minimal convex
/// extension is +infinity at r*e1.
std::vector<Report> divergence_sweep(double r, const std::vector<int>& k_list,
                                     int K);

}  // namespace cwjet::cex
