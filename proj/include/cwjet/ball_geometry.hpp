#pragma once

#include "cwjet/jet.hpp"

#include <vector>

namespace cwjet {

/// Constraint ball for one ordered pair (a, b) of jet entries at a query
/// point x: a candidate gradient z is admissible against the pair iff
/// ||z - center||^2 <= alpha + beta = radius^2.
struct PairBall {
    int a_idx = 0;
    int b_idx = 0;
    double alpha = 0.0;   // M (f(b)-f(a)-<G(a),b-a>) - ||G(a)-G(b)||^2 / 2
    double beta = 0.0;    // || (G(b)-G(a)+M(x-b)) / 2 ||^2
    Vec center;           // (G(a)+G(b)+M(x-b)) / 2
    double radius = 0.0;  // sqrt(alpha + beta)
};

/// The split of a pair ball's geometry into per-entry vectors:
/// gamma1 = G(a), gamma2 = G(b) + M(x-b). Identities:
/// gamma1 + gamma2 = 2 * center,  beta = ||(gamma1 - gamma2)/2||^2.
struct GammaPair {
    Vec gamma1;
    Vec gamma2;
};

/// Certificate for the ball-intersection feasibility problem: lambda0 is the
/// smallest uniform inflation factor under which all balls share a point, z0
/// that point, and weights a convex combination over the active balls with
/// sum_i w_i (z0 - center_i) / radius_i^2 ~ 0 (norm reported as residual).
struct MinimaxResult {
    double lambda0 = 0.0;
    Vec z0;
    std::vector<int> active;
    std::vector<double> weights;
    int iterations = 0;
    double residual = 0.0;
};

/// One ball per ordered pair of entry indices, diagonal included, in
/// lexicographic (a_idx, b_idx) order. Throws infeasible_error when some
/// alpha is negative beyond tolerance (the jet is not within the condition
/// at M) and input_error when x coincides with a data point.
std::vector<PairBall> pair_balls(const Jet& jet, double M, const Vec& x);

/// gamma1/gamma2 vectors aligned with pair_balls ordering.
std::vector<GammaPair> gamma_pairs(const Jet& jet, double M, const Vec& x);

/// max over balls of ||z - center||^2 - radius^2; z lies in the common
/// intersection iff the result is <= 0.
double membership_margin(const std::vector<PairBall>& balls, const Vec& z);

/// Smallest inflation factor lambda0 = min_z max_i ||z - center_i||/radius_i
/// with its optimizer and convex-weight stationarity certificate.
///
/// A zero-radius ball forces the intersection to be exactly its center; in
/// that branch z0 is that center and lambda0 the worst ratio against the
/// positive-radius balls. lambda0 > 1 + 1e-6 throws certificate_error (the
/// input was not a feasible instance, or the solve failed).
MinimaxResult solve_minimax(const std::vector<PairBall>& balls,
                            double tol = 1e-9);

/// Slack of the crucial pairwise inequality for two pair indices p, q into
/// the same pair_balls/gamma_pairs output:
///   r_p^2 + r_q^2 - ||Z_p||^2 - ||Z_q||^2
///     + <gamma1_p, gamma2_q> + <gamma1_q, gamma2_p>.
/// Nonnegative (within tolerance) for every feasible instance.
double phi_diagnostic(const std::vector<PairBall>& balls,
                      const std::vector<GammaPair>& gammas, int p, int q);

}  // namespace cwjet
