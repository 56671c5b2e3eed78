#pragma once

#include "cwjet/ball_geometry.hpp"
#include "cwjet/jet.hpp"

#include <utility>
#include <vector>

namespace cwjet {

/// One extension step at a fresh point: the chosen gradient gx (the minimax
/// center of the pair balls), the admissible value bracket [s, i], and the
/// chosen value fx = s + theta (i - s). echoed marks queries that coincided
/// with an existing entry and returned its stored values.
struct ExtensionStep {
    Vec x;
    Vec gx;
    double s = 0.0;
    double i = 0.0;
    double fx = 0.0;
    double lambda0 = 0.0;
    double theta = 0.5;
    bool echoed = false;
};

/// Result of a sequential batch extension: per-step records plus the final
/// augmented jet, still within the condition at the same constant M.
struct ExtensionTrace {
    std::vector<ExtensionStep> steps;
    Jet jet;
    double M = 1.0;
};

enum class QueryOrder {
    given,      // process queries in input order
    canonical,  // lexicographic sort of query coordinates, for reproducibility
};

/// Admissible value interval at x once the gradient gx is fixed:
///   s = max_a f(a) + <G(a), x-a> + ||gx - G(a)||^2 / 2M
///   i = min_b f(b) - <gx, b-x>  - ||gx - G(b)||^2 / 2M
/// No feasibility requirement on gx; callers check s <= i.
std::pair<double, double> bracket(const Jet& jet, double M, const Vec& x,
                                  const Vec& gx);

/// Extend the jet at one point so the augmented jet keeps the condition at
/// the same M. Queries that coincide with a data point echo stored values.
ExtensionStep extend_point(const Jet& jet, double M, const Vec& x,
                           double theta = 0.5);

/// Sequential extension over a query batch; each step augments the jet seen
/// by the next. Different query orders may produce different (equally valid)
/// extensions; QueryOrder::canonical sorts queries first.
ExtensionTrace extend_many(const Jet& jet, double M, std::vector<Vec> queries,
                           double theta = 0.5,
                           QueryOrder order = QueryOrder::given);

/// Supremum of tangent affine functions from the data points:
/// max_a f(a) + <G(a), x-a>. The pointwise-least convex function matching
/// the jet from below.
double minimal_convex_extension(const Jet& jet, const Vec& x);

}  // namespace cwjet
