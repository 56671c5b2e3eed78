#pragma once

#include <Eigen/Core>

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cwjet {

using Vec = Eigen::VectorXd;

/// Malformed or inconsistent input data (CLI exit code 2).
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Data that is well formed but admits no convex C^{1,1} interpolant at the
/// requested constant (CLI exit code 1).
class infeasible_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed: solver non-convergence, a feasibility
/// certificate that should hold by construction does not (CLI exit code 3).
class certificate_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One prescribed sample: point, function value, gradient value.
struct JetEntry {
    Vec x;
    double f = 0.0;
    Vec g;
};

/// A 1-jet: finite set of (point, value, gradient) samples in a fixed
/// dimension. Points are pairwise distinct; entries are kept in the order
/// given. Construction validates finiteness, dimensions and separation.
class Jet {
public:
    Jet(int dim, std::vector<JetEntry> entries);

    int dim() const { return dim_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const JetEntry& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<JetEntry>& entries() const { return entries_; }

    /// Minimum separation two points must have to count as distinct,
    /// 1e-12 * (1 + max coordinate magnitude).
    double dedup_eps() const { return dedup_eps_; }

    /// Index of the entry whose point coincides with x (within dedup_eps),
    /// or -1 if x is a fresh point.
    int find(const Vec& x) const;

    double value_scale() const { return value_scale_; }  // max |f|
    double grad_scale() const { return grad_scale_; }    // max ||g||
    double coord_scale() const { return coord_scale_; }  // max |coord|

    /// New jet with one appended entry (re-validated).
    Jet with_entry(JetEntry e) const;

private:
    int dim_;
    std::vector<JetEntry> entries_;
    double dedup_eps_ = 0.0;
    double value_scale_ = 0.0;
    double grad_scale_ = 0.0;
    double coord_scale_ = 0.0;
};

/// Feasibility report for the convex C^{1,1} interpolation condition.
///
/// minimal_M is the least constant (sup of ||G(x)-G(y)||^2 / 2(f(x)-f(y)-
/// <G(y),x-y>) over ordered pairs with distinct gradients), +infinity when no
/// finite constant works, and 0 for constant-gradient data where any M > 0
/// works. min_gap_at_M is the worst pairwise slack at gap_M (the user's M,
/// else minimal_M, else 1).
struct CwReport {
    bool feasible = false;
    double minimal_M = std::numeric_limits<double>::infinity();
    std::pair<int, int> worst_pair{-1, -1};
    double gap_M = 1.0;
    double min_gap_at_M = 0.0;
    double lip_G = 0.0;
    double gamma = 0.0;
};

/// Worst slack of the convexity condition at constant M:
/// min over ordered pairs x != y of
///   f(x) - f(y) - <G(y), x-y>  -  ||G(x)-G(y)||^2 / 2M.
/// The jet admits a convex C^{1,1} extension with gradient Lipschitz
/// constant M iff the result is >= 0. Requires >= 2 entries and M > 0.
double cw11_gap(const Jet& jet, double M);

/// Least admissible constant together with derived diagnostics.
CwReport minimal_cw11_constant(const Jet& jet);

/// max ||G(x)-G(y)|| / ||x-y|| over pairs. Requires >= 2 entries.
double lip_gradient(const Jet& jet);

/// Le Gruyer's functional: sup over pairs of sqrt(A^2+B^2) + |A| with
///   A = [2(f(x)-f(y)) + <G(x)+G(y), y-x>] / ||x-y||^2,
///   B = ||G(x)-G(y)|| / ||x-y||.
/// Equals the least gradient Lipschitz constant over all (not necessarily
/// convex) C^{1,1} interpolants. Requires >= 2 entries.
double legruyer_gamma(const Jet& jet);

/// max |f(x)-f(y)-<G(y),x-y>| / ||x-y||^2 over ordered pairs; bounded by
/// minimal_M for feasible data. Requires >= 2 entries.
double quadratic_growth_bound(const Jet& jet);

}  // namespace cwjet
