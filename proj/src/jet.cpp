#include "cwjet/jet.hpp"

#include <algorithm>
#include <cmath>

namespace cwjet {

namespace {

bool all_finite(const Vec& v) { return v.allFinite(); }

double pair_D(const JetEntry& x, const JetEntry& y) {
    return x.f - y.f - y.g.dot(x.x - y.x);
}

}  // namespace

Jet::Jet(int dim, std::vector<JetEntry> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ <= 0) throw input_error("jet dimension must be positive");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.x.size() != dim_ || e.g.size() != dim_)
            throw input_error("jet entry " + std::to_string(i) +
                              ": point/gradient length does not match dim");
        if (!all_finite(e.x) || !all_finite(e.g) || !std::isfinite(e.f))
            throw input_error("jet entry " + std::to_string(i) +
                              ": non-finite value");
        coord_scale_ = std::max(coord_scale_, e.x.cwiseAbs().maxCoeff());
        value_scale_ = std::max(value_scale_, std::abs(e.f));
        grad_scale_ = std::max(grad_scale_, e.g.norm());
    }
    dedup_eps_ = 1e-12 * (1.0 + coord_scale_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        for (std::size_t j = i + 1; j < entries_.size(); ++j)
            if ((entries_[i].x - entries_[j].x).norm() < dedup_eps_)
                throw input_error("jet entries " + std::to_string(i) + " and " +
                                  std::to_string(j) +
                                  " coincide (separation below dedup_eps)");
}

int Jet::find(const Vec& x) const {
    if (x.size() != dim_) throw input_error("query point has wrong dimension");
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if ((entries_[i].x - x).norm() < dedup_eps_) return static_cast<int>(i);
    return -1;
}

Jet Jet::with_entry(JetEntry e) const {
    std::vector<JetEntry> es = entries_;
    es.push_back(std::move(e));
    return Jet(dim_, std::move(es));
}

double cw11_gap(const Jet& jet, double M) {
    if (jet.size() < 2) throw input_error("cw11_gap needs at least 2 entries");
    if (!(M > 0.0) || !std::isfinite(M))
        throw input_error("cw11_gap needs a positive finite M");
    double gap = std::numeric_limits<double>::infinity();
    const auto& es = jet.entries();
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = 0; j < es.size(); ++j) {
            if (i == j) continue;
            const double d = pair_D(es[i], es[j]);
            const double q = (es[i].g - es[j].g).squaredNorm() / (2.0 * M);
            gap = std::min(gap, d - q);
        }
    if (!std::isfinite(gap)) throw input_error("cw11_gap: non-finite arithmetic");
    return gap;
}

double lip_gradient(const Jet& jet) {
    if (jet.size() < 2)
        throw input_error("lip_gradient needs at least 2 entries");
    double lip = 0.0;
    const auto& es = jet.entries();
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j)
            lip = std::max(lip, (es[i].g - es[j].g).norm() /
                                    (es[i].x - es[j].x).norm());
    return lip;
}

double legruyer_gamma(const Jet& jet) {
    if (jet.size() < 2)
        throw input_error("legruyer_gamma needs at least 2 entries");
    double gamma = 0.0;
    const auto& es = jet.entries();
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            const double d2 = (es[i].x - es[j].x).squaredNorm();
            const double a =
                (2.0 * (es[i].f - es[j].f) +
                 (es[i].g + es[j].g).dot(es[j].x - es[i].x)) /
                d2;
            const double b = (es[i].g - es[j].g).norm() / std::sqrt(d2);
            gamma = std::max(gamma, std::hypot(a, b) + std::abs(a));
        }
    return gamma;
}

double quadratic_growth_bound(const Jet& jet) {
    if (jet.size() < 2)
        throw input_error("quadratic_growth_bound needs at least 2 entries");
    double bound = 0.0;
    const auto& es = jet.entries();
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = 0; j < es.size(); ++j) {
            if (i == j) continue;
            bound = std::max(bound, std::abs(pair_D(es[i], es[j])) /
                                        (es[i].x - es[j].x).squaredNorm());
        }
    return bound;
}

CwReport minimal_cw11_constant(const Jet& jet) {
    CwReport rep;
    if (jet.empty()) throw input_error("minimal_cw11_constant needs >= 1 entry");
    if (jet.size() == 1) {
        rep.feasible = true;
        rep.minimal_M = 0.0;
        rep.gap_M = 1.0;
        rep.min_gap_at_M = 0.0;
        return rep;
    }

    const auto& es = jet.entries();
    // Tolerances scale with the data entering D and ||dG||.
    const double d_scale =
        jet.value_scale() + jet.grad_scale() * (2.0 * jet.coord_scale());
    const double abs_tol = 1e-12 * (1.0 + d_scale);
    const double grad_tol = 1e-12 * (1.0 + jet.grad_scale());

    bool feasible = true;
    double minimal = 0.0;
    std::pair<int, int> binding{-1, -1};
    std::pair<int, int> violating{-1, -1};
    double worst_violation = std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = 0; j < es.size(); ++j) {
            if (i == j) continue;
            const double d = pair_D(es[i], es[j]);
            const double dg = (es[i].g - es[j].g).norm();
            const bool grad_equal = dg <= grad_tol;
            if (d < -abs_tol || (!grad_equal && d <= abs_tol)) {
                feasible = false;
                // prefer the most negative D as the reported witness
                if (d < worst_violation) {
                    worst_violation = d;
                    violating = {static_cast<int>(i), static_cast<int>(j)};
                }
                continue;
            }
            if (!grad_equal) {
                const double ratio = dg * dg / (2.0 * d);
                if (ratio > minimal) {
                    minimal = ratio;
                    binding = {static_cast<int>(i), static_cast<int>(j)};
                }
            }
        }

    rep.lip_G = lip_gradient(jet);
    rep.gamma = legruyer_gamma(jet);
    if (!feasible) {
        rep.feasible = false;
        rep.minimal_M = std::numeric_limits<double>::infinity();
        rep.worst_pair = violating;
        rep.gap_M = 1.0;
        rep.min_gap_at_M = cw11_gap(jet, 1.0);
        return rep;
    }
    rep.feasible = true;
    rep.minimal_M = minimal;
    rep.worst_pair = binding;
    rep.gap_M = minimal > 0.0 ? minimal : 1.0;
    rep.min_gap_at_M = cw11_gap(jet, rep.gap_M);
    return rep;
}

}  // namespace cwjet
