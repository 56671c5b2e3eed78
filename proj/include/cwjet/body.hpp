#pragma once

#include "cwjet/jet.hpp"

#include <vector>

namespace cwjet {

/// A finite point set with prescribed unit outer normals, the data of the
/// convex-body boundary interpolation problem.
struct BodyData {
    int dim = 0;
    std::vector<Vec> points;
    std::vector<Vec> normals;
};

/// Validate dimensions, finiteness and unit normals; throws input_error.
void validate_body(const BodyData& body);

struct BodyWitness {
    int x_idx = -1;
    int y_idx = -1;
    double value = 0.0;
};

/// Feasibility constants for the two conditions characterizing subsets of
/// C^{1,1} convex body boundaries with prescribed normals:
///   delta_O  = min_y <N(y), y>                       (origin condition)
///   delta_KW = inf over pairs with N(x) != N(y) of
///              <N(y), y-x> / ||N(y)-N(x)||^2          (+inf if no such pair)
/// Pairs with equal normals contribute the side requirement
/// <N(y), y-x> >= 0, reported via parallel_side_min. The data set lies on
/// such a boundary iff both deltas are positive and the side requirement
/// holds.
struct BodyReport {
    double delta_O = 0.0;
    double delta_KW = 0.0;
    double parallel_side_min = 0.0;  // +inf when every pair has distinct normals
    bool feasible = false;
    BodyWitness worst_O;
    BodyWitness worst_KW;
    BodyWitness worst_parallel;
};

/// min over points of <N(y), y>; the largest admissible delta for the
/// origin condition.
double check_outer(const BodyData& body);

/// inf over ordered pairs with distinct normals of
/// <N(y), y-x> / ||N(y)-N(x)||^2; +infinity when no pair qualifies.
/// Requires >= 2 points.
double check_kw11(const BodyData& body);

BodyReport body_report(const BodyData& body);

}  // namespace cwjet
