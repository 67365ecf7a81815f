#pragma once

#include <optional>

#include "ivs/map_dsl.hpp"

namespace ivs {

// Sampled infimum of a pointwise quantity over a boxed grid. `value` is the
// exact minimum over the evaluated samples, attained at `argmin_point`.
struct BoundEstimate {
    double value = 0.0;
    Vec argmin_point;
    long samples = 0;
    Box box;
    std::optional<Vec> direction;  // set for the per-direction bound
};

// Smallest singular value of a 2x2 / 3x3 matrix via the closed-form
// eigenvalues of A^T A.
double sigma_min(const Mat& a);

// min over grid samples of sigma_min(Df(x)): the uniform-invertibility
// infimum inf ||Df(x)^-1||^-1 restricted to the box.
BoundEstimate hadamard_bound(const MapSpec& m, const Box& box, int grid_resolution);

// min over grid samples of |Df(x)^T v| for a unit direction v.
BoundEstimate nollet_xavier_bound(const MapSpec& m, const Vec& v, const Box& box,
                                  int grid_resolution);

}  // namespace ivs
