#pragma once

#include <Eigen/Dense>

#include "flexcube/geom/polytope.hpp"

namespace flexcube::geom {

// Euclidean distance from x to the nearest point of p (0 when contained).
// Exact feature enumeration; dimensions 1-3.
double distance_to(const Polytope& p, const Eigen::VectorXd& x);

// Symmetric Hausdorff distance between two bounded convex polytopes
// (attained at vertices). Dimensions 1-3.
double hausdorff(const Polytope& p, const Polytope& q);

}  // namespace flexcube::geom
