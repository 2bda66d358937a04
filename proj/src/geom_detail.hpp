#pragma once

#include <Eigen/Dense>
#include <vector>

#include "flexcube/geom/polytope.hpp"

namespace flexcube::geom::detail {

// Affine hull of a point cloud: points = origin + basis * t within
// tolerance(). basis/complement columns are orthonormal.
struct AffineBasis {
  Eigen::VectorXd origin;
  Eigen::MatrixXd basis;       // d x rank
  Eigen::MatrixXd complement;  // d x (d - rank)
  int rank = 0;
};

AffineBasis affine_hull(const std::vector<Eigen::VectorXd>& pts);

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Merge points closer than tolerance(); keeps first occurrences, then
// sorts lexicographically.
std::vector<Eigen::VectorXd> dedup_sorted(std::vector<Eigen::VectorXd> pts);

// Indices of the hull (extreme) points of a full-rank cloud, any dim <= 6.
std::vector<int> extreme_indices(const std::vector<Eigen::VectorXd>& pts,
                                 int dim);

// CCW boundary cycle of a full-rank 2-D cloud; collinear points dropped.
std::vector<int> hull2_cycle(const std::vector<Eigen::VectorXd>& pts);

// One supporting hyperplane of a full-rank hull with its incident points.
struct RawFacet {
  Eigen::VectorXd normal;  // unit
  double offset = 0.0;
  std::vector<int> support;  // all points within tolerance of the plane
  std::vector<int> cycle;    // ordered boundary (filled for dim 2 and 3 only)
};

// Facets of conv(pts) for a full-rank cloud. dim 3 uses quickhull with a
// brute-force fallback (all point triples) should plane verification fail;
// dim >= 4 always uses the combinatorial route.
std::vector<RawFacet> hull_facets(const std::vector<Eigen::VectorXd>& pts,
                                  int dim);

}  // namespace flexcube::geom::detail
