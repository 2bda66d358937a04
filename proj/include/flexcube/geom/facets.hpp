#pragma once

#include <Eigen/Dense>
#include <vector>

#include "flexcube/geom/polytope.hpp"

namespace flexcube::geom {

// One facet of a 1/2/3-D hull: supporting plane plus the boundary cycle of
// vertex indices, ordered counter-clockwise seen from outside (3-D) or along
// the boundary (2-D edge: two indices).
struct Facet {
  Eigen::VectorXd normal;  // unit
  double offset = 0.0;     // normal . x <= offset
  std::vector<int> cycle;  // indices into the queried vertex list
};

// Facet structure of conv(vertices) for dim <= 3, including degenerate
// (lower-dimensional) hulls: a flat 3-D polygon yields its two oriented
// copies; segments and points yield no facets. Vertex indices refer to the
// canonical (extreme, lexicographically sorted) vertex list stored in the
// returned VPolytope.
struct FacetHull {
  VPolytope poly;
  std::vector<Facet> facets;
  int affine_rank = 0;
};

FacetHull facet_hull(const VPolytope& p);

}  // namespace flexcube::geom
