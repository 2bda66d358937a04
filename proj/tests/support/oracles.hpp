#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "flexcube/geom/polytope.hpp"

// Brute-force reference implementations used to check the geometry library.
// They deliberately share no code with the library paths they verify.
namespace flexcube::testing {

using Rng = std::mt19937_64;

Eigen::VectorXd random_unit_vector(int dim, Rng& rng);
Eigen::VectorXd random_in_ball(int dim, double radius, Rng& rng);

// Random bounded polytope from `m` halfspaces with unit normals and offsets
// in [0.5, 1.5]; the origin is always interior. Retries until bounded.
geom::Polytope random_hpolytope(int dim, int m, Rng& rng);

// Hull of `n` random points in a ball.
geom::Polytope random_vpolytope(int dim, int n, double radius, Rng& rng);

// All candidate facets of conv(pts): every dim-subset spanning a hyperplane
// with the whole cloud on one side.
struct OracleFacet {
  Eigen::VectorXd normal;  // unit, outward
  double offset;
};
std::vector<OracleFacet> oracle_facets(const std::vector<Eigen::VectorXd>& pts,
                                       int dim);

// All vertices of {A x <= b}: every dim-subset of rows solved and filtered
// by feasibility. No refinement, no canonicalization.
std::vector<Eigen::VectorXd> oracle_vertices(const Eigen::MatrixXd& A,
                                             const Eigen::VectorXd& b,
                                             double feas_tol);

// Monte-Carlo volume estimate from axis-aligned bounding-box sampling.
double oracle_volume_mc(const geom::Polytope& p, int samples, Rng& rng);

// Set equality / containment via vertex-in-halfspace checks at `tol`.
bool oracle_contains(const geom::Polytope& p, const geom::Polytope& q,
                     double tol);
bool oracle_set_equal(const geom::Polytope& p, const geom::Polytope& q,
                      double tol);

}  // namespace flexcube::testing
