#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace flexcube::geom {

class GeomError : public std::runtime_error {
 public:
  enum class Code {
    EmptyInput,
    DimensionTooHigh,
    DimensionMismatch,
    Unbounded,
    UnboundedInDirection,
    Infeasible,
  };

  GeomError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

// Halfspace intersection {x : A x <= b}. May describe an unbounded set;
// the Polytope wrapper below always holds a bounded one.
struct HPolytope {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;

  int dim() const { return static_cast<int>(A.cols()); }
  int facets() const { return static_cast<int>(A.rows()); }
};

// Convex hull of a finite vertex set. Canonical form: irredundant
// (no vertex inside the hull of the others) and lexicographically sorted.
struct VPolytope {
  std::vector<Eigen::VectorXd> vertices;
  int dim = 0;

  int count() const { return static_cast<int>(vertices.size()); }
};

// {center + sum_i a_i g_i : a_i in [-1, 1]}.
struct Zonotope {
  Eigen::VectorXd center;
  std::vector<Eigen::VectorXd> generators;

  int dim() const { return static_cast<int>(center.size()); }
};

// Bounded convex polytope carrying both representations. Values are
// immutable after construction; all operations below are pure functions,
// so concurrent evaluation needs no synchronization.
class Polytope {
 public:
  static Polytope from_vertices(std::vector<Eigen::VectorXd> pts);
  static Polytope from_vrep(const VPolytope& v);
  // Throws GeomError::Unbounded when the intersection is unbounded;
  // an empty intersection yields the explicit empty value.
  static Polytope from_hrep(const HPolytope& h);
  static Polytope from_box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
  static Polytope from_zonotope(const Zonotope& z);
  static Polytope point(const Eigen::VectorXd& x);
  static Polytope empty_set(int dim);

  bool is_empty() const { return empty_; }
  int dim() const { return dim_; }
  const HPolytope& hrep() const;  // throws EmptyInput on the empty set
  const VPolytope& vrep() const;

 private:
  Polytope() = default;

  int dim_ = 0;
  bool empty_ = true;
  HPolytope h_;
  VPolytope v_;
};

// --- representation conversions -------------------------------------------

// Facet enumeration of conv(vertices). Lower-dimensional hulls come back
// with paired opposing halfspaces capturing their affine hull.
HPolytope vrep_to_hrep(const VPolytope& p);

// Vertex enumeration of a bounded halfspace intersection.
// Throws Unbounded / Infeasible.
VPolytope hrep_to_vrep(const HPolytope& p);

// Unit-norm rows, duplicates merged, redundant rows removed (removing any
// remaining row strictly enlarges the set). Throws Infeasible on an empty
// intersection.
HPolytope canonicalize_hrep(const HPolytope& p);

bool hrep_is_empty(const HPolytope& p);
bool hrep_is_bounded(const HPolytope& p);

// Hull vertices of a zonotope (sign-pattern enumeration; generator count
// capped at 20).
VPolytope zonotope_vertices(const Zonotope& z);

// --- set algebra ------------------------------------------------------------

Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Zonotope minkowski_sum(const Zonotope& p, const Zonotope& q);

// {x : x (+) q is contained in p}. May return the empty value; that is the
// meaningful "deficit" outcome, not an error.
Polytope pontryagin_diff(const Polytope& p, const Polytope& q);

Polytope intersect(const Polytope& p, const Polytope& q);

// q subset of p, tested vertex-against-halfspace within tolerance().
bool contains(const Polytope& p, const Polytope& q);
bool contains_point(const Polytope& p, const Eigen::VectorXd& x);

// Lebesgue volume (0 for degenerate/lower-dimensional sets).
double volume(const Polytope& p);

// max_{x in p} d.x
double support(const Polytope& p, const Eigen::VectorXd& d);
double support(const VPolytope& p, const Eigen::VectorXd& d);
// LP-based; throws UnboundedInDirection when sup is infinite.
double support(const HPolytope& p, const Eigen::VectorXd& d);

// Image {M x + t : x in p}.
Polytope affine_image(const Polytope& p, const Eigen::MatrixXd& M,
                      const Eigen::VectorXd& t);
Polytope translate(const Polytope& p, const Eigen::VectorXd& t);

}  // namespace flexcube::geom
