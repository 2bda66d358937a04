#include <algorithm>
#include <cmath>
#include <set>

#include "flexcube/geom/distance.hpp"
#include "flexcube/geom/facets.hpp"
#include "flexcube/geom/tolerance.hpp"
#include "geom_detail.hpp"

namespace flexcube::geom {

using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;

FacetHull facet_hull(const VPolytope& p) {
  if (p.vertices.empty())
    throw GeomError(GeomError::Code::EmptyInput, "facet_hull: no vertices");
  if (p.dim > 3)
    throw GeomError(GeomError::Code::DimensionTooHigh,
                    "facet_hull supports dimensions 1-3");

  FacetHull fh;
  fh.poly = p;
  const auto ab = detail::affine_hull(p.vertices);
  fh.affine_rank = ab.rank;

  if (ab.rank == 0) return fh;

  if (ab.rank == p.dim) {
    for (const auto& rf : detail::hull_facets(p.vertices, p.dim)) {
      Facet f;
      f.normal = rf.normal;
      f.offset = rf.offset;
      f.cycle = rf.cycle;
      fh.facets.push_back(std::move(f));
    }
    return fh;
  }

  if (p.dim == 3 && ab.rank == 2) {
    // Flat polygon: emit both oriented copies so the facet list closes up.
    std::vector<VectorXd> proj;
    proj.reserve(p.vertices.size());
    for (const auto& v : p.vertices)
      proj.push_back(ab.basis.transpose() * (v - ab.origin));
    auto cyc = detail::hull2_cycle(proj);

    const Vector3d b1(ab.basis(0, 0), ab.basis(1, 0), ab.basis(2, 0));
    const Vector3d b2(ab.basis(0, 1), ab.basis(1, 1), ab.basis(2, 1));
    VectorXd n = ab.complement.col(0);
    const Vector3d n3(n(0), n(1), n(2));
    if (b1.cross(b2).dot(n3) < 0) std::reverse(cyc.begin(), cyc.end());
    // cyc is now CCW seen from the +n side.

    Facet top;
    top.normal = n;
    top.offset = n.dot(ab.origin);
    top.cycle = cyc;
    Facet bottom;
    bottom.normal = -n;
    bottom.offset = -top.offset;
    bottom.cycle = cyc;
    std::reverse(bottom.cycle.begin(), bottom.cycle.end());
    fh.facets.push_back(std::move(top));
    fh.facets.push_back(std::move(bottom));
  }
  // rank-1 segments and flat sets in 2-D carry no facet structure; callers
  // branch on affine_rank.
  return fh;
}

namespace {

double segment_distance(const VectorXd& a, const VectorXd& b,
                        const VectorXd& x) {
  const VectorXd d = b - a;
  const double len2 = d.squaredNorm();
  if (len2 <= 1e-30) return (x - a).norm();
  const double t = std::clamp((x - a).dot(d) / len2, 0.0, 1.0);
  return (x - (a + t * d)).norm();
}

// Distance within the plane of a CCW convex polygon given 2-D coordinates.
double polygon_distance_2d(const std::vector<Vector2d>& poly,
                           const Vector2d& x) {
  const int m = static_cast<int>(poly.size());
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    const Vector2d& u = poly[i];
    const Vector2d& v = poly[(i + 1) % m];
    const Vector2d e = v - u;
    if (e.x() * (x.y() - u.y()) - e.y() * (x.x() - u.x()) < 0) inside = false;
    const double len2 = e.squaredNorm();
    const double t =
        len2 <= 1e-30 ? 0.0 : std::clamp((x - u).dot(e) / len2, 0.0, 1.0);
    best = std::min(best, (x - (u + t * e)).norm());
  }
  return inside ? 0.0 : best;
}

}  // namespace

double distance_to(const Polytope& p, const VectorXd& x) {
  if (p.is_empty())
    throw GeomError(GeomError::Code::EmptyInput, "distance to empty polytope");
  if (p.dim() != static_cast<int>(x.size()))
    throw GeomError(GeomError::Code::DimensionMismatch, "distance_to");
  if (p.dim() > 3)
    throw GeomError(GeomError::Code::DimensionTooHigh,
                    "distance_to supports dimensions 1-3");
  if (contains_point(p, x)) return 0.0;

  const auto& verts = p.vrep().vertices;
  if (p.dim() == 1) {
    double lo = verts.front()(0), hi = verts.back()(0);
    return x(0) < lo ? lo - x(0) : x(0) - hi;
  }

  const auto fh = facet_hull(p.vrep());

  if (fh.affine_rank == 0) return (x - verts.front()).norm();
  if (fh.affine_rank == 1)
    return segment_distance(verts.front(), verts.back(), x);

  if (p.dim() == 2) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& f : fh.facets)
      best = std::min(best,
                      segment_distance(verts[f.cycle[0]], verts[f.cycle[1]], x));
    return best;
  }

  // 3-D: nearest boundary feature. Facet interiors first, then all edges
  // (which subsume the vertices as clamped endpoints).
  double best = std::numeric_limits<double>::infinity();
  std::set<std::pair<int, int>> edges;
  for (const auto& f : fh.facets) {
    const int m = static_cast<int>(f.cycle.size());
    for (int i = 0; i < m; ++i) {
      const int a = f.cycle[i], b = f.cycle[(i + 1) % m];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
    const double s = f.normal.dot(x) - f.offset;
    if (s <= 0) continue;  // not visible from this side
    const VectorXd foot = x - s * f.normal;
    // In-plane containment test against the facet polygon.
    const auto ab = detail::affine_hull([&] {
      std::vector<VectorXd> fp;
      for (int i : f.cycle) fp.push_back(verts[i]);
      return fp;
    }());
    if (ab.rank < 2) continue;
    std::vector<Vector2d> poly2;
    poly2.reserve(m);
    for (int i : f.cycle) {
      const VectorXd t = ab.basis.transpose() * (verts[i] - ab.origin);
      poly2.emplace_back(t(0), t(1));
    }
    const VectorXd tf = ab.basis.transpose() * (foot - ab.origin);
    // Winding of the projected cycle may be CW; flip for the inside test.
    double a2 = 0.0;
    for (int i = 0; i < m; ++i) {
      const auto& u = poly2[i];
      const auto& v = poly2[(i + 1) % m];
      a2 += u.x() * v.y() - v.x() * u.y();
    }
    auto poly = poly2;
    if (a2 < 0) std::reverse(poly.begin(), poly.end());
    if (polygon_distance_2d(poly, Vector2d(tf(0), tf(1))) == 0.0)
      best = std::min(best, s);
  }
  for (const auto& e : edges)
    best = std::min(best, segment_distance(verts[e.first], verts[e.second], x));
  return best;
}

double hausdorff(const Polytope& p, const Polytope& q) {
  if (p.is_empty() && q.is_empty()) return 0.0;
  if (p.is_empty() || q.is_empty())
    throw GeomError(GeomError::Code::EmptyInput,
                    "hausdorff distance to empty polytope");
  double h = 0.0;
  for (const auto& v : p.vrep().vertices) h = std::max(h, distance_to(q, v));
  for (const auto& v : q.vrep().vertices) h = std::max(h, distance_to(p, v));
  return h;
}

}  // namespace flexcube::geom
