#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "flexcube/geom/lp.hpp"
#include "flexcube/geom/tolerance.hpp"
#include "geom_detail.hpp"

namespace flexcube::geom::detail {

namespace {

using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::VectorXd;

Vector3d to3(const VectorXd& v) { return Vector3d(v(0), v(1), v(2)); }

}  // namespace

bool lex_less(const VectorXd& a, const VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

std::vector<VectorXd> dedup_sorted(std::vector<VectorXd> pts) {
  const double eps = tolerance();
  std::vector<VectorXd> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : out) {
      if ((p - q).lpNorm<Eigen::Infinity>() <= eps) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

AffineBasis affine_hull(const std::vector<VectorXd>& pts) {
  const double eps = tolerance();
  const int d = static_cast<int>(pts.front().size());
  const int n = static_cast<int>(pts.size());

  AffineBasis ab;
  ab.origin = VectorXd::Zero(d);
  for (const auto& p : pts) ab.origin += p;
  ab.origin /= n;

  if (n == 1) {
    ab.rank = 0;
    ab.basis = MatrixXd(d, 0);
    ab.complement = MatrixXd::Identity(d, d);
    return ab;
  }

  MatrixXd M(n, d);
  for (int i = 0; i < n; ++i) M.row(i) = (pts[i] - ab.origin).transpose();
  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeFullV);
  const MatrixXd& V = svd.matrixV();

  // A direction belongs to the hull iff the cloud actually extends along it.
  int rank = 0;
  for (int j = 0; j < d; ++j) {
    const double extent = (M * V.col(j)).lpNorm<Eigen::Infinity>();
    if (extent > eps)
      ++rank;
    else
      break;  // singular values are sorted, extents shrink with them
  }
  ab.rank = rank;
  ab.basis = V.leftCols(rank);
  ab.complement = V.rightCols(d - rank);
  return ab;
}

std::vector<int> hull2_cycle(const std::vector<VectorXd>& pts) {
  const double eps_area = tolerance();
  const int n = static_cast<int>(pts.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return lex_less(pts[a], pts[b]); });

  auto cross = [&](int o, int a, int b) {
    const double ox = pts[o](0), oy = pts[o](1);
    return (pts[a](0) - ox) * (pts[b](1) - oy) -
           (pts[a](1) - oy) * (pts[b](0) - ox);
  };

  std::vector<int> h(2 * n);
  int k = 0;
  for (int ii = 0; ii < n; ++ii) {  // lower chain
    const int i = idx[ii];
    while (k >= 2 && cross(h[k - 2], h[k - 1], i) <= eps_area) --k;
    h[k++] = i;
  }
  const int lower = k + 1;
  for (int ii = n - 2; ii >= 0; --ii) {  // upper chain
    const int i = idx[ii];
    while (k >= lower && cross(h[k - 2], h[k - 1], i) <= eps_area) --k;
    h[k++] = i;
  }
  h.resize(k - 1);  // last point equals the first
  return h;         // CCW
}

namespace {

// ---------------------------------------------------------------------------
// 3-D quickhull. Output is triangles; callers merge coplanar ones. On any
// numerical anomaly the caller falls back to the exhaustive triple scan.
// ---------------------------------------------------------------------------

struct QFace {
  int a, b, c;
  Vector3d n;  // unit, outward
  double d;    // n.x <= d
  std::vector<int> outside;
  bool alive = true;
};

struct TriFacet {
  Vector3d n;
  double d;
  int a, b, c;
};

bool quickhull3(const std::vector<VectorXd>& pts, std::vector<TriFacet>* out) {
  const double eps = tolerance();
  const int n = static_cast<int>(pts.size());
  if (n < 4) return false;

  // Initial tetrahedron: spread pair, then farthest from line, then plane.
  int i0 = 0, i1 = 0;
  {
    double best = -1.0;
    int lo[3], hi[3];
    for (int dimi = 0; dimi < 3; ++dimi) {
      lo[dimi] = hi[dimi] = 0;
      for (int a = 1; a < n; ++a) {
        if (pts[a](dimi) < pts[lo[dimi]](dimi)) lo[dimi] = a;
        if (pts[a](dimi) > pts[hi[dimi]](dimi)) hi[dimi] = a;
      }
    }
    for (int da = 0; da < 3; ++da) {
      const double span = (pts[hi[da]] - pts[lo[da]]).norm();
      if (span > best) {
        best = span;
        i0 = lo[da];
        i1 = hi[da];
      }
    }
    if (best <= eps) return false;
  }
  const Vector3d p0 = to3(pts[i0]), p1 = to3(pts[i1]);
  const Vector3d dir = (p1 - p0).normalized();

  int i2 = -1;
  double best2 = eps;
  for (int a = 0; a < n; ++a) {
    const Vector3d w = to3(pts[a]) - p0;
    const double dist = (w - w.dot(dir) * dir).norm();
    if (dist > best2) {
      best2 = dist;
      i2 = a;
    }
  }
  if (i2 < 0) return false;
  const Vector3d p2 = to3(pts[i2]);
  Vector3d nrm = (p1 - p0).cross(p2 - p0).normalized();

  int i3 = -1;
  double best3 = eps;
  for (int a = 0; a < n; ++a) {
    const double dist = std::abs(nrm.dot(to3(pts[a]) - p0));
    if (dist > best3) {
      best3 = dist;
      i3 = a;
    }
  }
  if (i3 < 0) return false;

  const Vector3d interior = 0.25 * (p0 + p1 + p2 + to3(pts[i3]));

  std::vector<QFace> faces;
  auto make_face = [&](int a, int b, int c) -> bool {
    QFace f;
    f.a = a;
    f.b = b;
    f.c = c;
    const Vector3d va = to3(pts[a]);
    Vector3d nn = (to3(pts[b]) - va).cross(to3(pts[c]) - va);
    const double len = nn.norm();
    if (len <= 1e-14) return false;  // degenerate sliver: abort to fallback
    nn /= len;
    double dd = nn.dot(va);
    if (nn.dot(interior) > dd) {  // orient outward
      nn = -nn;
      dd = -dd;
      std::swap(f.b, f.c);
    }
    f.n = nn;
    f.d = dd;
    faces.push_back(std::move(f));
    return true;
  };

  if (!make_face(i0, i1, i2)) return false;
  if (!make_face(i0, i1, i3)) return false;
  if (!make_face(i0, i2, i3)) return false;
  if (!make_face(i1, i2, i3)) return false;

  for (int a = 0; a < n; ++a) {
    if (a == i0 || a == i1 || a == i2 || a == i3) continue;
    for (auto& f : faces) {
      if (f.n.dot(to3(pts[a])) > f.d + eps) {
        f.outside.push_back(a);
        break;
      }
    }
  }

  for (size_t iter = 0; iter < 4096; ++iter) {
    int fi = -1;
    for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
      if (faces[i].alive && !faces[i].outside.empty()) {
        fi = i;
        break;
      }
    }
    if (fi < 0) break;  // hull complete

    // Farthest outside point of that face.
    int p = -1;
    double far = -1.0;
    for (int a : faces[fi].outside) {
      const double dist = faces[fi].n.dot(to3(pts[a])) - faces[fi].d;
      if (dist > far) {
        far = dist;
        p = a;
      }
    }
    const Vector3d pp = to3(pts[p]);

    std::vector<int> visible;
    for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
      if (faces[i].alive && faces[i].n.dot(pp) > faces[i].d + eps)
        visible.push_back(i);
    }
    if (visible.empty()) return false;  // inconsistent tolerance state

    // Horizon: directed edges of visible faces whose reverse is not visible.
    std::set<std::pair<int, int>> vis_edges;
    for (int i : visible) {
      const QFace& f = faces[i];
      vis_edges.insert({f.a, f.b});
      vis_edges.insert({f.b, f.c});
      vis_edges.insert({f.c, f.a});
    }
    std::vector<std::pair<int, int>> horizon;
    for (const auto& e : vis_edges) {
      if (!vis_edges.count({e.second, e.first})) horizon.push_back(e);
    }
    if (horizon.empty()) return false;

    std::vector<int> orphan;
    for (int i : visible) {
      faces[i].alive = false;
      for (int a : faces[i].outside)
        if (a != p) orphan.push_back(a);
      faces[i].outside.clear();
    }

    const int first_new = static_cast<int>(faces.size());
    for (const auto& e : horizon) {
      if (!make_face(e.first, e.second, p)) return false;
    }
    // Orphans may sit outside faces that survived, not only the new ones.
    for (int a : orphan) {
      bool placed = false;
      for (int i = first_new; i < static_cast<int>(faces.size()) && !placed;
           ++i) {
        if (faces[i].n.dot(to3(pts[a])) > faces[i].d + eps) {
          faces[i].outside.push_back(a);
          placed = true;
        }
      }
      for (int i = 0; i < first_new && !placed; ++i) {
        if (faces[i].alive && faces[i].n.dot(to3(pts[a])) > faces[i].d + eps) {
          faces[i].outside.push_back(a);
          placed = true;
        }
      }
    }
  }

  out->clear();
  for (const auto& f : faces) {
    if (!f.alive) continue;
    if (!f.outside.empty()) return false;  // ran out of iterations
    out->push_back({f.n, f.d, f.a, f.b, f.c});
  }

  // Verification gate: every point inside every plane, else fall back.
  for (const auto& f : *out) {
    for (int a = 0; a < n; ++a) {
      if (f.n.dot(to3(pts[a])) > f.d + eps) return false;
    }
  }
  return !out->empty();
}

// Hyperplane through a point subset via its affine hull; nullptr-safe refit
// used both by the brute-force path and by coplanar merging.
bool fit_plane(const std::vector<VectorXd>& pts, const std::vector<int>& ids,
               VectorXd* normal, double* offset) {
  std::vector<VectorXd> sub;
  sub.reserve(ids.size());
  for (int i : ids) sub.push_back(pts[i]);
  const AffineBasis ab = affine_hull(sub);
  const int d = static_cast<int>(pts.front().size());
  if (ab.rank != d - 1) return false;
  *normal = ab.complement.col(0);
  *offset = normal->dot(ab.origin);
  return true;
}

long combinations_capped(int n, int k, long cap) {
  if (k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > cap) return cap + 1;
  }
  return r;
}

std::vector<RawFacet> brute_facets(const std::vector<VectorXd>& pts, int dim) {
  const double eps = tolerance();
  const int n = static_cast<int>(pts.size());
  std::vector<RawFacet> out;
  if (n < dim) return out;
  constexpr long kCap = 3'000'000;
  if (combinations_capped(n, dim, kCap) > kCap)
    throw GeomError(GeomError::Code::DimensionTooHigh,
                    "facet enumeration: too many point subsets");

  // Unique facets keyed by their full support set.
  std::map<std::vector<int>, RawFacet> facets;

  std::vector<int> comb(dim);
  std::iota(comb.begin(), comb.end(), 0);
  while (true) {
    VectorXd nrm;
    double off;
    if (fit_plane(pts, comb, &nrm, &off)) {
      bool any_above = false, any_below = false;
      for (int a = 0; a < n; ++a) {
        const double s = nrm.dot(pts[a]) - off;
        if (s > eps) any_above = true;
        if (s < -eps) any_below = true;
        if (any_above && any_below) break;
      }
      if (!(any_above && any_below)) {
        if (any_above) {  // flip so the cloud sits below
          nrm = -nrm;
          off = -off;
        }
        std::vector<int> support;
        for (int a = 0; a < n; ++a) {
          if (std::abs(nrm.dot(pts[a]) - off) <= eps) support.push_back(a);
        }
        auto it = facets.find(support);
        if (it == facets.end()) {
          RawFacet f;
          // Refit over the whole support set for a stable plane.
          VectorXd n2 = nrm;
          double o2 = off;
          if (support.size() > static_cast<size_t>(dim)) {
            if (fit_plane(pts, support, &n2, &o2)) {
              if (n2.dot(nrm) < 0) {
                n2 = -n2;
                o2 = -o2;
              }
            } else {
              n2 = nrm;
              o2 = off;
            }
          }
          f.normal = n2;
          f.offset = o2;
          f.support = support;
          facets.emplace(std::move(support), std::move(f));
        }
      }
    }
    // next combination
    int i = dim - 1;
    while (i >= 0 && comb[i] == n - dim + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < dim; ++j) comb[j] = comb[j - 1] + 1;
  }

  out.reserve(facets.size());
  for (auto& [key, f] : facets) out.push_back(std::move(f));
  return out;
}

// Order a coplanar vertex group CCW (seen from outside along +normal) and
// drop collinear boundary points.
std::vector<int> polygon_cycle(const std::vector<VectorXd>& pts,
                               std::vector<int> ids, const Vector3d& n) {
  const double eps = tolerance();
  Vector3d e1 = n.cross(Vector3d::UnitX());
  if (e1.norm() < 0.1) e1 = n.cross(Vector3d::UnitY());
  e1.normalize();
  const Vector3d e2 = n.cross(e1);  // (e1, e2, n) right-handed => CCW cycle
  // note: e1 x e2 = e1 x (n x e1) = n, so angles run CCW about +n

  Vector3d c = Vector3d::Zero();
  for (int i : ids) c += to3(pts[i]);
  c /= static_cast<double>(ids.size());

  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const Vector3d va = to3(pts[a]) - c, vb = to3(pts[b]) - c;
    const double ang_a = std::atan2(va.dot(e2), va.dot(e1));
    const double ang_b = std::atan2(vb.dot(e2), vb.dot(e1));
    if (ang_a != ang_b) return ang_a < ang_b;
    return a < b;
  });

  // Peel collinear points until stable.
  bool changed = true;
  while (changed && ids.size() > 3) {
    changed = false;
    for (size_t i = 0; i < ids.size(); ++i) {
      const size_t prev = (i + ids.size() - 1) % ids.size();
      const size_t next = (i + 1) % ids.size();
      const Vector3d u = to3(pts[ids[i]]) - to3(pts[ids[prev]]);
      const Vector3d v = to3(pts[ids[next]]) - to3(pts[ids[i]]);
      if (u.cross(v).dot(n) <= eps) {
        ids.erase(ids.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }

  // Deterministic start: smallest vertex index first.
  const auto mn = std::min_element(ids.begin(), ids.end());
  std::rotate(ids.begin(), mn, ids.end());
  return ids;
}

std::vector<RawFacet> hull3(const std::vector<VectorXd>& pts) {
  const double eps = tolerance();
  std::vector<TriFacet> tris;
  if (!quickhull3(pts, &tris)) {
    // Exhaustive fallback: always correct at this scale.
    auto raw = brute_facets(pts, 3);
    for (auto& f : raw) {
      f.cycle = polygon_cycle(pts, f.support, to3(f.normal));
    }
    return raw;
  }

  // Merge coplanar triangles into polygon facets.
  struct Group {
    Vector3d n;
    double d;
    std::set<int> verts;
  };
  std::vector<Group> groups;
  for (const auto& t : tris) {
    bool merged = false;
    for (auto& g : groups) {
      if (g.n.dot(t.n) >= 1.0 - 1e-9 && std::abs(g.d - t.d) <= 10 * eps) {
        // Accept only if every vertex stays on the joint plane.
        bool ok = true;
        for (int v : {t.a, t.b, t.c}) {
          if (std::abs(g.n.dot(to3(pts[v])) - g.d) > eps) {
            ok = false;
            break;
          }
        }
        if (ok) {
          g.verts.insert(t.a);
          g.verts.insert(t.b);
          g.verts.insert(t.c);
          merged = true;
          break;
        }
      }
    }
    if (!merged) groups.push_back({t.n, t.d, {t.a, t.b, t.c}});
  }

  std::vector<RawFacet> out;
  out.reserve(groups.size());
  for (const auto& g : groups) {
    RawFacet f;
    std::vector<int> ids(g.verts.begin(), g.verts.end());
    f.cycle = polygon_cycle(pts, ids, g.n);
    f.normal = VectorXd(3);
    f.normal << g.n(0), g.n(1), g.n(2);
    // Refit the offset against the retained corners.
    double off = 0.0;
    for (int v : f.cycle) off += g.n.dot(to3(pts[v]));
    f.offset = off / static_cast<double>(f.cycle.size());
    f.support.assign(ids.begin(), ids.end());
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::vector<RawFacet> hull_facets(const std::vector<VectorXd>& pts, int dim) {
  switch (dim) {
    case 1: {
      int lo = 0, hi = 0;
      for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
        if (pts[i](0) < pts[lo](0)) lo = i;
        if (pts[i](0) > pts[hi](0)) hi = i;
      }
      RawFacet up, dn;
      up.normal = VectorXd::Constant(1, 1.0);
      up.offset = pts[hi](0);
      up.support = {hi};
      up.cycle = {hi};
      dn.normal = VectorXd::Constant(1, -1.0);
      dn.offset = -pts[lo](0);
      dn.support = {lo};
      dn.cycle = {lo};
      return {dn, up};
    }
    case 2: {
      const auto cyc = hull2_cycle(pts);
      std::vector<RawFacet> out;
      const double eps = tolerance();
      const int m = static_cast<int>(cyc.size());
      for (int i = 0; i < m; ++i) {
        const int a = cyc[i], b = cyc[(i + 1) % m];
        Eigen::Vector2d t(pts[b](0) - pts[a](0), pts[b](1) - pts[a](1));
        Eigen::Vector2d nrm(t(1), -t(0));  // outward for a CCW cycle
        nrm.normalize();
        RawFacet f;
        f.normal = VectorXd(2);
        f.normal << nrm(0), nrm(1);
        f.offset = f.normal.dot(pts[a]);
        f.cycle = {a, b};
        for (int j = 0; j < static_cast<int>(pts.size()); ++j) {
          if (std::abs(f.normal.dot(pts[j]) - f.offset) <= eps)
            f.support.push_back(j);
        }
        out.push_back(std::move(f));
      }
      return out;
    }
    case 3:
      return hull3(pts);
    default:
      return brute_facets(pts, dim);
  }
}

std::vector<int> extreme_indices(const std::vector<VectorXd>& pts, int dim) {
  const int n = static_cast<int>(pts.size());
  if (n <= 1) return n == 1 ? std::vector<int>{0} : std::vector<int>{};

  std::set<int> keep;
  if (dim == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < n; ++i) {
      if (pts[i](0) < pts[lo](0)) lo = i;
      if (pts[i](0) > pts[hi](0)) hi = i;
    }
    keep.insert(lo);
    keep.insert(hi);
  } else if (dim <= 3) {
    for (const auto& f : hull_facets(pts, dim))
      for (int v : f.cycle) keep.insert(v);
  } else {
    // LP filter: x_i extreme iff it is not a convex combination of the rest.
    const double eps = tolerance();
    for (int i = 0; i < n; ++i) {
      // Feasibility of sum_j l_j p_j = p_i, sum l_j = 1, l >= 0 (j != i).
      const int m = n - 1;
      Eigen::MatrixXd A(2 * (dim + 1) + m, m);
      Eigen::VectorXd b(2 * (dim + 1) + m);
      int row = 0;
      for (int k = 0; k < dim; ++k) {
        int col = 0;
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          A(row, col) = pts[j](k);
          A(row + 1, col) = -pts[j](k);
          ++col;
        }
        b(row) = pts[i](k) + eps;
        b(row + 1) = -pts[i](k) + eps;
        row += 2;
      }
      A.row(row).setOnes();
      b(row) = 1.0 + eps;
      A.row(row + 1).setConstant(-1.0);
      b(row + 1) = -1.0 + eps;
      row += 2;
      for (int j = 0; j < m; ++j, ++row) {
        A.row(row).setZero();
        A(row, j) = -1.0;
        b(row) = 0.0;
      }
      const auto r = solve_lp(A, b, Eigen::VectorXd::Zero(m));
      if (r.status != LpStatus::Optimal) keep.insert(i);
    }
  }
  return {keep.begin(), keep.end()};
}

}  // namespace flexcube::geom::detail
