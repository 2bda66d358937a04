#include "flexcube/geom/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flexcube/geom/facets.hpp"
#include "flexcube/geom/lp.hpp"
#include "flexcube/geom/tolerance.hpp"
#include "geom_detail.hpp"

namespace flexcube::geom {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr int kMaxDim = 6;
constexpr long kMaxCombinations = 3'000'000;

void check_dim(int dim, const char* where) {
  if (dim < 1 || dim > kMaxDim)
    throw GeomError(GeomError::Code::DimensionTooHigh,
                    std::string(where) + ": dimension must be in [1, 6]");
}

void check_same_dim(int a, int b, const char* where) {
  if (a != b)
    throw GeomError(GeomError::Code::DimensionMismatch,
                    std::string(where) + ": operand dimensions differ");
}

bool hrep_row_less(const VectorXd& na, double ba, const VectorXd& nb,
                   double bb) {
  if (detail::lex_less(na, nb)) return true;
  if (detail::lex_less(nb, na)) return false;
  return ba < bb;
}

HPolytope sort_rows(HPolytope h) {
  const int m = h.facets();
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    return hrep_row_less(h.A.row(i).transpose(), h.b(i),
                         h.A.row(j).transpose(), h.b(j));
  });
  HPolytope out;
  out.A.resize(m, h.dim());
  out.b.resize(m);
  for (int i = 0; i < m; ++i) {
    out.A.row(i) = h.A.row(idx[i]);
    out.b(i) = h.b(idx[i]);
  }
  return out;
}

long combinations(int n, int k) {
  if (k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > kMaxCombinations) return kMaxCombinations + 1;
  }
  return r;
}

// Shared builder behind from_vertices / vrep_to_hrep: canonical vertex set
// plus the facet H-rep, with affine-hull equality pairs when the hull is
// lower-dimensional.
struct PointHull {
  std::vector<VectorXd> vertices;  // extreme, lex-sorted
  HPolytope h;
};

PointHull build_point_hull(std::vector<VectorXd> raw) {
  if (raw.empty())
    throw GeomError(GeomError::Code::EmptyInput, "empty vertex list");
  const int d = static_cast<int>(raw.front().size());
  check_dim(d, "vertex hull");
  for (const auto& p : raw) {
    if (static_cast<int>(p.size()) != d)
      throw GeomError(GeomError::Code::DimensionMismatch,
                      "inconsistent vertex dimensions");
  }

  const auto pts = detail::dedup_sorted(std::move(raw));
  const auto ab = detail::affine_hull(pts);

  std::vector<VectorXd> normals;
  std::vector<double> offsets;
  for (int j = 0; j < ab.complement.cols(); ++j) {
    const VectorXd u = ab.complement.col(j);
    const double c = u.dot(ab.origin);
    normals.push_back(u);
    offsets.push_back(c);
    normals.push_back(-u);
    offsets.push_back(-c);
  }

  PointHull out;
  if (ab.rank == 0) {
    out.vertices = {ab.origin};
  } else {
    std::vector<VectorXd> tpts;
    tpts.reserve(pts.size());
    for (const auto& p : pts)
      tpts.push_back(ab.basis.transpose() * (p - ab.origin));

    std::vector<int> keep;
    if (ab.rank <= 3) {
      const auto facets = detail::hull_facets(tpts, ab.rank);
      std::vector<char> mark(pts.size(), 0);
      for (const auto& f : facets) {
        for (int v : f.cycle) mark[v] = 1;
        const VectorXd n = ab.basis * f.normal;
        normals.push_back(n);
        offsets.push_back(f.offset + n.dot(ab.origin));
      }
      for (int i = 0; i < static_cast<int>(pts.size()); ++i)
        if (mark[i]) keep.push_back(i);
    } else {
      keep = detail::extreme_indices(tpts, ab.rank);
      for (const auto& f : detail::hull_facets(tpts, ab.rank)) {
        const VectorXd n = ab.basis * f.normal;
        normals.push_back(n);
        offsets.push_back(f.offset + n.dot(ab.origin));
      }
    }
    for (int i : keep) out.vertices.push_back(pts[i]);
    std::sort(out.vertices.begin(), out.vertices.end(), detail::lex_less);
  }

  HPolytope h;
  h.A.resize(static_cast<int>(normals.size()), d);
  h.b.resize(static_cast<int>(normals.size()));
  for (int i = 0; i < static_cast<int>(normals.size()); ++i) {
    h.A.row(i) = normals[i].transpose();
    h.b(i) = offsets[i];
  }
  out.h = sort_rows(std::move(h));
  return out;
}

}  // namespace

// --- HPolytope queries -------------------------------------------------------

bool hrep_is_empty(const HPolytope& p) {
  const auto r = solve_lp(p.A, p.b, VectorXd::Zero(p.dim()));
  return r.status == LpStatus::Infeasible;
}

bool hrep_is_bounded(const HPolytope& p) {
  for (int i = 0; i < p.dim(); ++i) {
    for (double sgn : {1.0, -1.0}) {
      VectorXd c = VectorXd::Zero(p.dim());
      c(i) = sgn;
      const auto r = solve_lp(p.A, p.b, c);
      if (r.status == LpStatus::Unbounded) return false;
      if (r.status == LpStatus::Infeasible) return true;  // empty: bounded
    }
  }
  return true;
}

HPolytope canonicalize_hrep(const HPolytope& p) {
  const double eps = tolerance();
  const int d = p.dim();
  check_dim(d, "canonicalize");

  // Unit rows; drop vacuous ones.
  std::vector<VectorXd> normals;
  std::vector<double> offsets;
  for (int i = 0; i < p.facets(); ++i) {
    const double norm = p.A.row(i).norm();
    if (norm <= 1e-14) {
      if (p.b(i) < -eps)
        throw GeomError(GeomError::Code::Infeasible,
                        "contradictory zero-normal row");
      continue;
    }
    normals.push_back(p.A.row(i).transpose() / norm);
    offsets.push_back(p.b(i) / norm);
  }

  // Merge duplicate directions, keeping the tighter offset.
  std::vector<VectorXd> n2;
  std::vector<double> b2;
  for (size_t i = 0; i < normals.size(); ++i) {
    bool dup = false;
    for (size_t j = 0; j < n2.size(); ++j) {
      if (normals[i].dot(n2[j]) >= 1.0 - 1e-12) {
        b2[j] = std::min(b2[j], offsets[i]);
        dup = true;
        break;
      }
    }
    if (!dup) {
      n2.push_back(normals[i]);
      b2.push_back(offsets[i]);
    }
  }

  auto assemble = [&](const std::vector<char>& alive) {
    int m = 0;
    for (char a : alive) m += a;
    HPolytope h;
    h.A.resize(m, d);
    h.b.resize(m);
    int r = 0;
    for (size_t i = 0; i < n2.size(); ++i) {
      if (alive[i]) {
        h.A.row(r) = n2[i].transpose();
        h.b(r) = b2[i];
        ++r;
      }
    }
    return h;
  };

  std::vector<char> alive(n2.size(), 1);
  if (hrep_is_empty(assemble(alive)))
    throw GeomError(GeomError::Code::Infeasible, "empty halfspace intersection");

  // Row i is redundant iff maximizing its normal over the others cannot
  // exceed its own offset. The relaxed copy of row i keeps the LP bounded.
  for (size_t i = 0; i < n2.size(); ++i) {
    int m = 0;
    for (char a : alive) m += a;
    if (m <= 1) break;
    MatrixXd A(m, d);
    VectorXd b(m);
    int r = 0;
    for (size_t j = 0; j < n2.size(); ++j) {
      if (!alive[j]) continue;
      A.row(r) = n2[j].transpose();
      b(r) = (j == i) ? b2[j] + 1.0 : b2[j];
      ++r;
    }
    const auto res = solve_lp(A, b, n2[i]);
    if (res.status == LpStatus::Optimal && res.value <= b2[i] + eps)
      alive[i] = 0;
  }

  return sort_rows(assemble(alive));
}

VPolytope hrep_to_vrep(const HPolytope& p) {
  const double eps = tolerance();
  const int d = p.dim();
  check_dim(d, "hrep_to_vrep");

  const HPolytope h = canonicalize_hrep(p);  // throws Infeasible when empty
  if (!hrep_is_bounded(h))
    throw GeomError(GeomError::Code::Unbounded,
                    "vertex enumeration needs a bounded polytope");

  const int m = h.facets();
  if (combinations(m, d) > kMaxCombinations)
    throw GeomError(GeomError::Code::DimensionTooHigh,
                    "too many halfspace combinations");

  std::vector<VectorXd> cand;
  std::vector<int> comb(d);
  std::iota(comb.begin(), comb.end(), 0);
  if (m >= d) {
    while (true) {
      MatrixXd As(d, d);
      VectorXd bs(d);
      for (int i = 0; i < d; ++i) {
        As.row(i) = h.A.row(comb[i]);
        bs(i) = h.b(comb[i]);
      }
      Eigen::FullPivLU<MatrixXd> lu(As);
      lu.setThreshold(1e-10);
      if (lu.rank() == d) {
        VectorXd x = lu.solve(bs);
        x += lu.solve(bs - As * x);  // one refinement pass
        if (((h.A * x - h.b).array() <= eps).all()) cand.push_back(std::move(x));
      }
      int i = d - 1;
      while (i >= 0 && comb[i] == m - d + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
    }
  }

  if (cand.empty())
    throw GeomError(GeomError::Code::Infeasible,
                    "no vertices found for feasible bounded system");

  VPolytope v;
  v.dim = d;
  v.vertices = detail::dedup_sorted(std::move(cand));
  return v;
}

HPolytope vrep_to_hrep(const VPolytope& p) {
  if (p.vertices.empty())
    throw GeomError(GeomError::Code::EmptyInput, "vrep_to_hrep: no vertices");
  return build_point_hull(p.vertices).h;
}

VPolytope zonotope_vertices(const Zonotope& z) {
  const int g = static_cast<int>(z.generators.size());
  if (g > 20)
    throw GeomError(GeomError::Code::DimensionTooHigh,
                    "zonotope sign enumeration capped at 20 generators");
  std::vector<VectorXd> pts;
  pts.reserve(1u << std::max(0, g));
  const unsigned patterns = 1u << g;
  for (unsigned bits = 0; bits < patterns; ++bits) {
    VectorXd x = z.center;
    for (int i = 0; i < g; ++i)
      x += ((bits >> i) & 1u) ? z.generators[i] : -z.generators[i];
    pts.push_back(std::move(x));
  }
  const auto hull = build_point_hull(std::move(pts));
  VPolytope v;
  v.dim = z.dim();
  v.vertices = hull.vertices;
  return v;
}

// --- Polytope ----------------------------------------------------------------

const HPolytope& Polytope::hrep() const {
  if (empty_)
    throw GeomError(GeomError::Code::EmptyInput, "empty polytope has no H-rep");
  return h_;
}

const VPolytope& Polytope::vrep() const {
  if (empty_)
    throw GeomError(GeomError::Code::EmptyInput, "empty polytope has no V-rep");
  return v_;
}

Polytope Polytope::from_vertices(std::vector<VectorXd> pts) {
  auto hull = build_point_hull(std::move(pts));
  Polytope p;
  p.dim_ = static_cast<int>(hull.vertices.front().size());
  p.empty_ = false;
  p.v_.dim = p.dim_;
  p.v_.vertices = std::move(hull.vertices);
  p.h_ = std::move(hull.h);
  return p;
}

Polytope Polytope::from_vrep(const VPolytope& v) { return from_vertices(v.vertices); }

Polytope Polytope::from_hrep(const HPolytope& h) {
  check_dim(h.dim(), "from_hrep");
  HPolytope canon;
  try {
    canon = canonicalize_hrep(h);
  } catch (const GeomError& e) {
    if (e.code() == GeomError::Code::Infeasible) return empty_set(h.dim());
    throw;
  }
  if (!hrep_is_bounded(canon))
    throw GeomError(GeomError::Code::Unbounded, "polytope must be bounded");
  Polytope p;
  p.dim_ = h.dim();
  p.empty_ = false;
  p.v_ = hrep_to_vrep(canon);
  p.h_ = std::move(canon);
  return p;
}

Polytope Polytope::from_box(const VectorXd& lo, const VectorXd& hi) {
  const int d = static_cast<int>(lo.size());
  check_dim(d, "from_box");
  check_same_dim(d, static_cast<int>(hi.size()), "from_box");
  const double eps = tolerance();
  for (int i = 0; i < d; ++i) {
    if (lo(i) > hi(i) + eps) return empty_set(d);
  }

  Polytope p;
  p.dim_ = d;
  p.empty_ = false;

  p.h_.A.resize(2 * d, d);
  p.h_.b.resize(2 * d);
  for (int i = 0; i < d; ++i) {
    p.h_.A.row(2 * i).setZero();
    p.h_.A(2 * i, i) = -1.0;
    p.h_.b(2 * i) = -lo(i);
    p.h_.A.row(2 * i + 1).setZero();
    p.h_.A(2 * i + 1, i) = 1.0;
    p.h_.b(2 * i + 1) = hi(i);
  }
  p.h_ = sort_rows(std::move(p.h_));

  std::vector<VectorXd> corners;
  corners.reserve(1u << d);
  for (unsigned bits = 0; bits < (1u << d); ++bits) {
    VectorXd x(d);
    for (int i = 0; i < d; ++i) x(i) = ((bits >> i) & 1u) ? hi(i) : lo(i);
    corners.push_back(std::move(x));
  }
  p.v_.dim = d;
  p.v_.vertices = detail::dedup_sorted(std::move(corners));
  return p;
}

Polytope Polytope::from_zonotope(const Zonotope& z) {
  const auto v = zonotope_vertices(z);
  return from_vertices(v.vertices);
}

Polytope Polytope::point(const VectorXd& x) {
  const int d = static_cast<int>(x.size());
  check_dim(d, "point");
  Polytope p;
  p.dim_ = d;
  p.empty_ = false;
  p.v_.dim = d;
  p.v_.vertices = {x};
  p.h_.A.resize(2 * d, d);
  p.h_.b.resize(2 * d);
  for (int i = 0; i < d; ++i) {
    p.h_.A.row(2 * i).setZero();
    p.h_.A(2 * i, i) = -1.0;
    p.h_.b(2 * i) = -x(i);
    p.h_.A.row(2 * i + 1).setZero();
    p.h_.A(2 * i + 1, i) = 1.0;
    p.h_.b(2 * i + 1) = x(i);
  }
  p.h_ = sort_rows(std::move(p.h_));
  return p;
}

Polytope Polytope::empty_set(int dim) {
  check_dim(dim, "empty_set");
  Polytope p;
  p.dim_ = dim;
  p.empty_ = true;
  return p;
}

// --- set algebra -------------------------------------------------------------

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  check_same_dim(p.dim(), q.dim(), "minkowski_sum");
  if (p.is_empty() || q.is_empty()) return Polytope::empty_set(p.dim());
  std::vector<VectorXd> sums;
  sums.reserve(p.vrep().vertices.size() * q.vrep().vertices.size());
  for (const auto& a : p.vrep().vertices)
    for (const auto& b : q.vrep().vertices) sums.push_back(a + b);
  return Polytope::from_vertices(std::move(sums));
}

Zonotope minkowski_sum(const Zonotope& p, const Zonotope& q) {
  check_same_dim(p.dim(), q.dim(), "minkowski_sum");
  Zonotope z;
  z.center = p.center + q.center;
  z.generators = p.generators;
  z.generators.insert(z.generators.end(), q.generators.begin(),
                      q.generators.end());
  return z;
}

Polytope pontryagin_diff(const Polytope& p, const Polytope& q) {
  check_same_dim(p.dim(), q.dim(), "pontryagin_diff");
  if (q.is_empty())
    throw GeomError(GeomError::Code::EmptyInput,
                    "pontryagin_diff: subtrahend is empty");
  if (p.is_empty()) return Polytope::empty_set(p.dim());

  const HPolytope& h = p.hrep();
  HPolytope eroded;
  eroded.A = h.A;
  eroded.b.resize(h.facets());
  for (int i = 0; i < h.facets(); ++i)
    eroded.b(i) = h.b(i) - support(q.vrep(), h.A.row(i).transpose());
  return Polytope::from_hrep(eroded);
}

Polytope intersect(const Polytope& p, const Polytope& q) {
  check_same_dim(p.dim(), q.dim(), "intersect");
  if (p.is_empty() || q.is_empty()) return Polytope::empty_set(p.dim());
  HPolytope h;
  h.A.resize(p.hrep().facets() + q.hrep().facets(), p.dim());
  h.b.resize(h.A.rows());
  h.A << p.hrep().A, q.hrep().A;
  h.b << p.hrep().b, q.hrep().b;
  return Polytope::from_hrep(h);
}

bool contains(const Polytope& p, const Polytope& q) {
  check_same_dim(p.dim(), q.dim(), "contains");
  if (q.is_empty()) return true;
  if (p.is_empty()) return false;
  const double eps = tolerance();
  for (const auto& v : q.vrep().vertices) {
    if (((p.hrep().A * v - p.hrep().b).array() > eps).any()) return false;
  }
  return true;
}

bool contains_point(const Polytope& p, const VectorXd& x) {
  check_same_dim(p.dim(), static_cast<int>(x.size()), "contains_point");
  if (p.is_empty()) return false;
  return ((p.hrep().A * x - p.hrep().b).array() <= tolerance()).all();
}

double support(const VPolytope& p, const VectorXd& d) {
  if (p.vertices.empty())
    throw GeomError(GeomError::Code::EmptyInput, "support of empty polytope");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices) best = std::max(best, d.dot(v));
  return best;
}

double support(const Polytope& p, const VectorXd& d) {
  if (p.is_empty())
    throw GeomError(GeomError::Code::EmptyInput, "support of empty polytope");
  check_same_dim(p.dim(), static_cast<int>(d.size()), "support");
  return support(p.vrep(), d);
}

double support(const HPolytope& p, const VectorXd& d) {
  const auto r = solve_lp(p.A, p.b, d);
  if (r.status == LpStatus::Unbounded)
    throw GeomError(GeomError::Code::UnboundedInDirection,
                    "support unbounded in this direction");
  if (r.status == LpStatus::Infeasible)
    throw GeomError(GeomError::Code::Infeasible, "support of empty set");
  return r.value;
}

// --- volume ------------------------------------------------------------------

namespace {

// Lebesgue measure of conv(pts) for a full-rank cloud in dimension d.
double cloud_volume(const std::vector<VectorXd>& pts, int d) {
  if (d == 1) {
    double lo = pts.front()(0), hi = lo;
    for (const auto& p : pts) {
      lo = std::min(lo, p(0));
      hi = std::max(hi, p(0));
    }
    return hi - lo;
  }
  if (d == 2) {
    const auto cyc = detail::hull2_cycle(pts);
    double a2 = 0.0;
    for (size_t i = 0; i < cyc.size(); ++i) {
      const auto& u = pts[cyc[i]];
      const auto& v = pts[cyc[(i + 1) % cyc.size()]];
      a2 += u(0) * v(1) - v(0) * u(1);
    }
    return 0.5 * std::abs(a2);
  }

  VectorXd c = VectorXd::Zero(d);
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());

  double vol = 0.0;
  for (const auto& f : detail::hull_facets(pts, d)) {
    std::vector<VectorXd> fpts;
    fpts.reserve(f.support.size());
    for (int i : f.support) fpts.push_back(pts[i]);
    const auto ab = detail::affine_hull(fpts);
    if (ab.rank != d - 1) continue;  // degenerate sliver contributes nothing
    std::vector<VectorXd> proj;
    proj.reserve(fpts.size());
    for (const auto& p : fpts)
      proj.push_back(ab.basis.transpose() * (p - ab.origin));
    const double height = f.offset - f.normal.dot(c);
    vol += height * cloud_volume(proj, d - 1);
  }
  return vol / static_cast<double>(d);
}

}  // namespace

double volume(const Polytope& p) {
  if (p.is_empty()) return 0.0;
  const auto& verts = p.vrep().vertices;
  if (static_cast<int>(verts.size()) < p.dim() + 1) return 0.0;
  if (detail::affine_hull(verts).rank < p.dim()) return 0.0;
  return cloud_volume(verts, p.dim());
}

// --- affine maps -------------------------------------------------------------

Polytope affine_image(const Polytope& p, const MatrixXd& M, const VectorXd& t) {
  check_same_dim(p.dim(), static_cast<int>(M.cols()), "affine_image");
  check_same_dim(static_cast<int>(M.rows()), static_cast<int>(t.size()),
                 "affine_image");
  if (p.is_empty()) return Polytope::empty_set(static_cast<int>(M.rows()));
  std::vector<VectorXd> pts;
  pts.reserve(p.vrep().vertices.size());
  for (const auto& v : p.vrep().vertices) pts.push_back(M * v + t);
  return Polytope::from_vertices(std::move(pts));
}

Polytope translate(const Polytope& p, const VectorXd& t) {
  check_same_dim(p.dim(), static_cast<int>(t.size()), "translate");
  if (p.is_empty()) return p;
  return affine_image(p, MatrixXd::Identity(p.dim(), p.dim()), t);
}

}  // namespace flexcube::geom
