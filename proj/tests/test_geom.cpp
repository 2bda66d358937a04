#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <random>

#include "flexcube/geom/distance.hpp"
#include "flexcube/geom/facets.hpp"
#include "flexcube/geom/lp.hpp"
#include "flexcube/geom/mesh.hpp"
#include "flexcube/geom/polytope.hpp"
#include "flexcube/geom/tolerance.hpp"
#include "support/oracles.hpp"

using namespace flexcube;
using namespace flexcube::testing;
using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::Vector3d;
using Eigen::VectorXd;

namespace {

VectorXd vec3(double a, double b, double c) {
  VectorXd v(3);
  v << a, b, c;
  return v;
}

geom::Polytope unit_cube() {
  return geom::Polytope::from_box(VectorXd::Zero(3), VectorXd::Ones(3));
}

}  // namespace

TEST_CASE("lp: bounded known optima") {
  // max x+y on [0,1]^2
  MatrixXd A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  VectorXd b(4);
  b << 1, 0, 1, 0;
  VectorXd c(2);
  c << 1, 1;
  const auto r = geom::solve_lp(A, b, c);
  REQUIRE(r.status == geom::LpStatus::Optimal);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.x(0) == doctest::Approx(1.0));
  CHECK(r.x(1) == doctest::Approx(1.0));
}

TEST_CASE("lp: infeasible and unbounded detection") {
  MatrixXd A(2, 1);
  A << 1, -1;
  VectorXd b(2);
  b << 0, -1;  // x <= 0 and x >= 1
  VectorXd c(1);
  c << 1;
  CHECK(geom::solve_lp(A, b, c).status == geom::LpStatus::Infeasible);

  MatrixXd A2(1, 1);
  A2 << -1;  // x >= -1
  VectorXd b2(1);
  b2 << 1;
  CHECK(geom::solve_lp(A2, b2, c).status == geom::LpStatus::Unbounded);
}

TEST_CASE("lp: agrees with vertex maxima on random polytopes") {
  Rng rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const auto p = random_hpolytope(3, 10, rng);
    const VectorXd d = random_unit_vector(3, rng);
    const double via_lp = geom::support(p.hrep(), d);
    const double via_verts = geom::support(p.vrep(), d);
    CHECK(via_lp == doctest::Approx(via_verts).epsilon(1e-8));
  }
}

TEST_CASE("vrep_to_hrep: unit cube gives exactly six facets") {
  std::vector<VectorXd> corners;
  for (int bits = 0; bits < 8; ++bits)
    corners.push_back(vec3(bits & 1, (bits >> 1) & 1, (bits >> 2) & 1));
  const auto h = geom::vrep_to_hrep({corners, 3});
  REQUIRE(h.facets() == 6);
  // Every corner satisfies every facet; volume-side checked elsewhere.
  for (const auto& v : corners)
    CHECK(((h.A * v - h.b).array() <= geom::tolerance()).all());
}

TEST_CASE("vrep_to_hrep: single point pins both coordinates") {
  VectorXd p(2);
  p << 1, 2;
  const auto h = geom::vrep_to_hrep({{p}, 2});
  REQUIRE(h.facets() == 4);  // two opposing pairs
  for (int i = 0; i < 4; ++i)
    CHECK(h.A.row(i).dot(p) == doctest::Approx(h.b(i)).epsilon(1e-12));
}

TEST_CASE("vrep_to_hrep: random ball points match brute-force facet oracle") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<VectorXd> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(random_in_ball(3, 1.0, rng));
    const auto h = geom::vrep_to_hrep({pts, 3});
    const auto expected = oracle_facets(pts, 3);
    REQUIRE(h.facets() == static_cast<int>(expected.size()));
    for (const auto& f : expected) {
      bool found = false;
      for (int i = 0; i < h.facets(); ++i) {
        if (h.A.row(i).dot(f.normal) >= 1.0 - 1e-9 &&
            std::abs(h.b(i) - f.offset) <= 1e-8) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("vrep_to_hrep: facets are supported by enough vertices") {
  Rng rng(19);
  const auto p = random_vpolytope(3, 16, 1.0, rng);
  const auto& h = p.hrep();
  for (int i = 0; i < h.facets(); ++i) {
    int on_plane = 0;
    for (const auto& v : p.vrep().vertices) {
      if (std::abs(h.A.row(i).dot(v) - h.b(i)) <= geom::tolerance()) ++on_plane;
    }
    CHECK(on_plane >= 3);
  }
}

TEST_CASE("hrep_to_vrep: unit cube vertices") {
  const auto cube = unit_cube();
  const auto v = geom::hrep_to_vrep(cube.hrep());
  REQUIRE(v.count() == 8);
  for (const auto& x : v.vertices) {
    for (int i = 0; i < 3; ++i)
      CHECK((std::abs(x(i)) <= 1e-12 || std::abs(x(i) - 1.0) <= 1e-12));
  }
}

TEST_CASE("hrep_to_vrep: contradictory bounds raise Infeasible") {
  MatrixXd A(2, 1);
  A << 1, -1;
  VectorXd b(2);
  b << 0, -1;
  CHECK_THROWS_WITH_AS(geom::hrep_to_vrep({A, b}), doctest::Contains("empty"),
                       geom::GeomError);
}

TEST_CASE("hrep_to_vrep: unbounded raises Unbounded") {
  MatrixXd A(1, 2);
  A << 1, 0;
  VectorXd b(1);
  b << 1;
  try {
    geom::hrep_to_vrep({A, b});
    FAIL("expected Unbounded");
  } catch (const geom::GeomError& e) {
    CHECK(e.code() == geom::GeomError::Code::Unbounded);
  }
}

TEST_CASE("hrep_to_vrep: random 8-halfspace polytopes match oracle") {
  Rng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_hpolytope(3, 8, rng);
    // Oracle runs on the raw canonical rows, implementation-independent path.
    const auto expected =
        oracle_vertices(p.hrep().A, p.hrep().b, geom::tolerance());
    const auto& got = p.vrep().vertices;
    REQUIRE(got.size() == expected.size());
    for (const auto& e : expected) {
      bool found = false;
      for (const auto& g : got) {
        if ((e - g).lpNorm<Eigen::Infinity>() <= 1e-8) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("round-trip: hull of random vertex sets is stable") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = random_vpolytope(3, 12, 1.0, rng);
    const auto v2 = geom::hrep_to_vrep(p.hrep());
    const auto q = geom::Polytope::from_vrep(v2);
    CHECK(oracle_set_equal(p, q, geom::tolerance()));
    CHECK(p.vrep().count() == q.vrep().count());
  }
}

TEST_CASE("canonicalize: redundant and duplicate rows are removed") {
  // Unit square plus a slack row x <= 2 and a duplicate x <= 1.
  MatrixXd A(6, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1, 1, 0, 1, 0;
  VectorXd b(6);
  b << 1, 0, 1, 0, 2, 1;
  const auto h = geom::canonicalize_hrep({A, b});
  CHECK(h.facets() == 4);

  // Corner-touching plane (weakly redundant): removing it changes nothing.
  MatrixXd A2(5, 2);
  A2 << 1, 0, -1, 0, 0, 1, 0, -1, M_SQRT1_2, M_SQRT1_2;
  VectorXd b2(5);
  b2 << 1, 0, 1, 0, M_SQRT2;  // touches (1,1) exactly
  CHECK(geom::canonicalize_hrep({A2, b2}).facets() == 4);
}

TEST_CASE("minkowski_sum: identity and box arithmetic") {
  const auto cube = unit_cube();
  const auto zero = geom::Polytope::point(VectorXd::Zero(3));
  CHECK(oracle_set_equal(geom::minkowski_sum(cube, zero), cube, 1e-9));

  const auto twice = geom::minkowski_sum(cube, cube);
  const auto expect =
      geom::Polytope::from_box(VectorXd::Zero(3), 2.0 * VectorXd::Ones(3));
  CHECK(oracle_set_equal(twice, expect, 1e-9));
}

TEST_CASE("minkowski_sum: matches all-pairs vertex-sum oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_vpolytope(3, 8, 1.0, rng);
    const auto q = random_vpolytope(3, 8, 0.7, rng);
    const auto s = geom::minkowski_sum(p, q);

    // Oracle: every pairwise sum is inside, and support adds up.
    for (const auto& a : p.vrep().vertices)
      for (const auto& b : q.vrep().vertices)
        CHECK(geom::contains_point(s, a + b));
    for (int k = 0; k < 100; ++k) {
      const VectorXd d = random_unit_vector(3, rng);
      const double lhs = geom::support(s, d);
      const double rhs = geom::support(p, d) + geom::support(q, d);
      CHECK(std::abs(lhs - rhs) <= 10 * geom::tolerance());
    }
  }
}

TEST_CASE("minkowski_sum: commutative and associative") {
  Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_vpolytope(3, 6, 1.0, rng);
    const auto b = random_vpolytope(3, 6, 0.8, rng);
    const auto c = random_vpolytope(3, 6, 0.5, rng);
    CHECK(oracle_set_equal(geom::minkowski_sum(a, b), geom::minkowski_sum(b, a),
                           1e-9));
    CHECK(oracle_set_equal(
        geom::minkowski_sum(geom::minkowski_sum(a, b), c),
        geom::minkowski_sum(a, geom::minkowski_sum(b, c)), 1e-8));
  }
}

TEST_CASE("pontryagin_diff: box erosion is exact interval arithmetic") {
  const auto big =
      geom::Polytope::from_box(VectorXd::Zero(3), 2.0 * VectorXd::Ones(3));
  const auto small = unit_cube();
  const auto diff = geom::pontryagin_diff(big, small);
  CHECK(oracle_set_equal(diff, unit_cube(), 1e-9));

  // Full erosion of a symmetric box leaves the origin.
  const auto sym =
      geom::Polytope::from_box(-VectorXd::Ones(3), VectorXd::Ones(3));
  const auto origin_only = geom::pontryagin_diff(sym, sym);
  REQUIRE(!origin_only.is_empty());
  CHECK(origin_only.vrep().count() == 1);
  CHECK(origin_only.vrep().vertices[0].norm() <= 1e-9);
}

TEST_CASE("pontryagin_diff: erosion-dilation stays inside") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_hpolytope(3, 10, rng);
    const auto q = random_vpolytope(3, 6, 0.3, rng);
    const auto er = geom::pontryagin_diff(p, q);
    if (er.is_empty()) continue;
    CHECK(oracle_contains(p, geom::minkowski_sum(er, q), 1e-8));
  }
}

TEST_CASE("pontryagin_diff: empty difference is a value, not an error") {
  const auto small = unit_cube();
  const auto big =
      geom::Polytope::from_box(-VectorXd::Ones(3), 2.0 * VectorXd::Ones(3));
  const auto diff = geom::pontryagin_diff(small, big);
  CHECK(diff.is_empty());
  CHECK(geom::volume(diff) == 0.0);
}

TEST_CASE("contains: cubes and sampled membership agree") {
  const auto cube = unit_cube();
  CHECK(geom::contains_point(cube, vec3(0.5, 0.5, 0.5)));
  const auto big =
      geom::Polytope::from_box(VectorXd::Zero(3), 2.0 * VectorXd::Ones(3));
  CHECK(geom::contains(big, cube));
  CHECK(!geom::contains(cube, big));

  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_hpolytope(3, 8, rng);
    const auto q = random_vpolytope(3, 6, 0.9, rng);
    const bool got = geom::contains(p, q);
    // Grid/sample oracle: random convex combinations of q's vertices.
    bool sampled_inside = true;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int s = 0; s < 500 && sampled_inside; ++s) {
      VectorXd x = VectorXd::Zero(3);
      double wsum = 0.0;
      for (const auto& v : q.vrep().vertices) {
        const double w = u01(rng);
        x += w * v;
        wsum += w;
      }
      x /= wsum;
      if (!geom::contains_point(p, x)) sampled_inside = false;
    }
    if (got) CHECK(sampled_inside);
    if (!sampled_inside) CHECK(!got);
  }
}

TEST_CASE("contains: partial order on random chains") {
  Rng rng(29);
  // Summands contain the origin, so each sum encloses its predecessor.
  auto grow = [&rng](const geom::Polytope& p) {
    std::vector<VectorXd> pts{VectorXd::Zero(3)};
    for (int i = 0; i < 4; ++i) pts.push_back(random_in_ball(3, 0.3, rng));
    return geom::minkowski_sum(p, geom::Polytope::from_vertices(pts));
  };
  const auto a = random_vpolytope(3, 8, 0.5, rng);
  const auto b = grow(a);
  const auto c = grow(b);
  CHECK(geom::contains(a, a));  // reflexive
  CHECK(geom::contains(b, a));
  CHECK(geom::contains(c, b));
  CHECK(geom::contains(c, a));  // transitive
  // Antisymmetry: mutual containment means set equality.
  CHECK(oracle_set_equal(a, a, geom::tolerance()));
}

TEST_CASE("volume: cube, point, and Monte-Carlo cross-check") {
  CHECK(geom::volume(unit_cube()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(geom::volume(geom::Polytope::point(vec3(1, 2, 3))) == 0.0);

  Rng rng(31);
  for (int trial = 0; trial < 3; ++trial) {
    const auto p = random_hpolytope(3, 10, rng);
    const double exact = geom::volume(p);
    const double mc = oracle_volume_mc(p, 1'000'000, rng);
    CHECK(std::abs(exact - mc) / exact < 0.02);
  }
}

TEST_CASE("volume: sum dominates the larger operand") {
  Rng rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_vpolytope(3, 8, 1.0, rng);
    const auto q = random_vpolytope(3, 8, 0.6, rng);
    const double vs = geom::volume(geom::minkowski_sum(p, q));
    CHECK(vs >= std::max(geom::volume(p), geom::volume(q)) - 1e-9);
  }
}

TEST_CASE("support: cube diagonals and the zero direction") {
  const auto cube = unit_cube();
  CHECK(geom::support(cube, VectorXd::Ones(3)) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(geom::support(cube, VectorXd::Zero(3)) == 0.0);

  Rng rng(41);
  const auto p = random_vpolytope(3, 10, 1.0, rng);
  for (int k = 0; k < 20; ++k) {
    const VectorXd d = random_unit_vector(3, rng);
    // Dense boundary sampling can only fall short of the true support.
    double sampled = -1e300;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int s = 0; s < 2000; ++s) {
      VectorXd x = VectorXd::Zero(3);
      double wsum = 0.0;
      for (const auto& v : p.vrep().vertices) {
        const double w = std::pow(u01(rng), 8.0);
        x += w * v;
        wsum += w;
      }
      sampled = std::max(sampled, d.dot(x / wsum));
    }
    const double h = geom::support(p, d);
    CHECK(sampled <= h + 1e-9);
    CHECK(h <= sampled + 0.2);  // loose: sampling misses corners slightly
  }
}

TEST_CASE("zonotope: square, hexagon, and generator concatenation") {
  geom::Zonotope z;
  z.center = VectorXd::Zero(2);
  z.generators = {Vector2d(1, 0), Vector2d(0, 1)};
  const auto v = geom::zonotope_vertices(z);
  CHECK(v.count() == 4);

  geom::Zonotope z3 = z;
  z3.generators.push_back(Vector2d(1, 1));
  CHECK(geom::zonotope_vertices(z3).count() == 6);  // hexagon

  // Zonotope Minkowski sum == polytope Minkowski sum of conversions.
  const auto sum_z =
      geom::Polytope::from_zonotope(geom::minkowski_sum(z, z3));
  const auto sum_p = geom::minkowski_sum(geom::Polytope::from_zonotope(z),
                                         geom::Polytope::from_zonotope(z3));
  CHECK(oracle_set_equal(sum_z, sum_p, 1e-9));
}

TEST_CASE("degenerate polytopes are first-class") {
  // Flat box: thickness zero along z.
  VectorXd lo = VectorXd::Zero(3), hi = VectorXd::Ones(3);
  lo(2) = hi(2) = 0.25;
  const auto flat = geom::Polytope::from_box(lo, hi);
  CHECK(!flat.is_empty());
  CHECK(flat.vrep().count() == 4);
  CHECK(geom::volume(flat) == 0.0);

  const auto h = geom::vrep_to_hrep(flat.vrep());
  // Opposing pair capturing the affine hull must be present.
  bool has_up = false, has_dn = false;
  for (int i = 0; i < h.facets(); ++i) {
    const VectorXd n = h.A.row(i).transpose();
    if (std::abs(n(2) - 1) < 1e-9 && std::abs(h.b(i) - 0.25) < 1e-9)
      has_up = true;
    if (std::abs(n(2) + 1) < 1e-9 && std::abs(h.b(i) + 0.25) < 1e-9)
      has_dn = true;
  }
  CHECK(has_up);
  CHECK(has_dn);

  // Round-trip keeps the flat set intact.
  const auto back = geom::Polytope::from_hrep(h);
  CHECK(oracle_set_equal(flat, back, 1e-9));
}

TEST_CASE("distance and hausdorff: boxes and degenerate sets") {
  const auto cube = unit_cube();
  CHECK(geom::distance_to(cube, vec3(0.5, 0.5, 0.5)) == 0.0);
  CHECK(geom::distance_to(cube, vec3(2, 0.5, 0.5)) == doctest::Approx(1.0));
  CHECK(geom::distance_to(cube, vec3(2, 2, 0.5)) ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(geom::distance_to(cube, vec3(2, 2, 2)) ==
        doctest::Approx(std::sqrt(3.0)));

  const auto big =
      geom::Polytope::from_box(VectorXd::Zero(3), 2.0 * VectorXd::Ones(3));
  CHECK(geom::hausdorff(cube, big) == doctest::Approx(std::sqrt(3.0)));

  VectorXd lo = VectorXd::Zero(3), hi = VectorXd::Ones(3);
  lo(2) = hi(2) = 0.0;
  const auto flat = geom::Polytope::from_box(lo, hi);
  CHECK(geom::distance_to(flat, vec3(0.5, 0.5, 1.0)) == doctest::Approx(1.0));
  CHECK(geom::distance_to(flat, vec3(2.0, 0.5, 1.0)) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("distance: sampled interior minimum never beats the exact value") {
  Rng rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_vpolytope(3, 10, 1.0, rng);
    const VectorXd x = 3.0 * random_unit_vector(3, rng);
    const double exact = geom::distance_to(p, x);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double sampled = 1e300;
    for (int s = 0; s < 4000; ++s) {
      VectorXd y = VectorXd::Zero(3);
      double wsum = 0.0;
      for (const auto& v : p.vrep().vertices) {
        const double w = std::pow(u01(rng), 6.0);
        y += w * v;
        wsum += w;
      }
      sampled = std::min(sampled, (x - y / wsum).norm());
    }
    CHECK(exact <= sampled + 1e-9);
    CHECK(sampled <= exact + 0.1);
  }
}

TEST_CASE("facet_hull: cube facets are quads") {
  const auto fh = geom::facet_hull(unit_cube().vrep());
  REQUIRE(fh.facets.size() == 6);
  for (const auto& f : fh.facets) CHECK(f.cycle.size() == 4);
}

TEST_CASE("mesh: OFF export is deterministic and well-formed") {
  const auto cube = unit_cube();
  const std::string off1 = geom::to_off(cube);
  const std::string off2 = geom::to_off(cube);
  CHECK(off1 == off2);
  CHECK(off1.substr(0, 4) == "OFF\n");
  CHECK(off1.find("8 12 0") != std::string::npos);  // 6 quads -> 12 triangles

  const auto j = geom::to_mesh_json(cube, {"rho", "pi", "eps"},
                                    {"MW/min", "MW", "MWh"});
  CHECK(j.find("axis_labels") != std::string::npos);
  CHECK(j.find("MW/min") != std::string::npos);
}

TEST_CASE("errors: dimension guards") {
  CHECK_THROWS_AS(geom::Polytope::empty_set(7), geom::GeomError);
  const auto a = unit_cube();
  const auto b =
      geom::Polytope::from_box(VectorXd::Zero(2), VectorXd::Ones(2));
  CHECK_THROWS_AS(geom::minkowski_sum(a, b), geom::GeomError);
  CHECK_THROWS_AS(geom::contains(a, b), geom::GeomError);
}

TEST_CASE("six dimensions: box vertex enumeration and cross-polytope hull") {
  VectorXd lo = -VectorXd::Ones(6), hi = VectorXd::Ones(6);
  const auto box = geom::Polytope::from_box(lo, hi);
  CHECK(box.vrep().count() == 64);
  const auto v = geom::hrep_to_vrep(box.hrep());
  CHECK(v.count() == 64);

  // Cross-polytope: 12 vertices, 64 facets, volume 2^d / d!.
  std::vector<VectorXd> pts;
  for (int i = 0; i < 6; ++i) {
    VectorXd e = VectorXd::Zero(6);
    e(i) = 1.0;
    pts.push_back(e);
    pts.push_back(-e);
  }
  const auto cross = geom::Polytope::from_vertices(pts);
  CHECK(cross.vrep().count() == 12);
  CHECK(cross.hrep().facets() == 64);
  CHECK(geom::volume(cross) ==
        doctest::Approx(std::pow(2.0, 6) / 720.0).epsilon(1e-9));

  // Round-trip at a facet count the combinatorial enumeration can take:
  // the 4-D cross-polytope (16 facets).
  std::vector<VectorXd> pts4;
  for (int i = 0; i < 4; ++i) {
    VectorXd e = VectorXd::Zero(4);
    e(i) = 1.0;
    pts4.push_back(e);
    pts4.push_back(-e);
  }
  const auto cross4 = geom::Polytope::from_vertices(pts4);
  const auto back =
      geom::Polytope::from_vrep(geom::hrep_to_vrep(cross4.hrep()));
  CHECK(oracle_set_equal(cross4, back, geom::tolerance()));
  CHECK(geom::volume(cross4) ==
        doctest::Approx(std::pow(2.0, 4) / 24.0).epsilon(1e-9));
}
