#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adsvol/errors.hpp"
#include "adsvol/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

using namespace adsvol;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("genus-2 builder: counts, Euler characteristic, refinement formulas") {
  // V, E, F frozen from the fan construction: 8 central triangles at level 0,
  // each level quadrisects faces.
  struct Row {
    int level, V, E, F;
  };
  const Row expected[] = {{0, 2, 12, 8}, {1, 14, 48, 32}, {2, 62, 192, 128}, {3, 254, 768, 512}};
  int prev_E = 0, prev_V = 0, prev_F = 0;
  for (const auto& row : expected) {
    SurfaceMesh m = build_genus_surface(2, row.level);
    CHECK(m.num_vertices == row.V);
    CHECK(m.num_edges() == row.E);
    CHECK(m.num_faces() == row.F);
    CHECK(m.euler_characteristic() == -2);
    if (row.level > 0) {
      CHECK(m.num_faces() == 4 * prev_F);
      CHECK(m.num_edges() == 2 * prev_E + 3 * prev_F);
      CHECK(m.num_vertices == prev_V + prev_E);
    }
    prev_V = m.num_vertices;
    prev_E = m.num_edges();
    prev_F = m.num_faces();
  }
}

TEST_CASE("genus-3 builder") {
  SurfaceMesh m = build_genus_surface(3, 1);
  CHECK(m.euler_characteristic() == -4);
  CHECK(m.num_faces() == 4 * 12);
  CHECK(m.angle_defects.sum() == doctest::Approx(-8.0 * kPi).epsilon(1e-12));
}

TEST_CASE("combinatorial Gauss-Bonnet is exact at every level") {
  for (int level : {0, 1, 2, 3}) {
    SurfaceMesh m = build_genus_surface(2, level);
    CHECK(std::abs(m.angle_defects.sum() + 4.0 * kPi) < 1e-10);
  }
}

TEST_CASE("total area converges to 2*pi*|chi| from above") {
  // Frozen from the construction (Euclidean proxy areas on hyperbolic lengths).
  const double areas[] = {23.389481821, 14.647072850, 13.054940276, 12.686638723};
  for (int level = 0; level < 4; ++level) {
    SurfaceMesh m = build_genus_surface(2, level);
    CHECK(m.total_area() == doctest::Approx(areas[level]).epsilon(1e-8));
  }
  CHECK(areas[3] > 4.0 * kPi);
}

TEST_CASE("angle-defect curvature approaches -1 under refinement") {
  SurfaceMesh m2 = build_genus_surface(2, 2);
  SurfaceMesh m3 = build_genus_surface(2, 3);
  ScalarField k2 = vertex_curvature_background(m2);
  ScalarField k3 = vertex_curvature_background(m3);
  const double dev2 = (k2.values.array() + 1.0).abs().maxCoeff();
  const double dev3 = (k3.values.array() + 1.0).abs().maxCoeff();
  CHECK(dev2 < 0.06);   // frozen: 0.0539
  CHECK(dev3 < 0.015);  // frozen: 0.0140
  CHECK(dev3 < dev2);
}

TEST_CASE("corner radius of the regular octagon") {
  // cosh(R) = cot^2(pi/8); the level-0 spoke edges all carry this length.
  SurfaceMesh m = build_genus_surface(2, 0);
  const double R = std::acosh(std::pow(1.0 / std::tan(kPi / 8.0), 2.0));
  int spokes = 0;
  for (int e = 0; e < m.num_edges(); ++e)
    if (std::abs(m.edge_lengths(e) - R) < 1e-12) ++spokes;
  CHECK(spokes == 8);
}

TEST_CASE("cotan Laplacian: symmetry, zero row sums, PSD") {
  SurfaceMesh m = build_genus_surface(2, 2);
  LaplaceOperator L = cotan_laplacian(m);
  Eigen::MatrixXd D = Eigen::MatrixXd(L.matrix);
  CHECK((D - D.transpose()).lpNorm<Eigen::Infinity>() < 1e-13);
  CHECK((D.rowwise().sum()).lpNorm<Eigen::Infinity>() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
  // Constants span the kernel: exactly one near-zero eigenvalue.
  CHECK(es.eigenvalues()(0) < 1e-12);
  CHECK(es.eigenvalues()(1) > 1e-6);
}

TEST_CASE("cotan weights on a planar patch match the textbook values") {
  // Unit square split along a diagonal: diagonal weight cot(90) = 0,
  // boundary weights cot(45)/2 = 1/2.
  Eigen::Matrix<int, Eigen::Dynamic, 3> faces(2, 3);
  faces << 0, 1, 2, 0, 2, 3;
  const double s2 = std::sqrt(2.0);
  Eigen::Matrix<double, Eigen::Dynamic, 3> lens(2, 3);
  lens << 1.0, 1.0, s2, s2, 1.0, 1.0;
  Eigen::SparseMatrix<double> L = cotan_matrix(faces, lens, 4);
  Eigen::MatrixXd D = Eigen::MatrixXd(L);
  CHECK(D(0, 2) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(D(0, 1) == doctest::Approx(-0.5));
  CHECK(D(1, 2) == doctest::Approx(-0.5));
  CHECK(D(0, 0) == doctest::Approx(1.0));
  CHECK((D.rowwise().sum()).lpNorm<Eigen::Infinity>() < 1e-14);
}

TEST_CASE("face geometry: 3-4-5 triangle") {
  Eigen::Matrix<int, Eigen::Dynamic, 3> faces(1, 3);
  faces << 0, 1, 2;
  Eigen::Matrix<double, Eigen::Dynamic, 3> lens(1, 3);
  lens << 3.0, 4.0, 5.0;
  FaceGeometry g = face_geometry(faces, lens);
  CHECK(g.face_areas(0) == doctest::Approx(6.0));
  CHECK(g.corner_angles.row(0).sum() == doctest::Approx(kPi));
  // The right angle sits opposite the hypotenuse (slot 2 edge has length 5).
  CHECK(g.corner_angles(0, 1) == doctest::Approx(kPi / 2.0));
}

TEST_CASE("gradient of a constant vanishes") {
  SurfaceMesh m = build_genus_surface(2, 2);
  ScalarField u{&m, Eigen::VectorXd::Constant(m.num_vertices, 0.7)};
  ScalarField zero{&m, Eigen::VectorXd::Zero(m.num_vertices)};
  ScalarField g = gradient_norm_sq(m, u, zero);
  CHECK(g.values.lpNorm<Eigen::Infinity>() < 1e-20);
}

TEST_CASE("gradient scaling: |d(2u)|^2 = 4 |du|^2 and conformal weight") {
  SurfaceMesh m = build_genus_surface(2, 2);
  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(m.num_vertices, -0.3, 0.5);
  ScalarField u{&m, v};
  ScalarField u2{&m, 2.0 * v};
  ScalarField zero{&m, Eigen::VectorXd::Zero(m.num_vertices)};
  ScalarField c{&m, Eigen::VectorXd::Constant(m.num_vertices, 0.5)};
  ScalarField g = gradient_norm_sq(m, u, zero);
  ScalarField g2 = gradient_norm_sq(m, u2, zero);
  ScalarField gc = gradient_norm_sq(m, u, c);
  CHECK((g2.values - 4.0 * g.values).lpNorm<Eigen::Infinity>() < 1e-12);
  CHECK((gc.values - std::exp(-1.0) * g.values).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("Poincare-disk helpers") {
  const Eigen::Vector2d o(0.0, 0.0), p(0.5, 0.0), q(-0.5, 0.0);
  CHECK(hyperbolic_distance(o, p) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(hyperbolic_midpoint(p, q).norm() < 1e-14);
  // Midpoint is equidistant for generic pairs.
  const Eigen::Vector2d a(0.31, -0.12), b(-0.44, 0.55);
  const Eigen::Vector2d mid = hyperbolic_midpoint(a, b);
  CHECK(hyperbolic_distance(a, mid) ==
        doctest::Approx(hyperbolic_distance(mid, b)).epsilon(1e-12));
  CHECK(hyperbolic_distance(a, mid) ==
        doctest::Approx(0.5 * hyperbolic_distance(a, b)).epsilon(1e-12));
}

TEST_CASE("JSON round trip is content-exact at level 2") {
  SurfaceMesh m = build_genus_surface(2, 2);
  REQUIRE(m.is_simplicial());
  SurfaceMesh back = mesh_from_json(mesh_to_json(m));
  CHECK(mesh_hash(back) == mesh_hash(m));
  CHECK(back.num_vertices == m.num_vertices);
  CHECK((back.edge_lengths - m.edge_lengths).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("coarse quotient meshes are not simplicial and refuse serialization") {
  SurfaceMesh m0 = build_genus_surface(2, 0);
  CHECK(!m0.is_simplicial());
  CHECK_THROWS_AS((void)mesh_to_json(m0), DomainError);
  CHECK(build_genus_surface(2, 2).is_simplicial());
}

TEST_CASE("mesh hashes distinguish levels") {
  CHECK(mesh_hash(build_genus_surface(2, 2)) != mesh_hash(build_genus_surface(2, 3)));
}

TEST_CASE("make_surface_mesh validation") {
  SurfaceMesh m = build_genus_surface(2, 2);

  SUBCASE("triangle inequality violation") {
    Eigen::VectorXd bad = m.edge_lengths;
    bad(0) = 1e6;
    CHECK_THROWS_AS((void)make_surface_mesh(2, m.faces, m.face_edges, m.edge_verts, bad),
                    DomainError);
  }
  SUBCASE("nonpositive length") {
    Eigen::VectorXd bad = m.edge_lengths;
    bad(3) = 0.0;
    CHECK_THROWS_AS((void)make_surface_mesh(2, m.faces, m.face_edges, m.edge_verts, bad),
                    DomainError);
  }
  SUBCASE("open surface (dropped face)") {
    auto faces = m.faces.topRows(m.num_faces() - 1).eval();
    auto fe = m.face_edges.topRows(m.num_faces() - 1).eval();
    CHECK_THROWS_AS((void)make_surface_mesh(2, faces, fe, m.edge_verts, m.edge_lengths),
                    DomainError);
  }
  SUBCASE("wrong genus for the connectivity") {
    CHECK_THROWS_AS(
        (void)make_surface_mesh(3, m.faces, m.face_edges, m.edge_verts, m.edge_lengths),
        DomainError);
  }
}

TEST_CASE("builder input validation") {
  CHECK_THROWS_AS((void)build_genus_surface(1, 2), DomainError);
  CHECK_THROWS_AS((void)build_genus_surface(0, 2), DomainError);
  CHECK_THROWS_AS((void)build_genus_surface(2, 9, 1000), ResourceError);
}
