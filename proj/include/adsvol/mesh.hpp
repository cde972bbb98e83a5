#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <string>
#include <vector>

namespace adsvol {

/// Intrinsic oriented triangle mesh of a closed surface of genus >= 2,
/// carrying per-edge hyperbolic lengths. Edges are stored as instances
/// (not vertex pairs), so the coarse fundamental-polygon meshes with
/// multi-edges and loops are representable. Immutable after construction.
struct SurfaceMesh {
  int genus = 2;
  int num_vertices = 0;
  Eigen::Matrix<int, Eigen::Dynamic, 3> faces;       // CCW vertex triples
  Eigen::Matrix<int, Eigen::Dynamic, 3> face_edges;  // edge id of slot s = (corner s -> corner s+1)
  Eigen::Matrix<int, Eigen::Dynamic, 2> edge_verts;  // unordered endpoints
  Eigen::VectorXd edge_lengths;                      // hyperbolic units

  // Cached geometry (Euclidean proxy on the edge lengths).
  Eigen::Matrix<double, Eigen::Dynamic, 3> corner_angles;  // angle at corner s of each face
  Eigen::VectorXd face_areas;     // Heron
  Eigen::VectorXd vertex_areas;   // barycentric
  Eigen::VectorXd angle_defects;  // 2*pi - incident angles
  Eigen::VectorXd cotan_weights;  // per edge

  int num_faces() const { return static_cast<int>(faces.rows()); }
  int num_edges() const { return static_cast<int>(edge_verts.rows()); }
  int euler_characteristic() const { return num_vertices - num_edges() + num_faces(); }
  double total_area() const { return face_areas.sum(); }

  /// True when edges are determined by their vertex pairs (no loops or
  /// multi-edges). Required for the JSON representation.
  bool is_simplicial() const;
};

/// Per-vertex real-valued function bound to the mesh it lives on.
struct ScalarField {
  const SurfaceMesh* mesh = nullptr;
  Eigen::VectorXd values;
};

/// Integrated weak-form cotan operator: (Lu)_v ~ -A_v * (laplacian u)(v)
/// in the background metric. Symmetric, zero row sums, PSD.
struct LaplaceOperator {
  Eigen::SparseMatrix<double> matrix;
  const SurfaceMesh* mesh = nullptr;
};

/// Shared geometry kernel: angles, Heron areas, barycentric vertex areas,
/// angle defects and cotan edge weights from faces + per-slot lengths.
/// Exposed separately so tests can run it on open planar patches.
struct FaceGeometry {
  Eigen::Matrix<double, Eigen::Dynamic, 3> corner_angles;
  Eigen::VectorXd face_areas;
};
FaceGeometry face_geometry(const Eigen::Matrix<int, Eigen::Dynamic, 3>& faces,
                           const Eigen::Matrix<double, Eigen::Dynamic, 3>& slot_lengths);

/// Cotan matrix for an arbitrary face list (slot s carries the length of the
/// edge corner s -> corner s+1). Boundary edges just get one-sided weights.
Eigen::SparseMatrix<double> cotan_matrix(const Eigen::Matrix<int, Eigen::Dynamic, 3>& faces,
                                         const Eigen::Matrix<double, Eigen::Dynamic, 3>& slot_lengths,
                                         int num_vertices, double degenerate_tol = 1e-6);

/// Finalizes a mesh from raw connectivity: validates closedness / orientation /
/// triangle inequalities / Euler characteristic and fills the cached geometry.
SurfaceMesh make_surface_mesh(int genus,
                              Eigen::Matrix<int, Eigen::Dynamic, 3> faces,
                              Eigen::Matrix<int, Eigen::Dynamic, 3> face_edges,
                              Eigen::Matrix<int, Eigen::Dynamic, 2> edge_verts,
                              Eigen::VectorXd edge_lengths);

/// Regular hyperbolic 4g-gon (interior angles pi/(2g)), central fan,
/// refined `level` times with hyperbolic midpoints in the Poincare disk,
/// then side-paired into a closed genus-g surface.
SurfaceMesh build_genus_surface(int genus, int level, int vertex_cap = 2'000'000);

LaplaceOperator cotan_laplacian(const SurfaceMesh& mesh);

/// Angle-defect curvature estimate K_h(v) = defect_v / A_v.
ScalarField vertex_curvature_background(const SurfaceMesh& mesh);

/// Squared gradient norm of u in the metric e^{2*conformal_u} * h:
/// per-face affine gradients w.r.t. the background, area-averaged to
/// vertices, scaled by e^{-2*conformal_u}.
ScalarField gradient_norm_sq(const SurfaceMesh& mesh, const ScalarField& u,
                             const ScalarField& conformal_u);

// Poincare-disk helpers (used by the builder and its tests).
double hyperbolic_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b);
Eigen::Vector2d hyperbolic_midpoint(const Eigen::Vector2d& a, const Eigen::Vector2d& b);

// JSON persistence. Writing requires a simplicial mesh; the loader rejects
// non-manifold input.
std::string mesh_to_json(const SurfaceMesh& mesh);
SurfaceMesh mesh_from_json(const std::string& text);
void save_mesh(const SurfaceMesh& mesh, const std::string& path);
SurfaceMesh load_mesh(const std::string& path);

/// Stable FNV-1a content hash over genus, connectivity and lengths.
std::uint64_t mesh_hash(const SurfaceMesh& mesh);

}  // namespace adsvol
