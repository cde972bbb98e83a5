#pragma once

#include "adsvol/elliptic.hpp"
#include "adsvol/fuchsian.hpp"
#include "adsvol/mesh.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adsvol {

/// Prescribed nonnegative density of the traceless part of the shape
/// operator, measured in the calibrated background metric. After solving,
/// the slice carries W = N * e^{-4u}.
struct DifferentialDensity {
  ScalarField field;  // N >= 0
  std::string provenance;
};

struct Bump {
  int center = 0;
  double amplitude = 0.1;
  double radius_hops = 2.0;
};

/// Density generators: zero, Gaussian bump(s) in edge-hop distance, or a
/// per-vertex list loaded from file. Parsed from CLI strings like
/// "zero", "bump:center=0,amp=0.1,radius=2", "bumps:0:0.1:2;5:0.05:1",
/// "file:PATH".
struct DensitySpec {
  enum class Kind { Zero, Bumps, File } kind = Kind::Zero;
  std::vector<Bump> bumps;
  std::string path;

  static DensitySpec parse(const std::string& text);
  std::string to_string() const;
};

DifferentialDensity make_density(const SurfaceMesh& mesh, const DensitySpec& spec);

/// Background hyperbolic structure calibrated so the discrete curvature is
/// exactly -1: u0 uniformizes the raw angle-defect curvature, and the
/// calibrated vertex areas are the integrated-curvature ones,
/// area_v = -defect_v + (L u0)_v, which sum to 2*pi*|chi| to rounding.
struct CalibratedBackground {
  const SurfaceMesh* mesh = nullptr;
  LaplaceOperator laplacian;
  ScalarField u0;            // conformal factor from raw background to curvature -1
  Eigen::VectorXd areas;     // calibrated vertex areas
  double total_area = 0.0;
};

CalibratedBackground calibrate_background(const SurfaceMesh& mesh,
                                          const SolverConfig& config = {});

/// One CMC-tau slice over the calibrated background: the slice metric is
/// g_tau = e^{2u} h~ where h~ is the calibrated curvature -1 background.
struct SliceGeometry {
  double tau = 0.0;
  const SurfaceMesh* mesh = nullptr;
  ScalarField u;        // conformal factor over the calibrated background
  ScalarField K;        // induced curvature field
  ScalarField W;        // K + 1 + tau^2 >= 0
  Eigen::VectorXd bg_areas;    // calibrated background vertex areas
  ScalarField u_bg;     // calibration factor u0 (raw background -> h~)
  std::string provenance;
  int newton_iterations = 0;

  /// Vertex area in the slice metric g_tau.
  Eigen::VectorXd metric_areas() const {
    return bg_areas.array() * (2.0 * u.values.array()).exp();
  }
};

/// Solves the Gauss equation e^{-2u}(-1 - lap u) = -(1+tau^2) + N e^{-4u}
/// on the calibrated background and assembles K and W. tol_geom guards the
/// W >= 0 invariant; violations indicate a solver fault.
SliceGeometry generate_slice(const CalibratedBackground& bg, const DifferentialDensity& N,
                             double tau, const SolverConfig& config = {},
                             double tol_geom = 1e-10);

/// Convenience overload that calibrates internally.
SliceGeometry generate_slice(const SurfaceMesh& mesh, const DifferentialDensity& N,
                             double tau, const SolverConfig& config = {});

/// Synthetic constant-coefficient slice with K = -(1+tau^2) + c and u = 0,
/// used by the analytic test suite. Not geometrically consistent with u.
SliceGeometry make_constant_slice(const CalibratedBackground& bg, double tau, double c);

/// Diagonal frame realization b11 = tau + sqrt(W), b22 = tau - sqrt(W), b12 = 0.
std::vector<ShapeOperatorSample> shape_samples(const SliceGeometry& slice,
                                               double tol_geom = 1e-10);

// Slice JSON: { "tau", "u", "K", "W", "mesh_ref", optional "lapse"/"sigma" }.
std::string slice_to_json(const SliceGeometry& slice, const std::string& mesh_ref,
                          const Eigen::VectorXd* lapse = nullptr,
                          const Eigen::VectorXd* sigma = nullptr);
struct LoadedSlice {
  SliceGeometry slice;
  std::string mesh_ref;
  std::optional<Eigen::VectorXd> lapse;
  std::optional<Eigen::VectorXd> sigma;
};
LoadedSlice slice_from_json(const std::string& text, const CalibratedBackground& bg);

}  // namespace adsvol
