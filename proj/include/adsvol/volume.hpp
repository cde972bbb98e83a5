#pragma once

#include "adsvol/lapse.hpp"
#include "adsvol/slicegen.hpp"
#include "adsvol/uniformize.hpp"

#include <functional>
#include <string>
#include <vector>

namespace adsvol {

/// Gauss-Legendre nodes/weights on (-1, 1).
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

/// Integral of density over tau in R via the tan substitution
/// tau = tan(theta), theta in (-pi/2, pi/2), Gauss-Legendre in theta.
double tau_quadrature(const std::function<double(double)>& density, int nodes);

/// Slice volume density: integral of ell over the slice metric area.
double slice_density(const SliceGeometry& slice, const LapseField& lapse);

struct VerifyConfig {
  SolverConfig solver;
  double bound_tol = 1e-7;       // per-node bound check tolerance
  double total_tol_rel = 1e-6;   // relative tolerance on the Fuchsian equality
  int threads = 0;               // 0 = auto (also set by ADSVOL_THREADS)
};

struct NodeRow {
  double tau = 0.0;
  double weight = 0.0;             // quadrature weight in tau (includes sec^2)
  double density = 0.0;            // V(tau)
  double density_fuchsian = 0.0;   // V'(tau)
  double min_sigma = 0.0;
  double max_lapse = 0.0;          // max ell * (1+tau^2)
  double min_product = 0.0;        // min sigma*ell * (1+tau^2)
  int newton_iterations = 0;
  bool pass = false;
};

struct VolumeReport {
  std::vector<NodeRow> rows;
  double total = 0.0;
  double bound = 0.0;              // pi^2 |chi|
  double margin = 0.0;
  bool fuchsian_input = false;     // N == 0: equality case asserted
  bool pass = false;
  int chi = 0;
  std::string provenance;          // mesh hash, n-spec, config hash, worst iterations

  std::string to_json() const;
  std::string to_csv() const;
};

/// Full volume-bound verification sweep: per quadrature node generate the slice,
/// solve lapse and sigma, run all three bound checks, integrate the density
/// and compare against pi^2 |chi|.
VolumeReport verify_theorem(const SurfaceMesh& mesh, const DensitySpec& nspec,
                            int tau_nodes, const VerifyConfig& config = {});

/// Uniform-grid margin sweep (no quadrature), for plotting.
VolumeReport sweep_tau(const SurfaceMesh& mesh, const DensitySpec& nspec, double tau_min,
                       double tau_max, int steps, const VerifyConfig& config = {});

/// FNV-1a hash of an arbitrary config/provenance string.
std::uint64_t config_hash(const std::string& text);

}  // namespace adsvol
