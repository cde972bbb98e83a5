#include "adsvol/lapse.hpp"

#include "adsvol/errors.hpp"
#include "adsvol/mesh.hpp"

#include <cmath>
#include <string>

namespace adsvol {

LapseField solve_lapse(const SliceGeometry& slice, const SolverConfig& config) {
  const SurfaceMesh& mesh = *slice.mesh;
  // The zeroth-order coefficient is W + (1 + tau^2); the admissible roundoff
  // in W scales with that same factor.
  const double q = 1.0 + slice.tau * slice.tau;
  if ((slice.W.values.array() < -1e-8 * q).any())
    throw DomainError("slice has W < 0; lapse system would lose positivity");

  const Eigen::VectorXd weights = slice.metric_areas();  // a_v e^{2u}
  const Eigen::VectorXd coeff =
      2.0 * slice.tau * slice.tau + slice.K.values.array() + 2.0;  // = tau^2 + 1 + W >= 1

  Eigen::SparseMatrix<double> A = 0.5 * cotan_laplacian(mesh).matrix;
  for (int v = 0; v < mesh.num_vertices; ++v) A.coeffRef(v, v) += weights(v) * coeff(v);

  LapseField lapse;
  lapse.tau = slice.tau;
  lapse.ell.mesh = &mesh;
  lapse.ell.values = solve_linear_spd(A, weights, config);

  if ((lapse.ell.values.array() <= 0.0).any()) {
    int v = 0;
    lapse.ell.values.minCoeff(&v);
    throw NumericError("lapse is non-positive at vertex " + std::to_string(v) +
                       "; discretization fault (maximum principle violated)");
  }
  return lapse;
}

BoundReport check_lapse_bound(const LapseField& lapse, double tau, double tol) {
  BoundReport r;
  int v = 0;
  r.extremum = lapse.ell.values.maxCoeff(&v);
  r.arg_vertex = v;
  r.bound = 1.0 / (1.0 + tau * tau);
  r.margin = r.bound - r.extremum;
  r.pass = r.extremum <= r.bound + tol;
  return r;
}

}  // namespace adsvol
