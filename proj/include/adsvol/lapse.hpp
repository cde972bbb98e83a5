#pragma once

#include "adsvol/elliptic.hpp"
#include "adsvol/slicegen.hpp"

namespace adsvol {

struct LapseField {
  double tau = 0.0;
  ScalarField ell;  // > 0 everywhere
};

struct BoundReport {
  double extremum = 0.0;   // the tested min or max of the field
  double bound = 0.0;
  double margin = 0.0;     // signed distance to the bound, >= 0 means satisfied
  int arg_vertex = -1;
  bool pass = false;
};

/// Linear SPD solve of the lapse equation on the slice:
///   (1/2 L + diag(a_v e^{2u} (2 tau^2 + K + 2))) ell = a_v e^{2u}.
LapseField solve_lapse(const SliceGeometry& slice, const SolverConfig& config = {});

/// Maximum principle check: max ell <= 1/(1+tau^2) + tol.
BoundReport check_lapse_bound(const LapseField& lapse, double tau, double tol);

}  // namespace adsvol
