#pragma once

#include "adsvol/lapse.hpp"
#include "adsvol/slicegen.hpp"

namespace adsvol {

struct ConformalFactor {
  double tau = 0.0;
  ScalarField sigma;  // > 0, g_tau = sigma * h_tau with h_tau = h~/(1+tau^2)
  double residual_inf = 0.0;
  int newton_iterations = 0;
};

/// Solves the conformal-curvature equation in log space:
///   (1/2) e^{-2u} lap phi + K + (1+tau^2) e^{-phi} = 0,  sigma = e^phi,
/// by damped Newton from phi = 0 (the closed-form guess is opt-in via config).
ConformalFactor solve_sigma(const SliceGeometry& slice, const SolverConfig& config = {});

/// Ahlfors-Schwarz-Pick check: min sigma >= 1 - tol.
BoundReport check_sigma_bound(const ConformalFactor& sigma, double tol);

/// Key product inequality: min sigma*ell >= 1/(1+tau^2) - tol.
BoundReport check_product_bound(const ConformalFactor& sigma, const LapseField& lapse,
                                double tau, double tol);

struct CombinedResidualReport {
  double discrepancy_inf = 0.0;
  bool pass = false;
};

/// Discrete two-sided evaluation of the combined identity
///   1/2 lap_g log(sigma ell) = -K + K'/sigma + (2tau^2+K+2) - 1/ell
///                              - |d ell|^2_g / (2 ell^2).
CombinedResidualReport check_combined_residual(const ConformalFactor& sigma,
                                               const LapseField& lapse,
                                               const SliceGeometry& slice, double tol);

}  // namespace adsvol
