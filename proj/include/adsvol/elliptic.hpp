#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <string>
#include <vector>

namespace adsvol {

struct SolverConfig {
  double tol = 1e-10;          // absolute residual sup-norm target
  int max_newton = 50;
  double backtrack = 0.5;
  int max_backtracks = 30;
  enum class Linear { Direct, ConjugateGradient } linear = Linear::Direct;
  double cg_tol = 1e-12;
  int cg_max_iters = 20000;
  bool oracle_initial_guess = false;  // uniformize: seed Newton with the closed form
};

struct IterationRecord {
  int iteration = 0;
  double residual_inf = 0.0;
  double step_length = 0.0;
};

struct Transcript {
  std::vector<IterationRecord> rows;
  std::string to_csv() const;
};

/// SPD solve with a verified residual: ||Ax - rhs||_inf <= tol * ||rhs||_inf
/// (absolute when rhs = 0). Direct Cholesky by default, Jacobi-preconditioned
/// CG as the fallback backend.
Eigen::VectorXd solve_linear_spd(const Eigen::SparseMatrix<double>& A,
                                 const Eigen::VectorXd& rhs,
                                 const SolverConfig& config = {});

/// Semilinear vertex problem. Residual at a candidate x:
///   R_v(x) = -(d_v / A_v) (L x)_v + f(v, x_v)
/// and the solver drives ||R||_inf below config.tol.
struct SemilinearProblem {
  const Eigen::SparseMatrix<double>* laplacian = nullptr;  // integrated cotan L
  Eigen::VectorXd areas;                                   // A_v > 0
  Eigen::VectorXd diffusion;                               // d_v > 0
  std::function<double(int, double)> f;
  std::function<double(int, double)> dfdx;
  Eigen::VectorXd initial_guess;
};

struct NewtonResult {
  Eigen::VectorXd x;
  Transcript transcript;
  double residual_inf = 0.0;
};

/// Damped Newton with backtracking line search on the residual sup-norm.
/// Each step solves the symmetrized system (L + diag(A (-df/dx)/d)) s = (A/d) R.
NewtonResult newton_solve(const SemilinearProblem& problem, const SolverConfig& config = {});

}  // namespace adsvol
