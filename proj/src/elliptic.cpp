#include "adsvol/elliptic.hpp"

#include "adsvol/errors.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <sstream>

namespace adsvol {

std::string Transcript::to_csv() const {
  std::ostringstream os;
  os << "iteration,residual_inf,step_length\n";
  for (const auto& r : rows)
    os << r.iteration << ',' << r.residual_inf << ',' << r.step_length << '\n';
  return os.str();
}

Eigen::VectorXd solve_linear_spd(const Eigen::SparseMatrix<double>& A,
                                 const Eigen::VectorXd& rhs, const SolverConfig& config) {
  const double rhs_inf = rhs.lpNorm<Eigen::Infinity>();
  const double target = config.tol * (rhs_inf > 0.0 ? rhs_inf : 1.0);

  if (config.linear == SolverConfig::Linear::ConjugateGradient) {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>> cg;
    cg.setTolerance(config.cg_tol);
    cg.setMaxIterations(config.cg_max_iters);
    cg.compute(A);
    if (cg.info() != Eigen::Success) throw NumericError("CG setup failed; matrix not usable");
    Eigen::VectorXd x = cg.solve(rhs);
    if (cg.info() != Eigen::Success)
      throw SolverError("CG did not converge within " + std::to_string(config.cg_max_iters) +
                        " iterations; final error " + std::to_string(cg.error()));
    const double res = (A * x - rhs).lpNorm<Eigen::Infinity>();
    if (res > target)
      throw SolverError("CG residual " + std::to_string(res) + " above tolerance");
    return x;
  }

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
  llt.compute(A);
  if (llt.info() != Eigen::Success)
    throw NumericError("Cholesky factorization failed; matrix is not positive definite");
  Eigen::VectorXd x = llt.solve(rhs);
  // One round of iterative refinement covers the occasional ill-conditioned case.
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd r = rhs - A * x;
    if (r.lpNorm<Eigen::Infinity>() <= target) return x;
    x += llt.solve(r);
  }
  const double res = (A * x - rhs).lpNorm<Eigen::Infinity>();
  if (res > target)
    throw SolverError("direct solve residual " + std::to_string(res) + " above tolerance " +
                      std::to_string(target));
  return x;
}

namespace {

Eigen::VectorXd residual_of(const SemilinearProblem& p, const Eigen::VectorXd& x) {
  Eigen::VectorXd r = -((*p.laplacian) * x).cwiseQuotient(p.areas).cwiseProduct(p.diffusion);
  for (Eigen::Index v = 0; v < x.size(); ++v) r(v) += p.f(static_cast<int>(v), x(v));
  return r;
}

}  // namespace

NewtonResult newton_solve(const SemilinearProblem& p, const SolverConfig& config) {
  const Eigen::Index n = p.areas.size();
  if (!p.laplacian || p.laplacian->rows() != n)
    throw DomainError("newton_solve: Laplacian size does not match areas");
  if ((p.diffusion.array() <= 0.0).any()) throw DomainError("newton_solve: diffusion must be > 0");

  Eigen::VectorXd x =
      p.initial_guess.size() == n ? p.initial_guess : Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = residual_of(p, x);
  double rnorm = r.lpNorm<Eigen::Infinity>();

  NewtonResult result;
  result.transcript.rows.push_back({0, rnorm, 0.0});

  for (int it = 1; it <= config.max_newton; ++it) {
    if (rnorm <= config.tol) break;

    // Symmetrized Newton system: scale row v by A_v/d_v so the Laplacian
    // block stays the symmetric L.
    Eigen::SparseMatrix<double> J = *p.laplacian;
    Eigen::VectorXd diag(n), scaled_r(n);
    for (Eigen::Index v = 0; v < n; ++v) {
      diag(v) = p.areas(v) * (-p.dfdx(static_cast<int>(v), x(v))) / p.diffusion(v);
      scaled_r(v) = p.areas(v) / p.diffusion(v) * r(v);
    }
    for (Eigen::Index v = 0; v < n; ++v) J.coeffRef(v, v) += diag(v);

    Eigen::VectorXd step = solve_linear_spd(J, scaled_r, config);

    double alpha = 1.0;
    bool accepted = false;
    for (int bt = 0; bt <= config.max_backtracks; ++bt) {
      const Eigen::VectorXd candidate = x + alpha * step;
      const Eigen::VectorXd rc = residual_of(p, candidate);
      const double rcn = rc.lpNorm<Eigen::Infinity>();
      if (rcn < rnorm || rcn <= config.tol) {
        x = candidate;
        r = rc;
        rnorm = rcn;
        accepted = true;
        break;
      }
      alpha *= config.backtrack;
    }
    if (!accepted)
      throw SolverError("Newton line search stagnated at residual " + std::to_string(rnorm) +
                        "\n" + result.transcript.to_csv());
    result.transcript.rows.push_back({it, rnorm, alpha});
  }

  if (rnorm > config.tol)
    throw SolverError("Newton did not reach tolerance " + std::to_string(config.tol) +
                      " in " + std::to_string(config.max_newton) + " iterations; residual " +
                      std::to_string(rnorm) + "\n" + result.transcript.to_csv());
  result.x = std::move(x);
  result.residual_inf = rnorm;
  return result;
}

}  // namespace adsvol
