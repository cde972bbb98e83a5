#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "adsvol/errors.hpp"
#include "adsvol/uniformize.hpp"

#include <cmath>

using namespace adsvol;

namespace {

struct Fixture {
  SurfaceMesh mesh = build_genus_surface(2, 2);
  CalibratedBackground bg = calibrate_background(mesh);
};

}  // namespace

TEST_CASE("Fuchsian slices uniformize to sigma = 1") {
  Fixture fx;
  DifferentialDensity zero = make_density(fx.mesh, DensitySpec::parse("zero"));
  for (double tau : {0.0, 1.0, -2.0}) {
    SliceGeometry s = generate_slice(fx.bg, zero, tau);
    ConformalFactor sig = solve_sigma(s);
    CHECK((sig.sigma.values.array() - 1.0).abs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("constant-coefficient slices: sigma = (1+tau^2)/(1+tau^2-c)") {
  Fixture fx;
  for (double tau : {0.0, 1.0}) {
    for (double c : {0.25, 0.5}) {
      const double q = 1.0 + tau * tau;
      SliceGeometry s = make_constant_slice(fx.bg, tau, c);
      ConformalFactor sig = solve_sigma(s);
      CHECK((sig.sigma.values.array() - q / (q - c)).abs().maxCoeff() < 1e-10);
      LapseField ell = solve_lapse(s);
      const double product = q / ((q + c) * (q - c));
      CHECK((sig.sigma.values.array() * ell.ell.values.array() - product)
                .abs()
                .maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("closed-form oracle: sigma = (1+tau^2) e^{2u} on generated slices") {
  Fixture fx;
  for (double amp : {0.05, 0.2}) {
    DensitySpec spec;
    spec.kind = DensitySpec::Kind::Bumps;
    spec.bumps = {{0, amp, 2.0}};
    DifferentialDensity n = make_density(fx.mesh, spec);
    for (double tau : {0.0, 0.5, 2.0}) {
      const double q = 1.0 + tau * tau;
      SliceGeometry s = generate_slice(fx.bg, n, tau);
      ConformalFactor sig = solve_sigma(s);
      Eigen::VectorXd oracle = q * (2.0 * s.u.values.array()).exp();
      const double rel = (sig.sigma.values - oracle).lpNorm<Eigen::Infinity>() /
                         sig.sigma.values.lpNorm<Eigen::Infinity>();
      CHECK(rel < 1e-9);  // frozen: worst 4.7e-12 on this grid
    }
  }
}

TEST_CASE("oracle initial guess converges to the same factor") {
  Fixture fx;
  DifferentialDensity n =
      make_density(fx.mesh, DensitySpec::parse("bump:center=0,amp=0.1,radius=2"));
  SliceGeometry s = generate_slice(fx.bg, n, 0.5);
  SolverConfig seeded;
  seeded.oracle_initial_guess = true;
  ConformalFactor a = solve_sigma(s);
  ConformalFactor b = solve_sigma(s, seeded);
  CHECK((a.sigma.values - b.sigma.values).lpNorm<Eigen::Infinity>() < 1e-9);
  CHECK(b.newton_iterations <= a.newton_iterations);
}

TEST_CASE("Ahlfors-Schwarz-Pick and product bounds hold with positive margin") {
  Fixture fx;
  DifferentialDensity n =
      make_density(fx.mesh, DensitySpec::parse("bump:center=0,amp=0.1,radius=2"));
  for (double tau : {0.0, 0.5, 2.0}) {
    SliceGeometry s = generate_slice(fx.bg, n, tau);
    ConformalFactor sig = solve_sigma(s);
    LapseField ell = solve_lapse(s);

    BoundReport rs = check_sigma_bound(sig, 1e-7);
    CHECK(rs.pass);
    CHECK(rs.extremum > 1.0);

    BoundReport rp = check_product_bound(sig, ell, tau, 1e-7);
    CHECK(rp.pass);
    CHECK(rp.margin > 0.0);
    CHECK(rp.bound == doctest::Approx(1.0 / (1.0 + tau * tau)).epsilon(1e-15));
  }
}

TEST_CASE("product margin grows with the bump amplitude") {
  Fixture fx;
  double prev = 0.0;
  for (double amp : {0.05, 0.1, 0.2}) {
    DensitySpec spec;
    spec.kind = DensitySpec::Kind::Bumps;
    spec.bumps = {{0, amp, 2.0}};
    SliceGeometry s = generate_slice(fx.bg, make_density(fx.mesh, spec), 0.5);
    ConformalFactor sig = solve_sigma(s);
    LapseField ell = solve_lapse(s);
    BoundReport rp = check_product_bound(sig, ell, 0.5, 1e-7);
    CHECK(rp.margin > prev);
    prev = rp.margin;
  }
  CHECK(prev > 1e-4);
}

TEST_CASE("combined identity: exact on Fuchsian slices, small on bumps") {
  Fixture fx;
  DifferentialDensity zero = make_density(fx.mesh, DensitySpec::parse("zero"));
  SliceGeometry sf = generate_slice(fx.bg, zero, 0.5);
  ConformalFactor sigf = solve_sigma(sf);
  LapseField ellf = solve_lapse(sf);
  CombinedResidualReport rf = check_combined_residual(sigf, ellf, sf, 1e-8);
  CHECK(rf.pass);
  CHECK(rf.discrepancy_inf < 1e-9);

  DifferentialDensity n =
      make_density(fx.mesh, DensitySpec::parse("bump:center=0,amp=0.1,radius=2"));
  SliceGeometry s = generate_slice(fx.bg, n, 0.5);
  ConformalFactor sig = solve_sigma(s);
  LapseField ell = solve_lapse(s);
  CombinedResidualReport r = check_combined_residual(sig, ell, s, 5e-4);
  CHECK(r.pass);
  CHECK(r.discrepancy_inf < 5e-4);  // frozen: 1.05e-4 at level 2
  CHECK(r.discrepancy_inf > 0.0);
}

TEST_CASE("combined residual shrinks under refinement") {
  double prev = 0.0;
  for (int level : {2, 3}) {
    SurfaceMesh m = build_genus_surface(2, level);
    CalibratedBackground bg = calibrate_background(m);
    DifferentialDensity n =
        make_density(m, DensitySpec::parse("bump:center=0,amp=0.1,radius=2"));
    SliceGeometry s = generate_slice(bg, n, 0.5);
    ConformalFactor sig = solve_sigma(s);
    LapseField ell = solve_lapse(s);
    CombinedResidualReport r = check_combined_residual(sig, ell, s, 1.0);
    if (level == 3) CHECK(r.discrepancy_inf < prev);
    prev = r.discrepancy_inf;
  }
}

TEST_CASE("mesh mismatch in the product check raises DomainError") {
  Fixture fx;
  SurfaceMesh other = build_genus_surface(2, 1);
  CalibratedBackground bg2 = calibrate_background(other);
  DifferentialDensity z1 = make_density(fx.mesh, DensitySpec::parse("zero"));
  DifferentialDensity z2 = make_density(other, DensitySpec::parse("zero"));
  SliceGeometry s1 = generate_slice(fx.bg, z1, 0.5);
  SliceGeometry s2 = generate_slice(bg2, z2, 0.5);
  ConformalFactor sig = solve_sigma(s1);
  LapseField ell = solve_lapse(s2);
  CHECK_THROWS_AS((void)check_product_bound(sig, ell, 0.5, 1e-7), DomainError);
}
