#include "adsvol/errors.hpp"
#include "adsvol/fuchsian.hpp"
#include "adsvol/lapse.hpp"
#include "adsvol/mesh.hpp"
#include "adsvol/slicegen.hpp"
#include "adsvol/uniformize.hpp"
#include "adsvol/volume.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

using namespace adsvol;

// Exit code contract: 0 pass, 1 bound violation, 2 domain, 3 resource, 4 solver.
constexpr int kExitBoundViolation = 1;
constexpr int kExitDomain = 2;
constexpr int kExitResource = 3;
constexpr int kExitSolver = 4;

struct MeshOptions {
  std::string path;
  int genus = 2;
  int level = 2;
};

struct CommonOptions {
  std::string config_path;
  double solver_tol = -1.0;  // <0 = keep default/config value
  int threads = -1;
};

void add_mesh_options(CLI::App* cmd, MeshOptions& opt) {
  cmd->add_option("--mesh", opt.path, "mesh JSON file (overrides --genus/--level)");
  cmd->add_option("--genus", opt.genus, "genus of the built surface (>= 2)");
  cmd->add_option("--level", opt.level, "refinement level of the built surface");
}

SurfaceMesh resolve_mesh(const MeshOptions& opt) {
  if (!opt.path.empty()) return load_mesh(opt.path);
  return build_genus_surface(opt.genus, opt.level);
}

// Precedence: flags > config file > defaults.
VerifyConfig resolve_config(const CommonOptions& opt) {
  VerifyConfig cfg;
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw DomainError("cannot open config file " + opt.config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("invalid config JSON: ") + e.what());
    }
    if (j.contains("solver_tol")) cfg.solver.tol = j["solver_tol"].get<double>();
    if (j.contains("max_newton")) cfg.solver.max_newton = j["max_newton"].get<int>();
    if (j.contains("bound_tol")) cfg.bound_tol = j["bound_tol"].get<double>();
    if (j.contains("total_tol_rel")) cfg.total_tol_rel = j["total_tol_rel"].get<double>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("linear_solver")) {
      const auto s = j["linear_solver"].get<std::string>();
      if (s == "direct") cfg.solver.linear = SolverConfig::Linear::Direct;
      else if (s == "cg") cfg.solver.linear = SolverConfig::Linear::ConjugateGradient;
      else throw DomainError("linear_solver must be 'direct' or 'cg'");
    }
  }
  if (opt.solver_tol > 0.0) cfg.solver.tol = opt.solver_tol;
  if (opt.threads >= 0) cfg.threads = opt.threads;
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open " + path + " for writing");
  out << content;
}

int cmd_mesh_build(const MeshOptions& mesh_opt, const std::string& out_path) {
  SurfaceMesh mesh = build_genus_surface(mesh_opt.genus, mesh_opt.level);
  const double gb = mesh.angle_defects.sum();
  const double expected = 2.0 * std::numbers::pi * mesh.euler_characteristic();
  std::cout << "V=" << mesh.num_vertices << " E=" << mesh.num_edges()
            << " F=" << mesh.num_faces() << " chi=" << mesh.euler_characteristic() << "\n"
            << "sum(defects)=" << gb << " 2*pi*chi=" << expected
            << " |rel err|=" << std::abs(gb - expected) / std::abs(expected) << "\n";
  if (!out_path.empty()) {
    save_mesh(mesh, out_path);
    std::cout << "wrote " << out_path << " (hash " << mesh_hash(mesh) << ")\n";
  }
  return 0;
}

int cmd_slice_gen(const MeshOptions& mesh_opt, const CommonOptions& common, double tau,
                  const std::string& nspec_text, const std::string& out_path) {
  const SurfaceMesh mesh = resolve_mesh(mesh_opt);
  const VerifyConfig cfg = resolve_config(common);
  const CalibratedBackground bg = calibrate_background(mesh, cfg.solver);
  const DifferentialDensity density = make_density(mesh, DensitySpec::parse(nspec_text));

  const SliceGeometry slice = generate_slice(bg, density, tau, cfg.solver);
  const LapseField ell = solve_lapse(slice, cfg.solver);
  const ConformalFactor sigma = solve_sigma(slice, cfg.solver);
  const double q = 1.0 + tau * tau;

  const BoundReport lb = check_lapse_bound(ell, tau, cfg.bound_tol / q);
  const BoundReport sb = check_sigma_bound(sigma, cfg.bound_tol);
  const BoundReport pb = check_product_bound(sigma, ell, tau, cfg.bound_tol / q);

  std::cout << "tau=" << tau << " V(tau)=" << slice_density(slice, ell) << "\n"
            << "min sigma      = " << sb.extremum << " (bound 1, margin " << sb.margin
            << ", " << (sb.pass ? "pass" : "FAIL") << ")\n"
            << "max lapse      = " << lb.extremum << " (bound " << lb.bound << ", margin "
            << lb.margin << ", " << (lb.pass ? "pass" : "FAIL") << ")\n"
            << "min sigma*ell  = " << pb.extremum << " (bound " << pb.bound << ", margin "
            << pb.margin << ", " << (pb.pass ? "pass" : "FAIL") << ")\n";
  if (!out_path.empty()) {
    const std::string mesh_ref =
        mesh_opt.path.empty() ? ("genus" + std::to_string(mesh_opt.genus) + "-level" +
                                 std::to_string(mesh_opt.level))
                              : mesh_opt.path;
    write_file(out_path,
               slice_to_json(slice, mesh_ref, &ell.ell.values, &sigma.sigma.values));
    std::cout << "wrote " << out_path << "\n";
  }
  return (lb.pass && sb.pass && pb.pass) ? 0 : kExitBoundViolation;
}

int cmd_slice_check(const MeshOptions& mesh_opt, const CommonOptions& common,
                    const std::string& in_path) {
  const SurfaceMesh mesh = resolve_mesh(mesh_opt);
  const VerifyConfig cfg = resolve_config(common);
  const CalibratedBackground bg = calibrate_background(mesh, cfg.solver);
  std::ifstream in(in_path);
  if (!in) throw DomainError("cannot open slice file " + in_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const LoadedSlice loaded = slice_from_json(ss.str(), bg);
  if (!loaded.lapse) throw SolverError("slice file has no lapse field to check");
  LapseField ell;
  ell.tau = loaded.slice.tau;
  ell.ell = {bg.mesh, *loaded.lapse};
  const double q = 1.0 + loaded.slice.tau * loaded.slice.tau;
  const BoundReport lb = check_lapse_bound(ell, loaded.slice.tau, cfg.bound_tol / q);
  bool ok = lb.pass;
  std::cout << "tau=" << loaded.slice.tau << " max lapse = " << lb.extremum << " (bound "
            << lb.bound << ", " << (lb.pass ? "pass" : "FAIL") << ")\n";
  if (loaded.sigma) {
    ConformalFactor sigma;
    sigma.tau = loaded.slice.tau;
    sigma.sigma = {bg.mesh, *loaded.sigma};
    const BoundReport sb = check_sigma_bound(sigma, cfg.bound_tol);
    const BoundReport pb = check_product_bound(sigma, ell, loaded.slice.tau, cfg.bound_tol / q);
    ok = ok && sb.pass && pb.pass;
    std::cout << "min sigma = " << sb.extremum << " (" << (sb.pass ? "pass" : "FAIL")
              << "), min sigma*ell = " << pb.extremum << " (" << (pb.pass ? "pass" : "FAIL")
              << ")\n";
  }
  return ok ? 0 : kExitBoundViolation;
}

int report_out(const VolumeReport& report, const std::string& out_dir) {
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_file(out_dir + "/report.json", report.to_json());
    write_file(out_dir + "/report.csv", report.to_csv());
    std::cout << "wrote " << out_dir << "/report.{json,csv}\n";
  }
  return report.pass ? 0 : kExitBoundViolation;
}

int cmd_verify(const MeshOptions& mesh_opt, const CommonOptions& common,
               const std::string& nspec_text, int nodes, const std::string& out_dir) {
  const SurfaceMesh mesh = resolve_mesh(mesh_opt);
  const VolumeReport report =
      verify_theorem(mesh, DensitySpec::parse(nspec_text), nodes, resolve_config(common));
  std::cout << "total volume = " << report.total << ", bound pi^2|chi| = " << report.bound
            << ", margin = " << report.margin << ", " << (report.pass ? "PASS" : "FAIL")
            << "\n";
  if (!report.pass) {
    for (const auto& r : report.rows)
      if (!r.pass)
        std::cout << "  bound violation at tau=" << r.tau << " (min_sigma=" << r.min_sigma
                  << " max_lapse=" << r.max_lapse << " min_product=" << r.min_product << ")\n";
  }
  return report_out(report, out_dir);
}

int cmd_sweep(const MeshOptions& mesh_opt, const CommonOptions& common,
              const std::string& nspec_text, double tau_min, double tau_max, int steps,
              const std::string& out_dir) {
  const SurfaceMesh mesh = resolve_mesh(mesh_opt);
  const VolumeReport report = sweep_tau(mesh, DensitySpec::parse(nspec_text), tau_min, tau_max,
                                        steps, resolve_config(common));
  std::cout << report.to_csv();
  return report_out(report, out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verifier of the volume bound for MGHC AdS 3-manifolds"};
  app.require_subcommand(1);

  MeshOptions mesh_opt;
  CommonOptions common;
  std::string out_path, out_dir, nspec = "zero", slice_in;
  double tau = 0.0, tau_min = -3.0, tau_max = 3.0;
  int nodes = 64, steps = 25;

  auto* mesh_cmd = app.add_subcommand("mesh", "mesh utilities");
  auto* mesh_build = mesh_cmd->add_subcommand("build", "build a genus-g surface mesh");
  mesh_build->add_option("--genus", mesh_opt.genus, "genus (>= 2)");
  mesh_build->add_option("--level", mesh_opt.level, "refinement level");
  mesh_build->add_option("--out", out_path, "output mesh JSON path");

  auto* slice_cmd = app.add_subcommand("slice", "single-slice operations");
  auto* slice_gen = slice_cmd->add_subcommand("gen", "generate and solve one CMC slice");
  add_mesh_options(slice_gen, mesh_opt);
  slice_gen->add_option("--tau", tau, "mean curvature of the slice");
  slice_gen->add_option("--n", nspec, "density spec (zero | bump:... | bumps:... | file:...)");
  slice_gen->add_option("--out", out_path, "output slice JSON path");
  slice_gen->add_option("--config", common.config_path, "config JSON file");
  slice_gen->add_option("--tol", common.solver_tol, "solver tolerance");

  auto* slice_check = slice_cmd->add_subcommand("check", "re-check bounds of a stored slice");
  add_mesh_options(slice_check, mesh_opt);
  slice_check->add_option("--in", slice_in, "slice JSON path")->required();
  slice_check->add_option("--config", common.config_path, "config JSON file");

  auto* verify = app.add_subcommand("verify", "full volume-bound verification sweep");
  add_mesh_options(verify, mesh_opt);
  verify->add_option("--n-spec", nspec, "density spec");
  verify->add_option("--nodes", nodes, "tau quadrature nodes");
  verify->add_option("--out", out_dir, "output report directory");
  verify->add_option("--config", common.config_path, "config JSON file");
  verify->add_option("--tol", common.solver_tol, "solver tolerance");
  verify->add_option("--threads", common.threads, "worker threads (0 = auto)");

  auto* sweep = app.add_subcommand("sweep", "uniform tau sweep of the margins");
  add_mesh_options(sweep, mesh_opt);
  sweep->add_option("--n-spec", nspec, "density spec");
  sweep->add_option("--tau-min", tau_min, "sweep start");
  sweep->add_option("--tau-max", tau_max, "sweep end");
  sweep->add_option("--steps", steps, "number of grid points");
  sweep->add_option("--out", out_dir, "output report directory");
  sweep->add_option("--config", common.config_path, "config JSON file");
  sweep->add_option("--threads", common.threads, "worker threads (0 = auto)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mesh_build->parsed()) return cmd_mesh_build(mesh_opt, out_path);
    if (slice_gen->parsed()) return cmd_slice_gen(mesh_opt, common, tau, nspec, out_path);
    if (slice_check->parsed()) return cmd_slice_check(mesh_opt, common, slice_in);
    if (verify->parsed()) return cmd_verify(mesh_opt, common, nspec, nodes, out_dir);
    if (sweep->parsed())
      return cmd_sweep(mesh_opt, common, nspec, tau_min, tau_max, steps, out_dir);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
