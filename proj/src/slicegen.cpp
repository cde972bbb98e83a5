#include "adsvol/slicegen.hpp"

#include "adsvol/errors.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

namespace adsvol {

namespace {

std::vector<double> hop_distances(const SurfaceMesh& mesh, int source) {
  std::vector<double> dist(mesh.num_vertices, -1.0);
  std::vector<std::vector<int>> adj(mesh.num_vertices);
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const int a = mesh.edge_verts(e, 0), b = mesh.edge_verts(e, 1);
    if (a != b) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  }
  std::deque<int> queue{source};
  dist[source] = 0.0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (dist[w] < 0.0) {
        dist[w] = dist[v] + 1.0;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

double parse_double(const std::string& s) {
  size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw DomainError("bad number in density spec: " + s);
  return v;
}

}  // namespace

DensitySpec DensitySpec::parse(const std::string& text) {
  DensitySpec spec;
  if (text == "zero" || text.empty()) {
    spec.kind = Kind::Zero;
    return spec;
  }
  if (text.rfind("file:", 0) == 0) {
    spec.kind = Kind::File;
    spec.path = text.substr(5);
    if (spec.path.empty()) throw DomainError("file density spec needs a path");
    return spec;
  }
  if (text.rfind("bump:", 0) == 0) {
    spec.kind = Kind::Bumps;
    Bump b;
    std::stringstream ss(text.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw DomainError("bump spec expects key=value: " + item);
      const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
      if (key == "center") b.center = static_cast<int>(parse_double(val));
      else if (key == "amp") b.amplitude = parse_double(val);
      else if (key == "radius") b.radius_hops = parse_double(val);
      else throw DomainError("unknown bump key: " + key);
    }
    if (b.amplitude < 0.0 || b.radius_hops <= 0.0)
      throw DomainError("bump needs amp >= 0 and radius > 0");
    spec.bumps.push_back(b);
    return spec;
  }
  if (text.rfind("bumps:", 0) == 0) {
    spec.kind = Kind::Bumps;
    std::stringstream ss(text.substr(6));
    std::string item;
    while (std::getline(ss, item, ';')) {
      std::stringstream fs(item);
      std::string c, a, r;
      if (!std::getline(fs, c, ':') || !std::getline(fs, a, ':') || !std::getline(fs, r, ':'))
        throw DomainError("bumps spec expects center:amp:radius groups: " + item);
      Bump b{static_cast<int>(parse_double(c)), parse_double(a), parse_double(r)};
      if (b.amplitude < 0.0 || b.radius_hops <= 0.0)
        throw DomainError("bump needs amp >= 0 and radius > 0");
      spec.bumps.push_back(b);
    }
    if (spec.bumps.empty()) throw DomainError("bumps spec is empty");
    return spec;
  }
  throw DomainError("unknown density spec: " + text);
}

std::string DensitySpec::to_string() const {
  switch (kind) {
    case Kind::Zero:
      return "zero";
    case Kind::File:
      return "file:" + path;
    case Kind::Bumps: {
      std::ostringstream os;
      os << "bumps:";
      for (size_t i = 0; i < bumps.size(); ++i) {
        if (i) os << ';';
        os << bumps[i].center << ':' << bumps[i].amplitude << ':' << bumps[i].radius_hops;
      }
      return os.str();
    }
  }
  return "zero";
}

DifferentialDensity make_density(const SurfaceMesh& mesh, const DensitySpec& spec) {
  DifferentialDensity d;
  d.field.mesh = &mesh;
  d.field.values = Eigen::VectorXd::Zero(mesh.num_vertices);
  d.provenance = spec.to_string();
  if (spec.kind == DensitySpec::Kind::Zero) return d;
  if (spec.kind == DensitySpec::Kind::File) {
    std::ifstream in(spec.path);
    if (!in) throw DomainError("cannot open density file " + spec.path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("invalid density JSON: ") + e.what());
    }
    const auto vals = j.at("N").get<std::vector<double>>();
    if (static_cast<int>(vals.size()) != mesh.num_vertices)
      throw DomainError("density file length does not match mesh vertex count");
    for (int v = 0; v < mesh.num_vertices; ++v) d.field.values(v) = vals[v];
  } else {
    for (const Bump& b : spec.bumps) {
      if (b.center < 0 || b.center >= mesh.num_vertices)
        throw DomainError("bump center out of range");
      if (b.amplitude < 0.0) throw DomainError("bump amplitude must be >= 0");
      if (b.radius_hops <= 0.0) throw DomainError("bump radius must be > 0");
      const auto hops = hop_distances(mesh, b.center);
      for (int v = 0; v < mesh.num_vertices; ++v) {
        const double t = hops[v] / b.radius_hops;
        if (t <= 3.0) d.field.values(v) += b.amplitude * std::exp(-t * t);
      }
    }
  }
  if ((d.field.values.array() < 0.0).any()) throw DomainError("density must be nonnegative");
  return d;
}

CalibratedBackground calibrate_background(const SurfaceMesh& mesh, const SolverConfig& config) {
  CalibratedBackground bg;
  bg.mesh = &mesh;
  bg.laplacian = cotan_laplacian(mesh);

  const ScalarField kh = vertex_curvature_background(mesh);

  // Uniformize the raw background to curvature exactly -1:
  //   lap u0 = K_h + e^{2 u0}.
  SemilinearProblem prob;
  prob.laplacian = &bg.laplacian.matrix;
  prob.areas = mesh.vertex_areas;
  prob.diffusion = Eigen::VectorXd::Ones(mesh.num_vertices);
  prob.f = [&kh](int v, double x) { return -kh.values(v) - std::exp(2.0 * x); };
  prob.dfdx = [](int, double x) { return -2.0 * std::exp(2.0 * x); };
  prob.initial_guess = Eigen::VectorXd::Zero(mesh.num_vertices);

  SolverConfig tight = config;
  tight.tol = std::min(config.tol, 1e-12);
  NewtonResult res = newton_solve(prob, tight);

  bg.u0.mesh = &mesh;
  bg.u0.values = res.x;
  // Integrated-curvature areas: exactly -1 * area_v of curvature mass, summing
  // to 2*pi*|chi| up to rounding.
  bg.areas = -mesh.angle_defects + bg.laplacian.matrix * res.x;
  if ((bg.areas.array() <= 0.0).any())
    throw NumericError("calibrated vertex areas are not positive; mesh too coarse");
  bg.total_area = bg.areas.sum();
  return bg;
}

SliceGeometry generate_slice(const CalibratedBackground& bg, const DifferentialDensity& N,
                             double tau, const SolverConfig& config, double tol_geom) {
  const SurfaceMesh& mesh = *bg.mesh;
  if (N.field.mesh != &mesh) throw DomainError("density does not live on this mesh");
  if ((N.field.values.array() < 0.0).any()) throw DomainError("density must be nonnegative");

  const double q = 1.0 + tau * tau;

  // Multiply the Gauss equation by e^{2u}:
  //   lap u = -1 + q e^{2u} - N e^{-2u}   (curvature of h~ is -1 by calibration)
  SemilinearProblem prob;
  prob.laplacian = &bg.laplacian.matrix;
  prob.areas = bg.areas;
  prob.diffusion = Eigen::VectorXd::Ones(mesh.num_vertices);
  prob.f = [&N, q](int v, double x) {
    return 1.0 - q * std::exp(2.0 * x) + N.field.values(v) * std::exp(-2.0 * x);
  };
  prob.dfdx = [&N, q](int v, double x) {
    return -2.0 * q * std::exp(2.0 * x) - 2.0 * N.field.values(v) * std::exp(-2.0 * x);
  };
  prob.initial_guess = Eigen::VectorXd::Constant(mesh.num_vertices, -0.5 * std::log(q));

  // Residuals of this equation scale with q, so the target scales with it too.
  SolverConfig tight = config;
  tight.tol = std::min(config.tol, 1e-12) * std::max(1.0, q);
  NewtonResult res = newton_solve(prob, tight);

  SliceGeometry slice;
  slice.tau = tau;
  slice.mesh = &mesh;
  slice.bg_areas = bg.areas;
  slice.u_bg = bg.u0;
  slice.u.mesh = &mesh;
  slice.u.values = res.x;
  // K from the discrete conformal identity, so slice Gauss-Bonnet is exact:
  //   K = e^{-2u} (-1 + (L u)_v / area_v).
  const Eigen::VectorXd lap_term = (bg.laplacian.matrix * res.x).cwiseQuotient(bg.areas);
  slice.K.mesh = &mesh;
  slice.K.values = (-2.0 * res.x.array()).exp() * (lap_term.array() - 1.0);
  slice.W.mesh = &mesh;
  slice.W.values = slice.K.values.array() + q;
  slice.provenance = "n=" + N.provenance + " tau=" + std::to_string(tau);
  slice.newton_iterations = static_cast<int>(res.transcript.rows.size()) - 1;

  // W = K + 1 + tau^2 is computed as a difference of terms of size q, so the
  // admissible negative slack scales with q.
  if ((slice.W.values.array() < -tol_geom * q).any())
    throw NumericError("generated slice has W < -tol_geom*(1+tau^2); solver fault");
  return slice;
}

SliceGeometry generate_slice(const SurfaceMesh& mesh, const DifferentialDensity& N,
                             double tau, const SolverConfig& config) {
  return generate_slice(calibrate_background(mesh, config), N, tau, config);
}

SliceGeometry make_constant_slice(const CalibratedBackground& bg, double tau, double c) {
  SliceGeometry slice;
  slice.tau = tau;
  slice.mesh = bg.mesh;
  slice.bg_areas = bg.areas;
  slice.u_bg = bg.u0;
  slice.u.mesh = bg.mesh;
  slice.u.values = Eigen::VectorXd::Zero(bg.mesh->num_vertices);
  slice.K.mesh = bg.mesh;
  slice.K.values = Eigen::VectorXd::Constant(bg.mesh->num_vertices, -(1.0 + tau * tau) + c);
  slice.W.mesh = bg.mesh;
  slice.W.values = Eigen::VectorXd::Constant(bg.mesh->num_vertices, c);
  slice.provenance = "constant c=" + std::to_string(c) + " tau=" + std::to_string(tau);
  return slice;
}

std::vector<ShapeOperatorSample> shape_samples(const SliceGeometry& slice, double tol_geom) {
  std::vector<ShapeOperatorSample> out;
  out.reserve(slice.W.values.size());
  for (Eigen::Index v = 0; v < slice.W.values.size(); ++v) {
    const double w = slice.W.values(v);
    if (w < -tol_geom * (1.0 + slice.tau * slice.tau))
      throw NumericError("W < -tol_geom at vertex " + std::to_string(v));
    const double s = std::sqrt(std::max(0.0, w));
    out.push_back({slice.tau + s, 0.0, slice.tau - s});
  }
  return out;
}

std::string slice_to_json(const SliceGeometry& slice, const std::string& mesh_ref,
                          const Eigen::VectorXd* lapse, const Eigen::VectorXd* sigma) {
  nlohmann::json j;
  j["tau"] = slice.tau;
  auto vec = [](const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  j["u"] = vec(slice.u.values);
  j["K"] = vec(slice.K.values);
  j["W"] = vec(slice.W.values);
  j["mesh_ref"] = mesh_ref;
  if (lapse) j["lapse"] = vec(*lapse);
  if (sigma) j["sigma"] = vec(*sigma);
  return j.dump();
}

LoadedSlice slice_from_json(const std::string& text, const CalibratedBackground& bg) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw SolverError(std::string("invalid slice JSON: ") + e.what());
  }
  LoadedSlice out;
  try {
    out.slice.tau = j.at("tau").get<double>();
    auto field = [&](const char* key) {
      const auto vals = j.at(key).get<std::vector<double>>();
      if (static_cast<int>(vals.size()) != bg.mesh->num_vertices)
        throw SolverError(std::string(key) + " length does not match mesh");
      return Eigen::Map<const Eigen::VectorXd>(vals.data(), vals.size()).eval();
    };
    out.slice.mesh = bg.mesh;
    out.slice.bg_areas = bg.areas;
    out.slice.u_bg = bg.u0;
    out.slice.u = {bg.mesh, field("u")};
    out.slice.K = {bg.mesh, field("K")};
    out.slice.W = {bg.mesh, field("W")};
    out.mesh_ref = j.at("mesh_ref").get<std::string>();
    if (j.contains("lapse")) out.lapse = field("lapse");
    if (j.contains("sigma")) out.sigma = field("sigma");
  } catch (const nlohmann::json::exception& e) {
    throw SolverError(std::string("slice JSON missing fields: ") + e.what());
  }
  for (const auto* f : {&out.slice.u.values, &out.slice.K.values, &out.slice.W.values}) {
    if (!f->allFinite()) throw SolverError("slice file contains non-finite values");
  }
  return out;
}

}  // namespace adsvol
