#include "adsvol/mesh.hpp"

#include "adsvol/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>
#include <vector>

namespace adsvol {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Vector3d disk_to_hyperboloid(const Eigen::Vector2d& z) {
  const double s = 1.0 - z.squaredNorm();
  return Eigen::Vector3d(2.0 * z.x() / s, 2.0 * z.y() / s, (1.0 + z.squaredNorm()) / s);
}

Eigen::Vector2d hyperboloid_to_disk(const Eigen::Vector3d& p) {
  return Eigen::Vector2d(p.x() / (1.0 + p.z()), p.y() / (1.0 + p.z()));
}

double minkowski(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return a.x() * b.x() + a.y() * b.y() - a.z() * b.z();
}

}  // namespace

double hyperbolic_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const double num = 2.0 * (a - b).squaredNorm();
  const double den = (1.0 - a.squaredNorm()) * (1.0 - b.squaredNorm());
  return std::acosh(1.0 + num / den);
}

Eigen::Vector2d hyperbolic_midpoint(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector3d s = disk_to_hyperboloid(a) + disk_to_hyperboloid(b);
  return hyperboloid_to_disk(s / std::sqrt(-minkowski(s, s)));
}

bool SurfaceMesh::is_simplicial() const {
  std::map<std::pair<int, int>, int> seen;
  for (int e = 0; e < num_edges(); ++e) {
    int a = edge_verts(e, 0), b = edge_verts(e, 1);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    if (++seen[{a, b}] > 1) return false;
  }
  return true;
}

FaceGeometry face_geometry(const Eigen::Matrix<int, Eigen::Dynamic, 3>& faces,
                           const Eigen::Matrix<double, Eigen::Dynamic, 3>& slot_lengths) {
  const auto F = faces.rows();
  FaceGeometry g;
  g.corner_angles.resize(F, 3);
  g.face_areas.resize(F);
  for (Eigen::Index f = 0; f < F; ++f) {
    const double l0 = slot_lengths(f, 0), l1 = slot_lengths(f, 1), l2 = slot_lengths(f, 2);
    if (!(l0 + l1 > l2 && l1 + l2 > l0 && l2 + l0 > l1)) {
      throw DomainError("face " + std::to_string(f) + " violates the triangle inequality");
    }
    // Angle at corner s sits between slot s and slot s+2, opposite slot s+1.
    for (int s = 0; s < 3; ++s) {
      const double adj1 = slot_lengths(f, s);
      const double adj2 = slot_lengths(f, (s + 2) % 3);
      const double opp = slot_lengths(f, (s + 1) % 3);
      double c = (adj1 * adj1 + adj2 * adj2 - opp * opp) / (2.0 * adj1 * adj2);
      c = std::clamp(c, -1.0, 1.0);
      g.corner_angles(f, s) = std::acos(c);
    }
    const double p = 0.5 * (l0 + l1 + l2);
    g.face_areas(f) = std::sqrt(std::max(0.0, p * (p - l0) * (p - l1) * (p - l2)));
  }
  return g;
}

Eigen::SparseMatrix<double> cotan_matrix(const Eigen::Matrix<int, Eigen::Dynamic, 3>& faces,
                                         const Eigen::Matrix<double, Eigen::Dynamic, 3>& slot_lengths,
                                         int num_vertices, double degenerate_tol) {
  const FaceGeometry geo = face_geometry(faces, slot_lengths);
  std::vector<Eigen::Index> bad;
  for (Eigen::Index f = 0; f < faces.rows(); ++f) {
    for (int s = 0; s < 3; ++s) {
      if (geo.corner_angles(f, s) >= kPi - degenerate_tol) bad.push_back(f);
    }
  }
  if (!bad.empty()) {
    std::ostringstream os;
    os << "degenerate faces in cotan assembly:";
    for (auto f : bad) os << ' ' << f;
    throw NumericError(os.str());
  }
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(faces.rows() * 12);
  for (Eigen::Index f = 0; f < faces.rows(); ++f) {
    for (int s = 0; s < 3; ++s) {
      const int i = faces(f, s), j = faces(f, (s + 1) % 3);
      const double w = 0.5 / std::tan(geo.corner_angles(f, (s + 2) % 3));
      if (i != j) {
        trips.emplace_back(i, j, -w);
        trips.emplace_back(j, i, -w);
        trips.emplace_back(i, i, w);
        trips.emplace_back(j, j, w);
      }
      // Loop edges (coarse quotient meshes) contribute nothing: u_i - u_i = 0.
    }
  }
  Eigen::SparseMatrix<double> L(num_vertices, num_vertices);
  L.setFromTriplets(trips.begin(), trips.end());
  L.makeCompressed();
  return L;
}

SurfaceMesh make_surface_mesh(int genus,
                              Eigen::Matrix<int, Eigen::Dynamic, 3> faces,
                              Eigen::Matrix<int, Eigen::Dynamic, 3> face_edges,
                              Eigen::Matrix<int, Eigen::Dynamic, 2> edge_verts,
                              Eigen::VectorXd edge_lengths) {
  if (genus < 2) throw DomainError("genus must be >= 2");
  SurfaceMesh m;
  m.genus = genus;
  m.faces = std::move(faces);
  m.face_edges = std::move(face_edges);
  m.edge_verts = std::move(edge_verts);
  m.edge_lengths = std::move(edge_lengths);

  int maxv = -1;
  for (Eigen::Index f = 0; f < m.faces.rows(); ++f)
    for (int s = 0; s < 3; ++s) maxv = std::max(maxv, m.faces(f, s));
  m.num_vertices = maxv + 1;

  if (m.edge_lengths.size() != m.edge_verts.rows())
    throw DomainError("edge length count does not match edge count");
  if ((m.edge_lengths.array() <= 0.0).any()) throw DomainError("edge lengths must be positive");

  // Closed oriented 2-manifold: each edge instance is claimed by exactly two
  // face slots traversing it in opposite directions.
  std::vector<int> claims(m.num_edges(), 0);
  std::vector<int> first_dir(m.num_edges(), 0);
  for (Eigen::Index f = 0; f < m.faces.rows(); ++f) {
    for (int s = 0; s < 3; ++s) {
      const int e = m.face_edges(f, s);
      if (e < 0 || e >= m.num_edges()) throw DomainError("face references unknown edge");
      const int a = m.faces(f, s), b = m.faces(f, (s + 1) % 3);
      const int ea = m.edge_verts(e, 0), eb = m.edge_verts(e, 1);
      int dir;
      if (a == ea && b == eb) dir = +1;
      else if (a == eb && b == ea) dir = -1;
      else throw DomainError("face slot endpoints do not match its edge");
      claims[e] += 1;
      if (claims[e] == 1) first_dir[e] = dir;
      else if (claims[e] == 2 && ea != eb && dir == first_dir[e])
        throw DomainError("edge " + std::to_string(e) + " traversed twice in the same direction");
    }
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    if (claims[e] != 2)
      throw DomainError("edge " + std::to_string(e) + " borders " + std::to_string(claims[e]) +
                        " faces; mesh is not a closed manifold");
  }
  if (m.euler_characteristic() != 2 - 2 * genus)
    throw DomainError("Euler characteristic " + std::to_string(m.euler_characteristic()) +
                      " does not match genus " + std::to_string(genus));

  Eigen::Matrix<double, Eigen::Dynamic, 3> slot_len(m.faces.rows(), 3);
  for (Eigen::Index f = 0; f < m.faces.rows(); ++f)
    for (int s = 0; s < 3; ++s) slot_len(f, s) = m.edge_lengths(m.face_edges(f, s));

  const FaceGeometry geo = face_geometry(m.faces, slot_len);
  m.corner_angles = geo.corner_angles;
  m.face_areas = geo.face_areas;

  m.vertex_areas = Eigen::VectorXd::Zero(m.num_vertices);
  m.angle_defects = Eigen::VectorXd::Constant(m.num_vertices, 2.0 * kPi);
  for (Eigen::Index f = 0; f < m.faces.rows(); ++f) {
    for (int s = 0; s < 3; ++s) {
      m.vertex_areas(m.faces(f, s)) += m.face_areas(f) / 3.0;
      m.angle_defects(m.faces(f, s)) -= m.corner_angles(f, s);
    }
  }
  if ((m.vertex_areas.array() <= 0.0).any()) throw DomainError("non-positive vertex area");

  m.cotan_weights = Eigen::VectorXd::Zero(m.num_edges());
  for (Eigen::Index f = 0; f < m.faces.rows(); ++f)
    for (int s = 0; s < 3; ++s)
      m.cotan_weights(m.face_edges(f, s)) += 0.5 / std::tan(m.corner_angles(f, (s + 2) % 3));

  return m;
}

LaplaceOperator cotan_laplacian(const SurfaceMesh& mesh) {
  Eigen::Matrix<double, Eigen::Dynamic, 3> slot_len(mesh.faces.rows(), 3);
  for (Eigen::Index f = 0; f < mesh.faces.rows(); ++f)
    for (int s = 0; s < 3; ++s) slot_len(f, s) = mesh.edge_lengths(mesh.face_edges(f, s));
  LaplaceOperator op;
  op.matrix = cotan_matrix(mesh.faces, slot_len, mesh.num_vertices);
  op.mesh = &mesh;
  return op;
}

ScalarField vertex_curvature_background(const SurfaceMesh& mesh) {
  ScalarField k;
  k.mesh = &mesh;
  k.values = mesh.angle_defects.array() / mesh.vertex_areas.array();
  return k;
}

ScalarField gradient_norm_sq(const SurfaceMesh& mesh, const ScalarField& u,
                             const ScalarField& conformal_u) {
  if (u.mesh != &mesh || conformal_u.mesh != &mesh)
    throw DomainError("gradient_norm_sq: fields do not live on this mesh");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(mesh.num_vertices);
  for (Eigen::Index f = 0; f < mesh.faces.rows(); ++f) {
    const double lij = mesh.edge_lengths(mesh.face_edges(f, 0));
    const double ljk = mesh.edge_lengths(mesh.face_edges(f, 1));
    const double lki = mesh.edge_lengths(mesh.face_edges(f, 2));
    // Local isometric layout from lengths.
    const double xk = (lij * lij + lki * lki - ljk * ljk) / (2.0 * lij);
    const double yk = std::sqrt(std::max(0.0, lki * lki - xk * xk));
    if (yk <= 0.0) throw NumericError("degenerate face " + std::to_string(f) + " in gradient");
    const int i = mesh.faces(f, 0), j = mesh.faces(f, 1), k = mesh.faces(f, 2);
    const double duj = u.values(j) - u.values(i);
    const double duk = u.values(k) - u.values(i);
    const double gx = duj / lij;
    const double gy = (duk - gx * xk) / yk;
    const double g2 = gx * gx + gy * gy;
    const double w = mesh.face_areas(f) / 3.0;
    acc(i) += g2 * w;
    acc(j) += g2 * w;
    acc(k) += g2 * w;
  }
  ScalarField out;
  out.mesh = &mesh;
  out.values = (acc.array() / mesh.vertex_areas.array()) *
               (-2.0 * conformal_u.values.array()).exp();
  return out;
}

// ---------------------------------------------------------------------------
// Fundamental-polygon builder.

namespace {

// Side pairing of the canonical relator a1 b1 a1^-1 b1^-1 ... :
// side 4k <-> 4k+2 and 4k+1 <-> 4k+3, each with reversal.
int paired_side(int s) { return (s % 4 < 2) ? s + 2 : s - 2; }

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { for (int i = 0; i < n; ++i) parent[i] = i; }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct LocalVertex {
  Eigen::Vector2d z;
  // Dyadic positions (numerator over 2^level) along the incident
  // polygon side / spokes of this fan triangle; -1 = not on it.
  int side = -1;
  int spoke_a = -1;  // spoke to corner f
  int spoke_b = -1;  // spoke to corner f+1
};

// Global vertex / edge keys for gluing the refined fans.
// kind: 0 center, 1 corner, 2 spoke(j,k), 3 side(j,k), 4 inner(f,local)
using Key = std::tuple<int, int, int>;

}  // namespace

SurfaceMesh build_genus_surface(int genus, int level, int vertex_cap) {
  if (genus < 2) throw DomainError("genus must be >= 2");
  if (level < 0) throw DomainError("refinement level must be >= 0");
  const int n = 4 * genus;
  const int D = 1 << level;
  {
    // F = n*4^level; V = chi + E - F with E = 3F/2.
    const long long F = static_cast<long long>(n) << (2 * level);
    const long long V = (2 - 2 * genus) + F / 2;
    if (V > vertex_cap)
      throw ResourceError("refinement level " + std::to_string(level) + " needs " +
                          std::to_string(V) + " vertices, above the cap of " +
                          std::to_string(vertex_cap));
  }

  // All 4g corners must identify to a single smooth vertex.
  UnionFind uf(n);
  for (int s = 0; s < n; ++s) {
    const int p = paired_side(s);
    uf.unite(s, (p + 1) % n);
    uf.unite((s + 1) % n, p);
  }
  for (int s = 1; s < n; ++s) {
    if (uf.find(s) != uf.find(0))
      throw DomainError("side pairing does not identify all polygon corners");
  }

  // Regular 4g-gon with interior angle pi/(2g): corner distance R from the
  // center satisfies cosh R = cot^2(pi/(4g)) (right-triangle trigonometry).
  const double coshR = 1.0 / std::pow(std::tan(kPi / (4.0 * genus)), 2);
  const double R = std::acosh(coshR);
  const double re = std::tanh(R / 2.0);
  std::vector<Eigen::Vector2d> corner(n);
  for (int j = 0; j < n; ++j) {
    const double th = 2.0 * kPi * j / n;
    corner[j] = re * Eigen::Vector2d(std::cos(th), std::sin(th));
  }

  std::map<Key, int> vid;
  auto global_vertex = [&](const Key& key) {
    auto it = vid.find(key);
    if (it != vid.end()) return it->second;
    const int id = static_cast<int>(vid.size());
    vid.emplace(key, id);
    return id;
  };
  // Center and corner first for stable ids.
  global_vertex({0, 0, 0});
  global_vertex({1, 0, 0});

  std::map<Key, int> eid;
  std::vector<std::array<int, 2>> edge_ends;
  std::vector<double> edge_len;
  auto global_edge = [&](const Key& key, int va, int vb, double len) {
    auto it = eid.find(key);
    if (it != eid.end()) {
      const auto& ends = edge_ends[it->second];
      if (!((ends[0] == va && ends[1] == vb) || (ends[0] == vb && ends[1] == va)))
        throw DomainError("inconsistent edge gluing in polygon construction");
      return it->second;
    }
    const int id = static_cast<int>(edge_ends.size());
    eid.emplace(key, id);
    edge_ends.push_back({va, vb});
    edge_len.push_back(len);
    return id;
  };

  std::vector<std::array<int, 3>> out_faces;
  std::vector<std::array<int, 3>> out_face_edges;

  for (int f = 0; f < n; ++f) {
    std::vector<LocalVertex> lv;
    lv.push_back({Eigen::Vector2d::Zero(), -1, 0, 0});        // center
    lv.push_back({corner[f], 0, D, -1});                      // P_f
    lv.push_back({corner[(f + 1) % n], D, -1, D});            // P_{f+1}
    std::vector<std::array<int, 3>> tris = {{0, 1, 2}};

    for (int step = 0; step < level; ++step) {
      std::map<std::pair<int, int>, int> mid_of;
      auto midpoint = [&](int a, int b) {
        const auto k = std::minmax(a, b);
        auto it = mid_of.find({k.first, k.second});
        if (it != mid_of.end()) return it->second;
        LocalVertex m;
        m.z = hyperbolic_midpoint(lv[a].z, lv[b].z);
        auto half = [](int x, int y) { return (x >= 0 && y >= 0) ? (x + y) / 2 : -1; };
        m.side = half(lv[a].side, lv[b].side);
        m.spoke_a = half(lv[a].spoke_a, lv[b].spoke_a);
        m.spoke_b = half(lv[a].spoke_b, lv[b].spoke_b);
        const int id = static_cast<int>(lv.size());
        lv.push_back(m);
        mid_of[{k.first, k.second}] = id;
        return id;
      };
      std::vector<std::array<int, 3>> next;
      next.reserve(tris.size() * 4);
      for (const auto& t : tris) {
        const int m01 = midpoint(t[0], t[1]);
        const int m12 = midpoint(t[1], t[2]);
        const int m20 = midpoint(t[2], t[0]);
        next.push_back({t[0], m01, m20});
        next.push_back({t[1], m12, m01});
        next.push_back({t[2], m20, m12});
        next.push_back({m01, m12, m20});
      }
      tris = std::move(next);
    }

    // Global vertex ids for this fan's local vertices.
    std::vector<int> gv(lv.size());
    for (size_t i = 0; i < lv.size(); ++i) {
      const LocalVertex& v = lv[i];
      Key key;
      if (v.spoke_a == 0 || v.spoke_b == 0) key = {0, 0, 0};
      else if (v.spoke_a == D || v.spoke_b == D) key = {1, 0, 0};
      else if (v.spoke_a > 0) key = {2, f, v.spoke_a};
      else if (v.spoke_b > 0) key = {2, (f + 1) % n, v.spoke_b};
      else if (v.side > 0 && v.side < D) {
        const int p = paired_side(f);
        const Key mine{3, f, v.side}, theirs{3, p, D - v.side};
        key = std::min(mine, theirs);
      } else {
        key = {4, f, static_cast<int>(i)};
      }
      gv[i] = global_vertex(key);
    }

    auto edge_key = [&](int a, int b) -> Key {
      const LocalVertex& va = lv[a];
      const LocalVertex& vb = lv[b];
      if (va.side >= 0 && vb.side >= 0) {
        const int seg = std::min(va.side, vb.side);
        const int p = paired_side(f);
        const Key mine{13, f, seg}, theirs{13, p, D - 1 - seg};
        return std::min(mine, theirs);
      }
      if (va.spoke_a >= 0 && vb.spoke_a >= 0) return {12, f, std::min(va.spoke_a, vb.spoke_a)};
      if (va.spoke_b >= 0 && vb.spoke_b >= 0)
        return {12, (f + 1) % n, std::min(va.spoke_b, vb.spoke_b)};
      return {14, f, std::min(a, b) * static_cast<int>(lv.size()) + std::max(a, b)};
    };

    for (const auto& t : tris) {
      std::array<int, 3> fe{};
      for (int s = 0; s < 3; ++s) {
        const int a = t[s], b = t[(s + 1) % 3];
        fe[s] = global_edge(edge_key(a, b), gv[a], gv[b], hyperbolic_distance(lv[a].z, lv[b].z));
      }
      out_faces.push_back({gv[t[0]], gv[t[1]], gv[t[2]]});
      out_face_edges.push_back(fe);
    }
  }

  Eigen::Matrix<int, Eigen::Dynamic, 3> faces(out_faces.size(), 3);
  Eigen::Matrix<int, Eigen::Dynamic, 3> fedges(out_face_edges.size(), 3);
  for (size_t i = 0; i < out_faces.size(); ++i)
    for (int s = 0; s < 3; ++s) {
      faces(i, s) = out_faces[i][s];
      fedges(i, s) = out_face_edges[i][s];
    }
  Eigen::Matrix<int, Eigen::Dynamic, 2> everts(edge_ends.size(), 2);
  Eigen::VectorXd elen(edge_len.size());
  for (size_t e = 0; e < edge_ends.size(); ++e) {
    everts(e, 0) = edge_ends[e][0];
    everts(e, 1) = edge_ends[e][1];
    elen(e) = edge_len[e];
  }
  return make_surface_mesh(genus, std::move(faces), std::move(fedges), std::move(everts),
                           std::move(elen));
}

// ---------------------------------------------------------------------------
// Persistence.

std::string mesh_to_json(const SurfaceMesh& mesh) {
  if (!mesh.is_simplicial())
    throw DomainError("mesh has loops or multi-edges and cannot be serialized; "
                      "use refinement level >= 2");
  nlohmann::json j;
  j["genus"] = mesh.genus;
  j["vertices"] = mesh.num_vertices;
  auto faces = nlohmann::json::array();
  for (Eigen::Index f = 0; f < mesh.faces.rows(); ++f)
    faces.push_back({mesh.faces(f, 0), mesh.faces(f, 1), mesh.faces(f, 2)});
  j["faces"] = std::move(faces);
  auto edges = nlohmann::json::array();
  for (int e = 0; e < mesh.num_edges(); ++e) {
    edges.push_back({{"u", mesh.edge_verts(e, 0)},
                     {"v", mesh.edge_verts(e, 1)},
                     {"len", mesh.edge_lengths(e)}});
  }
  j["edge_lengths"] = std::move(edges);
  return j.dump();
}

SurfaceMesh mesh_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("invalid mesh JSON: ") + e.what());
  }
  const int genus = j.at("genus").get<int>();
  const int V = j.at("vertices").get<int>();
  const auto& jf = j.at("faces");
  Eigen::Matrix<int, Eigen::Dynamic, 3> faces(jf.size(), 3);
  for (size_t f = 0; f < jf.size(); ++f)
    for (int s = 0; s < 3; ++s) {
      const int v = jf[f][s].get<int>();
      if (v < 0 || v >= V) throw DomainError("face vertex index out of range");
      faces(f, s) = v;
    }

  std::map<std::pair<int, int>, int> pair_to_edge;
  const auto& je = j.at("edge_lengths");
  Eigen::Matrix<int, Eigen::Dynamic, 2> everts(je.size(), 2);
  Eigen::VectorXd elen(je.size());
  for (size_t e = 0; e < je.size(); ++e) {
    int a = je[e].at("u").get<int>(), b = je[e].at("v").get<int>();
    everts(e, 0) = a;
    everts(e, 1) = b;
    elen(e) = je[e].at("len").get<double>();
    if (a > b) std::swap(a, b);
    if (a == b || !pair_to_edge.emplace(std::make_pair(a, b), static_cast<int>(e)).second)
      throw DomainError("duplicate or degenerate edge in mesh file");
  }
  Eigen::Matrix<int, Eigen::Dynamic, 3> fedges(faces.rows(), 3);
  for (Eigen::Index f = 0; f < faces.rows(); ++f) {
    for (int s = 0; s < 3; ++s) {
      int a = faces(f, s), b = faces(f, (s + 1) % 3);
      if (a > b) std::swap(a, b);
      auto it = pair_to_edge.find({a, b});
      if (it == pair_to_edge.end())
        throw DomainError("face references an edge with no stored length");
      fedges(f, s) = it->second;
    }
  }
  SurfaceMesh m = make_surface_mesh(genus, std::move(faces), std::move(fedges),
                                    std::move(everts), std::move(elen));
  if (m.num_vertices != V) throw DomainError("vertex count does not match face data");
  return m;
}

void save_mesh(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot open " + path + " for writing");
  out << mesh_to_json(mesh);
}

SurfaceMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open mesh file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return mesh_from_json(ss.str());
}

std::uint64_t mesh_hash(const SurfaceMesh& mesh) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < bytes; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  };
  const std::int64_t g = mesh.genus, V = mesh.num_vertices;
  mix(&g, sizeof g);
  mix(&V, sizeof V);
  for (Eigen::Index f = 0; f < mesh.faces.rows(); ++f)
    for (int s = 0; s < 3; ++s) {
      const std::int64_t v = mesh.faces(f, s);
      mix(&v, sizeof v);
    }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const std::int64_t a = mesh.edge_verts(e, 0), b = mesh.edge_verts(e, 1);
    const double l = mesh.edge_lengths(e);
    mix(&a, sizeof a);
    mix(&b, sizeof b);
    mix(&l, sizeof l);
  }
  return h;
}

}  // namespace adsvol
