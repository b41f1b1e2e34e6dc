#include "spinnet/minimal.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "spinnet/error.hpp"

namespace spinnet {

namespace {

VertexPair key(int i, int j) { return i < j ? VertexPair{i, j} : VertexPair{j, i}; }

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

struct Directed {
  std::map<VertexPair, int> left;  // directed (a, b) -> triangle containing a -> b
};

Directed directed_triangles(const PlanarMesh& pm) {
  Directed d;
  for (std::size_t t = 0; t < pm.triangles.size(); ++t) {
    const auto& T = pm.triangles[t];
    for (int k = 0; k < 3; ++k) d.left[{T[k], T[(k + 1) % 3]}] = static_cast<int>(t);
  }
  return d;
}

// Face-side vector of planar edge (i, j) seen from face i, without the sign flip.
Vec3 formula_vector(Complex zi, Complex zj, Complex q) {
  const Complex c = q / (Complex(0.0, 1.0) * (zj - zi));
  return {(c * (1.0 - zi * zj)).real(), (c * Complex(0.0, 1.0) * (1.0 + zi * zj)).real(), (c * (zi + zj)).real()};
}

}  // namespace

Complex QuadDiff::at(int i, int j) const {
  auto it = q.find(key(i, j));
  return it == q.end() ? Complex() : it->second;
}

PlanarTopology planar_topology(const PlanarMesh& pm) {
  const int n = static_cast<int>(pm.z.size());
  std::map<VertexPair, int> count;
  for (std::size_t t = 0; t < pm.triangles.size(); ++t) {
    const auto& T = pm.triangles[t];
    for (int v : T)
      if (v < 0 || v >= n) throw Error(ErrorKind::InvalidArgument, "triangle " + std::to_string(t) + " references a missing vertex");
    const double area = cross(pm.z[T[1]] - pm.z[T[0]], pm.z[T[2]] - pm.z[T[0]]);
    if (!(area > 0.0))
      throw Error(ErrorKind::Orientation, "triangle " + std::to_string(t) + " is degenerate or clockwise");
    for (int k = 0; k < 3; ++k)
      if (++count[key(T[k], T[(k + 1) % 3])] > 2)
        throw Error(ErrorKind::NonManifold, "edge shared by more than two triangles");
  }
  PlanarTopology top;
  top.neighbors.resize(n);
  top.boundary.assign(n, false);
  for (const auto& [e, c] : count) {
    top.neighbors[e.first].push_back(e.second);
    top.neighbors[e.second].push_back(e.first);
    if (c == 2) {
      top.interior_edges.push_back(e);
    } else {
      top.boundary[e.first] = true;
      top.boundary[e.second] = true;
    }
  }
  for (int v = 0; v < n; ++v) {
    std::sort(top.neighbors[v].begin(), top.neighbors[v].end());
    if (!top.boundary[v] && !top.neighbors[v].empty()) top.interior_vertices.push_back(v);
  }
  return top;
}

HqdDiagnostics hqd_validate(const PlanarMesh& pm, const QuadDiff& q, double tol) {
  const PlanarTopology top = planar_topology(pm);
  HqdDiagnostics d;
  double scale = 1.0;
  for (const auto& [e, v] : q.q) scale = std::max(scale, std::abs(v));
  for (int i : top.interior_vertices) {
    Complex s;
    Complex sdz;
    for (int j : top.neighbors[i]) {
      s += q.at(i, j);
      sdz += q.at(i, j) / (pm.z[j] - pm.z[i]);
    }
    d.vertices.push_back({i, std::abs(s), std::abs(sdz)});
    d.max_sum = std::max(d.max_sum, std::abs(s));
    d.max_sum_dz = std::max(d.max_sum_dz, std::abs(sdz));
  }
  d.valid = d.max_sum <= tol * scale && d.max_sum_dz <= tol * scale;
  return d;
}

namespace {

Eigen::MatrixXd hqd_null_space(const PlanarMesh& pm, const PlanarTopology& top, bool imaginary) {
  const int per = imaginary ? 1 : 2;
  const int cols = per * static_cast<int>(top.interior_edges.size());
  std::map<VertexPair, int> col;
  for (std::size_t k = 0; k < top.interior_edges.size(); ++k) col[top.interior_edges[k]] = static_cast<int>(k);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4 * static_cast<int>(top.interior_vertices.size()), cols);
  int row = 0;
  for (int i : top.interior_vertices) {
    for (int j : top.neighbors[i]) {
      auto it = col.find(key(i, j));
      if (it == col.end()) continue;
      const Complex inv_dz = 1.0 / (pm.z[j] - pm.z[i]);
      const std::vector<Complex> basis = imaginary ? std::vector<Complex>{{0.0, 1.0}} : std::vector<Complex>{{1.0, 0.0}, {0.0, 1.0}};
      for (int b = 0; b < per; ++b) {
        const int c = per * it->second + b;
        A(row, c) += basis[b].real();
        A(row + 1, c) += basis[b].imag();
        A(row + 2, c) += (basis[b] * inv_dz).real();
        A(row + 3, c) += (basis[b] * inv_dz).imag();
      }
    }
    row += 4;
  }
  if (A.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, s.size() > 0 ? s[0] : 0.0);
  int rank = 0;
  for (int k = 0; k < s.size(); ++k)
    if (s[k] > cut) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

}  // namespace

int hqd_dimension(const PlanarMesh& pm, bool imaginary) {
  return static_cast<int>(hqd_null_space(pm, planar_topology(pm), imaginary).cols());
}

QuadDiff hqd_solve(const PlanarMesh& pm, const HqdSolveOptions& opts) {
  const PlanarTopology top = planar_topology(pm);
  const Eigen::MatrixXd N = hqd_null_space(pm, top, opts.imaginary);
  if (N.cols() == 0) throw Error(ErrorKind::Infeasible, "only the zero differential satisfies both constraint systems");
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd r(N.cols());
  for (int k = 0; k < r.size(); ++k) r[k] = normal(rng);
  Eigen::VectorXd x = N * r;
  x /= x.cwiseAbs().maxCoeff();
  QuadDiff q;
  for (std::size_t k = 0; k < top.interior_edges.size(); ++k) {
    const int c = static_cast<int>(k);
    q.q[top.interior_edges[k]] = opts.imaginary ? Complex(0.0, x[c]) : Complex(x[2 * c], x[2 * c + 1]);
  }
  return q;
}

QuadDiff hqd_rotate(const QuadDiff& q, double lambda) {
  QuadDiff out;
  const Complex r = std::polar(1.0, lambda);
  for (const auto& [e, v] : q.q) out.q[e] = r * v;
  return out;
}

Vec3 stereographic(Complex z) {
  const double r2 = std::norm(z);
  return Vec3(2.0 * z.real(), 2.0 * z.imag(), r2 - 1.0) / (r2 + 1.0);
}

WeierstrassNet weierstrass(const PlanarMesh& pm, const QuadDiff& q, double tol) {
  const PlanarTopology top = planar_topology(pm);
  if (top.interior_vertices.empty()) throw Error(ErrorKind::Construction, "planar mesh has no interior vertex");
  const Directed dir = directed_triangles(pm);
  auto tleft = [&](int a, int b) { return dir.left.at({a, b}); };

  double qmax = 0.0;
  for (int i : top.interior_vertices)
    for (int j : top.neighbors[i]) qmax = std::max(qmax, std::abs(q.at(i, j)));
  for (int i : top.interior_vertices)
    for (int j : top.neighbors[i])
      if (!(std::abs(q.at(i, j)) > 1e-14 * qmax))
        throw Error(ErrorKind::Degenerate, "zero hyperedge on planar edge " + std::to_string(i) + "-" + std::to_string(j));

  // Realized vertices: triangles touching an interior vertex.
  std::vector<int> tri_index(pm.triangles.size(), -1);
  WeierstrassNet out;
  for (int i : top.interior_vertices)
    for (int j : top.neighbors[i]) tri_index[tleft(i, j)] = 0;
  for (std::size_t t = 0; t < pm.triangles.size(); ++t)
    if (tri_index[t] == 0) {
      tri_index[t] = static_cast<int>(out.vertex_triangle.size());
      out.vertex_triangle.push_back(static_cast<int>(t));
    }

  // Face of interior vertex i walks its star counterclockwise, starting at
  // the smallest neighbour; side k crosses planar edge (i, across[k]).
  std::vector<std::vector<int>> faces;
  std::vector<std::vector<int>> across;
  for (int i : top.interior_vertices) {
    std::vector<int> poly;
    std::vector<int> nb;
    const int start = top.neighbors[i].front();
    int j = start;
    do {
      const int t = tleft(i, j);
      poly.push_back(tri_index[t]);
      const auto& T = pm.triangles[t];
      int k = 0;
      while (T[k] != i) ++k;
      j = T[(k + 2) % 3];
      nb.push_back(j);
    } while (j != start && poly.size() <= top.neighbors[i].size());
    if (j != start) throw Error(ErrorKind::NonManifold, "star of vertex " + std::to_string(i) + " is not a disk");
    out.face_vertex.push_back(i);
    faces.push_back(std::move(poly));
    across.push_back(std::move(nb));
  }
  auto net = std::make_shared<OrientedNet>(OrientedNet::build(faces, static_cast<int>(out.vertex_triangle.size())));

  HyperedgeField& field = out.field;
  field.net = net;
  field.E.resize(net->edge_count());
  field.ghost.assign(net->edge_count(), Vec3::Zero());
  for (int i : out.face_vertex) field.normals.push_back(stereographic(pm.z[i]));
  std::vector<Complex> qe(net->edge_count());
  double longest = 0.0;
  for (int f = 0; f < net->face_count(); ++f) {
    const int i = out.face_vertex[f];
    for (std::size_t k = 0; k < net->sides(f).size(); ++k) {
      const FaceSide& s = net->sides(f)[k];
      if (net->edge(s.edge).canonical_face() != f) continue;
      const int j = across[f][k];
      const Complex qij = q.at(i, j);
      field.E[s.edge] = Quaternion(qij.real(), -formula_vector(pm.z[i], pm.z[j], qij));
      qe[s.edge] = qij;
      longest = std::max(longest, field.E[s.edge].im().norm());
      if (s.neighbor < 0) field.ghost[s.edge] = stereographic(pm.z[j]);
    }
  }

  for (int e = 0; e < net->edge_count(); ++e) {
    const PrimalEdge& pe = net->edge(e);
    const int c = pe.canonical_face();
    const Vec3 nj = pe.interior() ? field.normals[pe.other_face(c)] : field.ghost[e];
    const Vec3 ev = field.E[e].im();
    out.max_constraint = std::max(out.max_constraint, std::abs((field.normals[c] + nj).dot(ev)) / ev.norm());
    out.max_edge_curvature = std::max(out.max_edge_curvature, std::abs(field.E[e].w));
  }
  for (double d : closure_defects(field)) out.max_closure = std::max(out.max_closure, d);
  for (double h : face_mean_curvatures(field)) out.max_face_curvature = std::max(out.max_face_curvature, std::abs(h));
  if (out.max_constraint > tol)
    throw Error(ErrorKind::Construction, "edge constraint violated", out.max_constraint);
  if (out.max_closure > tol * std::max(1.0, longest)) {
    const auto defects = closure_defects(field);
    const auto worst = std::max_element(defects.begin(), defects.end()) - defects.begin();
    std::ostringstream msg;
    msg << "face of planar vertex " << out.face_vertex[worst] << " does not close";
    throw Error(ErrorKind::Construction, msg.str(), out.max_closure);
  }

  out.fec = realize_field(field, tol);
  const HyperedgeField geo = hyperedges(out.fec);
  for (int e = 0; e < net->edge_count(); ++e)
    out.max_curvature_mismatch = std::max(out.max_curvature_mismatch, std::abs(geo.E[e].w - qe[e].real()));
  return out;
}

MinimalResult minimalize(const FecNet& fec, const KernelOptions& opts, int gauge_face) {
  const HyperedgeField field = hyperedges(fec);
  std::vector<double> rho = face_mean_curvatures(field);
  for (double& r : rho) r = -r;

  KernelResult kr;
  try {
    kr = solve_spinor(field, rho, opts);
  } catch (const ConvergenceError& err) {
    kr = err.best();
  }
  MinimalResult out;
  out.residual = kr.residual;
  out.converged = kr.converged;
  out.iterations = kr.iterations;
  out.phi = unpack(kr.vector);
  normalize_spinor(out.phi, gauge_face);

  out.transformed = spin_transform(field, out.phi);
  for (double h : face_mean_curvatures(out.transformed.field))
    out.max_face_curvature = std::max(out.max_face_curvature, std::abs(h));
  try {
    out.fec = realize_field(out.transformed.field, std::max(opts.tol, 1e-8));
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::Integration && err.kind() != ErrorKind::Monodromy) throw;
    out.integration_error = err.what();
  }
  return out;
}

HyperedgeField associated_family(const HyperedgeField& field, const std::vector<Quaternion>& phi, double lambda) {
  const OrientedNet& net = field.topology();
  if (static_cast<int>(phi.size()) != net.face_count()) throw Error(ErrorKind::InvalidArgument, "spinor size mismatch");
  const double c = std::cos(2.0 * lambda);
  const double s = std::sin(2.0 * lambda);
  HyperedgeField out;
  out.net = field.net;
  out.E.resize(net.edge_count());
  out.ghost.assign(net.edge_count(), Vec3::Zero());
  for (int i = 0; i < net.face_count(); ++i) {
    if (!(phi[i].norm() > 0.0)) throw Error(ErrorKind::InvalidSpinor, "spinor vanishes at face " + std::to_string(i));
    out.normals.push_back(rotate(field.normals[i], phi[i]));
  }
  for (int e = 0; e < net.edge_count(); ++e) {
    const PrimalEdge& pe = net.edge(e);
    const int i = pe.canonical_face();
    const int j = pe.interior() ? pe.other_face(i) : i;
    const Quaternion& E = field.E[e];
    const Quaternion mixed = c * E - s * (Quaternion::pure(field.normals[i]) * E);
    out.E[e] = phi[i].conj() * mixed * phi[j];
    if (!pe.interior())
      out.ghost[e] = (-(out.E[e].inverse() * Quaternion::pure(out.normals[i]) * out.E[e])).im().normalized();
  }
  return out;
}

bool is_a_minimal(const HyperedgeField& field, double tol) {
  return std::all_of(field.E.begin(), field.E.end(), [&](const Quaternion& E) { return std::abs(E.w) <= tol; });
}

bool is_classical(const FecNet& fec, double tol) {
  const OrientedNet& net = fec.topology();
  for (int f = 0; f < net.face_count(); ++f) {
    const auto& face = net.face(f);
    const Vec3& p0 = fec.positions[face[0]];
    double size = 0.0;
    for (int v : face) size = std::max(size, (fec.positions[v] - p0).norm());
    for (int v : face)
      if (std::abs((fec.positions[v] - p0).dot(fec.normals[f])) > tol * std::max(size, 1.0)) return false;
  }
  return true;
}

bool is_c_minimal(const FecNet& fec, double tol) {
  if (!is_classical(fec, tol)) return false;
  for (double h : face_mean_curvatures(hyperedges(fec)))
    if (std::abs(h) > tol) return false;
  return true;
}

}  // namespace spinnet
