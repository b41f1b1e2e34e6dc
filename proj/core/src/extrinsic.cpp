#include "spinnet/extrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "spinnet/error.hpp"

namespace spinnet {

namespace {

// Tolerance for the edge constraint when hyperedges are derived; validate()
// reports the actual residuals.
constexpr double kConstraintTol = 1e-6;

Vec3 reflect(const Vec3& n, const Vec3& e) {
  const Vec3 u = e.normalized();
  return n - 2.0 * n.dot(u) * u;
}

}  // namespace

FecNet make_fec(OrientedNet net, std::vector<Vec3> positions, std::vector<Vec3> normals,
                std::map<int, Vec3> boundary_normals) {
  if (static_cast<int>(positions.size()) != net.vertex_count())
    throw Error(ErrorKind::InvalidArgument, "position count does not match vertex count");
  if (static_cast<int>(normals.size()) != net.face_count())
    throw Error(ErrorKind::InvalidArgument, "normal count does not match face count");
  for (const auto& [e, n] : boundary_normals)
    if (e < 0 || e >= net.edge_count() || net.edge(e).interior())
      throw Error(ErrorKind::InvalidArgument, "boundary normal given for a non-boundary edge");
  FecNet fec;
  fec.net = std::make_shared<const OrientedNet>(std::move(net));
  fec.positions = std::move(positions);
  fec.normals = std::move(normals);
  fec.boundary_normals = std::move(boundary_normals);
  return fec;
}

std::vector<Vec3> polygon_normals(const OrientedNet& net, const std::vector<Vec3>& positions) {
  std::vector<Vec3> out;
  for (const auto& face : net.faces()) {
    Vec3 n = Vec3::Zero();
    for (std::size_t k = 0; k < face.size(); ++k)
      n += positions[face[k]].cross(positions[face[(k + 1) % face.size()]]);
    if (n.norm() == 0.0) throw Error(ErrorKind::Degenerate, "face with zero area");
    out.push_back(n.normalized());
  }
  return out;
}

Vec3 side_vector(const FecNet& fec, int f, int k) {
  const FaceSide& s = fec.topology().sides(f)[k];
  return fec.positions[s.to] - fec.positions[s.from];
}

Vec3 boundary_normal(const FecNet& fec, int e) {
  auto it = fec.boundary_normals.find(e);
  if (it != fec.boundary_normals.end()) return it->second;
  const OrientedNet& net = fec.topology();
  const int f = net.edge(e).canonical_face();
  return reflect(fec.normals[f], side_vector(fec, f, net.side_index(f, e)));
}

Diagnostics validate(const FecNet& fec, double tol) {
  const OrientedNet& net = fec.topology();
  Diagnostics d;
  d.tol = tol;
  for (int f = 0; f < net.face_count(); ++f) {
    const double err = std::abs(fec.normals[f].norm() - 1.0);
    d.normal_error.push_back(err);
    d.max_normal_error = std::max(d.max_normal_error, err);
  }
  for (int e = 0; e < net.edge_count(); ++e) {
    const PrimalEdge& pe = net.edge(e);
    const int i = pe.canonical_face();
    const Vec3 ev = side_vector(fec, i, net.side_index(i, e));
    EdgeResidual r;
    r.edge = e;
    r.face_i = i;
    r.face_j = pe.interior() ? pe.other_face(i) : -1;
    const Vec3 nj = pe.interior() ? fec.normals[r.face_j] : boundary_normal(fec, e);
    const double len = ev.norm();
    r.residual = len == 0.0 ? INFINITY : std::abs((fec.normals[i] + nj).dot(ev)) / len;
    d.max_residual = std::max(d.max_residual, r.residual);
    d.edges.push_back(r);
  }
  d.pass = d.max_residual < tol && d.max_normal_error < tol;
  return d;
}

namespace {

HyperEdge make_hyperedge(int i, int j, int e, const Vec3& ni, const Vec3& nj, const Vec3& ev) {
  if (ev.norm() == 0.0) throw Error(ErrorKind::Degenerate, "zero-length edge " + std::to_string(e));
  const HalfTangent ht = half_tangent_quat(ni, nj, ev, kConstraintTol);
  HyperEdge h;
  h.i = i;
  h.j = j;
  h.edge = e;
  h.theta = ht.theta;
  h.H = ht.H;
  h.e = ev;
  h.value = ht.value;
  return h;
}

}  // namespace

double bending_angle(const FecNet& fec, int i, int j) { return hyperedge(fec, i, j).theta; }

HyperEdge hyperedge(const FecNet& fec, int i, int j) {
  const OrientedNet& net = fec.topology();
  const int e = net.edge_between(i, j);
  if (e < 0) throw Error(ErrorKind::InvalidArgument, "faces " + std::to_string(i) + ", " + std::to_string(j) + " are not adjacent");
  return make_hyperedge(i, j, e, fec.normals[i], fec.normals[j], side_vector(fec, i, net.side_index(i, e)));
}

HyperEdge boundary_hyperedge(const FecNet& fec, int e) {
  const OrientedNet& net = fec.topology();
  if (net.edge(e).interior()) throw Error(ErrorKind::InvalidArgument, "edge is interior");
  const int i = net.edge(e).canonical_face();
  return make_hyperedge(i, -1, e, fec.normals[i], boundary_normal(fec, e), side_vector(fec, i, net.side_index(i, e)));
}

double face_mean_curvature(const FecNet& fec, int i) {
  double H = 0.0;
  for (const auto& s : fec.topology().sides(i))
    H += s.neighbor >= 0 ? hyperedge(fec, i, s.neighbor).H : boundary_hyperedge(fec, s.edge).H;
  return H;
}

Quaternion HyperedgeField::seen_from(int face, int e) const {
  return net->edge(e).canonical_face() == face ? E[e] : E[e].conj();
}

Quaternion HyperedgeField::between(int i, int j) const {
  const int e = net->edge_between(i, j);
  if (e < 0) throw Error(ErrorKind::InvalidArgument, "faces " + std::to_string(i) + ", " + std::to_string(j) + " are not adjacent");
  return seen_from(i, e);
}

HyperedgeField hyperedges(const FecNet& fec) {
  const OrientedNet& net = fec.topology();
  HyperedgeField field;
  field.net = fec.net;
  field.normals = fec.normals;
  field.E.resize(net.edge_count());
  field.ghost.assign(net.edge_count(), Vec3::Zero());
  for (int e = 0; e < net.edge_count(); ++e) {
    const PrimalEdge& pe = net.edge(e);
    const int i = pe.canonical_face();
    if (pe.interior()) {
      field.E[e] = hyperedge(fec, i, pe.other_face(i)).value;
    } else {
      field.ghost[e] = boundary_normal(fec, e);
      field.E[e] = boundary_hyperedge(fec, e).value;
    }
  }
  return field;
}

std::vector<double> face_mean_curvatures(const HyperedgeField& field) {
  std::vector<double> H(field.net->face_count(), 0.0);
  for (int f = 0; f < field.net->face_count(); ++f)
    for (const auto& s : field.net->sides(f)) H[f] += field.E[s.edge].w;
  return H;
}

std::vector<double> closure_defects(const HyperedgeField& field) {
  std::vector<double> out;
  for (int f = 0; f < field.net->face_count(); ++f) {
    Vec3 sum = Vec3::Zero();
    for (const auto& s : field.net->sides(f)) sum += field.seen_from(f, s.edge).im();
    out.push_back(sum.norm());
  }
  return out;
}

QuatSparseOperator dirac_matrix(const HyperedgeField& field) {
  const OrientedNet& net = field.topology();
  QuatSparseOperator D(net.face_count());
  for (int i = 0; i < net.face_count(); ++i) {
    for (const auto& s : net.sides(i)) {
      if (s.neighbor < 0) continue;
      const Quaternion Eij = field.seen_from(i, s.edge);
      D.add(i, s.neighbor, Eij);
      D.add(i, i, -Eij);
    }
    D.add(i, i, Quaternion());
  }
  return D;
}

std::vector<Quaternion> dirac_apply(const HyperedgeField& field, const std::vector<Quaternion>& phi) {
  const OrientedNet& net = field.topology();
  if (static_cast<int>(phi.size()) != net.face_count()) throw Error(ErrorKind::InvalidArgument, "spinor size mismatch");
  std::vector<Quaternion> out(net.face_count());
  for (int i = 0; i < net.face_count(); ++i)
    for (const auto& s : net.sides(i))
      if (s.neighbor >= 0) out[i] += field.seen_from(i, s.edge) * (phi[s.neighbor] - phi[i]);
  return out;
}

SpinTransformResult spin_transform(const HyperedgeField& field, const std::vector<Quaternion>& phi) {
  const OrientedNet& net = field.topology();
  if (static_cast<int>(phi.size()) != net.face_count()) throw Error(ErrorKind::InvalidArgument, "spinor size mismatch");
  double scale = 0.0;
  for (const auto& p : phi) scale = std::max(scale, p.norm());
  for (int i = 0; i < net.face_count(); ++i)
    if (!(phi[i].norm() > 1e-14 * scale))
      throw Error(ErrorKind::InvalidSpinor, "spinor vanishes at face " + std::to_string(i));

  SpinTransformResult out;
  out.field.net = field.net;
  out.field.E.resize(net.edge_count());
  out.field.ghost.assign(net.edge_count(), Vec3::Zero());
  for (int e = 0; e < net.edge_count(); ++e) {
    const PrimalEdge& pe = net.edge(e);
    const int c = pe.canonical_face();
    if (pe.interior()) {
      out.field.E[e] = phi[c].conj() * field.E[e] * phi[pe.other_face(c)];
    } else {
      out.field.E[e] = phi[c].conj() * field.E[e] * phi[c];
      out.field.ghost[e] = rotate(field.ghost[e], phi[c]);
      out.boundary_extended = true;
    }
  }
  for (int i = 0; i < net.face_count(); ++i) out.field.normals.push_back(rotate(field.normals[i], phi[i]));
  out.closure_defect = closure_defects(out.field);
  for (double d : out.closure_defect) out.max_closure_defect = std::max(out.max_closure_defect, d);
  return out;
}

void normalize_spinor(std::vector<Quaternion>& phi, int gauge_face) {
  const int n = static_cast<int>(phi.size());
  if (n == 0) return;
  if (gauge_face < 0 || gauge_face >= n) throw Error(ErrorKind::InvalidArgument, "gauge face out of range");
  if (phi[gauge_face].norm() > 0.0) {
    const Quaternion r = phi[gauge_face].inverse() * phi[gauge_face].norm();
    for (auto& p : phi) p = p * r;
  }
  double mean = 0.0;
  for (const auto& p : phi) mean += p.norm2() / n;
  if (mean > 0.0)
    for (auto& p : phi) p = p / std::sqrt(mean);
}

std::vector<Vec3> integrate(const OrientedNet& net, const std::vector<Vec3>& edge_vectors, double tol) {
  if (static_cast<int>(edge_vectors.size()) != net.edge_count())
    throw Error(ErrorKind::InvalidArgument, "edge vector count does not match edge count");
  double longest = 0.0;
  for (const auto& v : edge_vectors) longest = std::max(longest, v.norm());

  int worst = -1;
  double worst_defect = 0.0;
  for (int f = 0; f < net.face_count(); ++f) {
    Vec3 sum = Vec3::Zero();
    double perimeter = 0.0;
    for (const auto& s : net.sides(f)) {
      const bool along = net.canonical_direction(s.edge).first == s.from;
      sum += along ? edge_vectors[s.edge] : Vec3(-edge_vectors[s.edge]);
      perimeter += edge_vectors[s.edge].norm();
    }
    const double defect = sum.norm() / std::max(perimeter, 1e-300);
    if (defect > worst_defect) {
      worst_defect = defect;
      worst = f;
    }
  }
  if (worst_defect > tol)
    throw Error(ErrorKind::Integration,
                "edge vectors do not close around face " + std::to_string(worst) + " (relative defect " +
                    std::to_string(worst_defect) + ")",
                worst_defect);

  const int n = net.vertex_count();
  std::vector<Vec3> pos(n, Vec3::Zero());
  std::vector<int> parent(n, -1);
  std::vector<int> parent_edge(n, -1);
  std::vector<bool> seen(n, false);
  std::vector<bool> tree(net.edge_count(), false);
  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    if (root > 0 && !net.vertex_edges(root).empty())
      throw Error(ErrorKind::Disconnected, "vertex graph is not connected");
    seen[root] = true;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int e : net.vertex_edges(v)) {
        const auto [from, to] = net.canonical_direction(e);
        const int w = from == v ? to : from;
        if (seen[w]) continue;
        seen[w] = true;
        tree[e] = true;
        parent[w] = v;
        parent_edge[w] = e;
        pos[w] = from == v ? Vec3(pos[v] + edge_vectors[e]) : Vec3(pos[v] - edge_vectors[e]);
        queue.push_back(w);
      }
    }
  }

  std::vector<EdgeMismatch> bad;
  for (int e = 0; e < net.edge_count(); ++e) {
    if (tree[e]) continue;
    const auto [from, to] = net.canonical_direction(e);
    const double m = (pos[to] - pos[from] - edge_vectors[e]).norm();
    if (m <= tol * std::max(longest, 1e-300) * std::sqrt(static_cast<double>(n))) continue;
    EdgeMismatch em;
    em.edge = e;
    em.mismatch = m;
    std::vector<int> up_a{from};
    std::vector<int> up_b{to};
    auto depth_of = [&](int v) {
      int d = 0;
      while (parent[v] >= 0) v = parent[v], ++d;
      return d;
    };
    int x = from;
    int y = to;
    int dx = depth_of(x);
    int dy = depth_of(y);
    while (dx > dy) up_a.push_back(x = parent[x]), --dx;
    while (dy > dx) up_b.push_back(y = parent[y]), --dy;
    while (x != y) {
      up_a.push_back(x = parent[x]);
      up_b.push_back(y = parent[y]);
    }
    up_b.pop_back();
    em.cycle.assign(up_a.begin(), up_a.end());
    em.cycle.insert(em.cycle.end(), up_b.rbegin(), up_b.rend());
    bad.push_back(std::move(em));
  }
  if (!bad.empty()) {
    std::sort(bad.begin(), bad.end(), [](const EdgeMismatch& a, const EdgeMismatch& b) {
      return a.mismatch > b.mismatch || (a.mismatch == b.mismatch && a.edge < b.edge);
    });
    std::ostringstream msg;
    msg << "edge vectors have nonzero periods on " << bad.size() << " cycle(s); worst mismatch " << bad.front().mismatch
        << " on edge " << bad.front().edge;
    throw MonodromyError(msg.str(), std::move(bad));
  }
  return pos;
}

FecNet realize_field(const HyperedgeField& field, double tol) {
  const OrientedNet& net = field.topology();
  std::vector<Vec3> ev(net.edge_count());
  for (int e = 0; e < net.edge_count(); ++e) ev[e] = field.E[e].im();
  FecNet fec;
  fec.net = field.net;
  fec.positions = integrate(net, ev, tol);
  fec.normals = field.normals;
  for (int e : net.boundary_edges()) fec.boundary_normals[e] = field.ghost[e];
  return fec;
}

double steiner_offset_area(const FecNet& fec, int i, double t, double tol) {
  const OrientedNet& net = fec.topology();
  const auto& face = net.face(i);
  const Vec3 n = fec.normals[i];
  Vec3 centroid = Vec3::Zero();
  for (int v : face) centroid += fec.positions[v];
  centroid /= static_cast<double>(face.size());
  double size = 0.0;
  for (int v : face) size = std::max(size, (fec.positions[v] - centroid).norm());
  for (int v : face) {
    const double off = std::abs((fec.positions[v] - centroid).dot(n));
    if (off > tol * std::max(size, 1.0))
      throw Error(ErrorKind::ClassicalOnly, "face " + std::to_string(i) + " is not planar with its normal", off);
  }

  // In-plane frame.
  const Vec3 t1 = (fec.positions[face[1]] - fec.positions[face[0]]).normalized();
  const Vec3 t2 = n.cross(t1);
  auto to2 = [&](const Vec3& p) { return Vec2((p - centroid).dot(t1), (p - centroid).dot(t2)); };

  const auto& sides = net.sides(i);
  const std::size_t m = sides.size();
  std::vector<Vec2> point(m);
  std::vector<Vec2> dir(m);
  for (std::size_t k = 0; k < m; ++k) {
    const FaceSide& s = sides[k];
    const Vec3 nj = s.neighbor >= 0 ? fec.normals[s.neighbor] : boundary_normal(fec, s.edge);
    const double denom = 1.0 + n.dot(nj);
    if (denom <= 1e-12) throw Error(ErrorKind::DegenerateAngle, "opposite normals across edge " + std::to_string(s.edge));
    const Vec3 shift = (n + nj) / denom;
    point[k] = to2(fec.positions[s.from] + t * shift);
    dir[k] = to2(fec.positions[s.to]) - to2(fec.positions[s.from]);
  }

  std::vector<Vec2> corner(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t p = (k + m - 1) % m;
    const double cross = dir[p].x() * dir[k].y() - dir[p].y() * dir[k].x();
    if (std::abs(cross) <= 1e-12 * dir[p].norm() * dir[k].norm())
      throw Error(ErrorKind::Degenerate, "parallel offset lines at corner " + std::to_string(k) + " of face " + std::to_string(i));
    // point[p] + a dir[p] = point[k] + b dir[k]
    const Vec2 d = point[k] - point[p];
    const double a = (d.x() * dir[k].y() - d.y() * dir[k].x()) / cross;
    corner[k] = point[p] + a * dir[p];
  }
  double area = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const Vec2& a = corner[k];
    const Vec2& b = corner[(k + 1) % m];
    area += a.x() * b.y() - a.y() * b.x();
  }
  return std::abs(area) / 2.0;
}

KernelResult solve_spinor(const HyperedgeField& field, const std::vector<double>& rho, const KernelOptions& opts) {
  const OrientedNet& net = field.topology();
  if (static_cast<int>(rho.size()) != net.face_count()) throw Error(ErrorKind::InvalidArgument, "rho size mismatch");
  QuatSparseOperator op = dirac_matrix(field);
  for (int i = 0; i < net.face_count(); ++i) op.add(i, i, Quaternion(-rho[i]));
  KernelOptions o = opts;
  o.require_symmetric = net.is_closed();
  return near_kernel(op.real_matrix(), o);
}

}  // namespace spinnet
