#include "spinnet/multiratio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinnet/error.hpp"

namespace spinnet {

MultiRatio multi_ratio(const HyperedgeField& field, const DualPath& path) {
  if (path.empty()) throw Error(ErrorKind::InvalidArgument, "empty path");
  MultiRatio out;
  out.path = normalize_loop(path);
  if (!is_valid_path(field.topology(), out.path)) throw Error(ErrorKind::InvalidArgument, "consecutive faces are not adjacent");
  out.base = out.path.front();
  out.length = static_cast<int>(out.path.size()) - 1;
  out.even = out.length % 2 == 0;
  out.value = Quaternion::identity();
  out.modified = Quaternion::identity();
  for (int k = 0; k < out.length; ++k) {
    const Quaternion E = field.between(out.path[k], out.path[k + 1]);
    out.value = out.value * (k % 2 == 0 ? E.conj().inverse() : E);
    out.modified = out.modified * E;
  }
  return out;
}

HyperEdgeFactorization factorize(const HyperedgeField& field, int i, int j) {
  const Quaternion E = field.between(i, j);
  const Vec3 e = E.im();
  const Vec3& n = field.normals[i];
  const Vec3 p = e - e.dot(n) * n;
  if (p.norm() <= 1e-12 * std::max(e.norm(), 1e-300))
    throw Error(ErrorKind::Degenerate, "edge parallel to the face normal between faces " + std::to_string(i) + " and " + std::to_string(j));
  HyperEdgeFactorization f;
  f.e_proj = E.norm() * p / p.norm();
  f.h = Quaternion::pure(f.e_proj).inverse() * E;
  return f;
}

namespace {

// Projection of face f's side k into the plane of n_f, scaled to |E|.
Vec3 projected_side(const HyperedgeField& field, int f, int k) {
  const FaceSide& s = field.topology().sides(f)[k];
  const Quaternion E = field.seen_from(f, s.edge);
  const Vec3 e = E.im();
  const Vec3& n = field.normals[f];
  const Vec3 p = e - e.dot(n) * n;
  if (p.norm() <= 1e-12 * std::max(e.norm(), 1e-300))
    throw Error(ErrorKind::Degenerate, "edge parallel to the normal of face " + std::to_string(f));
  return E.norm() * p / p.norm();
}

int side_from(const OrientedNet& net, int f, int v) {
  const auto& sides = net.sides(f);
  for (std::size_t k = 0; k < sides.size(); ++k)
    if (sides[k].from == v) return static_cast<int>(k);
  return -1;
}

}  // namespace

VertexCurvature vertex_curvature(const HyperedgeField& field, int v) {
  const OrientedNet& net = field.topology();
  VertexCurvature vc;
  vc.vertex = v;
  vc.loop = fundamental_loop(net, v);
  const int n = static_cast<int>(vc.loop.size()) - 1;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const int f = vc.loop[k];
    const int out = side_from(net, f, v);
    const int m = static_cast<int>(net.sides(f).size());
    const int in = (out + m - 1) % m;
    const Vec3 a = projected_side(field, f, out);
    const Vec3 b = -projected_side(field, f, in);
    const double w = unsigned_angle(a, b);
    vc.omega.push_back(w);
    sum += w;
    if (vc.regular && !(a.cross(b).dot(field.normals[f]) > 0.0)) {
      vc.regular = false;
      vc.failing_face = f;
    }
  }
  vc.kappa = 2.0 * std::numbers::pi - sum;
  return vc;
}

VertexCurvature angular_defect(const HyperedgeField& field, int v) {
  VertexCurvature vc = vertex_curvature(field, v);
  if (!vc.regular)
    throw Error(ErrorKind::Regularity,
                "vertex " + std::to_string(v) + " is not regular in face " + std::to_string(vc.failing_face));
  return vc;
}

std::vector<Vec3> unfolded_edges(const HyperedgeField& field, int v) {
  const DualPath loop = fundamental_loop(field.topology(), v);
  std::vector<Vec3> out;
  Quaternion acc = Quaternion::identity();
  for (std::size_t k = 0; k + 1 < loop.size(); ++k) {
    const HyperEdgeFactorization f = factorize(field, loop[k], loop[k + 1]);
    out.push_back((acc * Quaternion::pure(f.e_proj) * acc.inverse()).im());
    acc = acc * f.h;
  }
  return out;
}

CurvaturePart curvature_part(const HyperedgeField& field, int v) {
  const VertexCurvature vc = angular_defect(field, v);
  CurvaturePart cp;
  cp.kappa = vc.kappa;
  cp.product = Quaternion::identity();
  for (std::size_t k = 0; k + 1 < vc.loop.size(); ++k)
    cp.product = cp.product * factorize(field, vc.loop[k], vc.loop[k + 1]).h;
  cp.expected = angle_map(field.normals[vc.loop.front()], vc.kappa);
  cp.deviation = distance(cp.product, cp.expected);
  return cp;
}

VertexArgument vertex_argument(const HyperedgeField& field, int v) {
  const VertexCurvature vc = angular_defect(field, v);
  const int n = static_cast<int>(vc.loop.size()) - 1;
  if (n % 2 != 0) throw Error(ErrorKind::Parity, "vertex " + std::to_string(v) + " has odd degree");
  VertexArgument va;
  va.kappa = vc.kappa;
  va.phi = vc.kappa;
  for (int k = 1; k < n; k += 2) va.phi += 2.0 * vc.omega[k];
  const MultiRatio cr = multi_ratio(field, vc.loop);
  va.cr_norm = cr.value.norm();
  va.normalized = cr.value / va.cr_norm;
  const Quaternion e = angle_map(field.normals[vc.loop.front()], va.phi);
  const double plus = distance(va.normalized, e);
  const double minus = distance(va.normalized, -e);
  va.sign = plus <= minus ? 1 : -1;
  va.deviation = std::min(plus, minus);
  return va;
}

const char* to_string(SpinEquivalence::Kind kind) {
  switch (kind) {
    case SpinEquivalence::Kind::Unique: return "unique";
    case SpinEquivalence::Kind::Family: return "family";
    case SpinEquivalence::Kind::None: return "none";
  }
  return "none";
}

namespace {

double rel(const Quaternion& a, const Quaternion& b) { return distance(a, b) / std::max(b.norm(), 1e-300); }

}  // namespace

SpinEquivalence spin_equivalent(const HyperedgeField& A, const HyperedgeField& B, double tol) {
  const OrientedNet& net = A.topology();
  if (A.net != B.net && A.topology().faces() != B.topology().faces())
    throw Error(ErrorKind::InvalidArgument, "spin_equivalent: nets differ");
  SpinEquivalence out;
  const DualTree tree = dual_spanning_tree(net);
  out.base = tree.root;
  const int b = tree.root;

  const Vec3& nA = A.normals[b];
  const Vec3& nB = B.normals[b];
  const Quaternion q0 = align_quat(nA, nB);

  // An odd loop exists iff some co-tree edge joins faces of equal depth parity.
  int odd_edge = -1;
  for (int e : tree.cotree_edges) {
    const PrimalEdge& pe = net.edge(e);
    if ((tree.depth[pe.face_ab] - tree.depth[pe.face_ba]) % 2 == 0) {
      odd_edge = e;
      break;
    }
  }

  Quaternion phi_b = q0;
  if (odd_edge >= 0) {
    const PrimalEdge& pe = net.edge(odd_edge);
    DualPath loop = tree_path(tree, b, pe.face_ab);
    const DualPath back = tree_path(tree, pe.face_ba, b);
    loop.insert(loop.end(), back.begin(), back.end());
    out.odd_loop = loop;
    const Quaternion crA = multi_ratio(A, loop).value;
    const Quaternion crB = multi_ratio(B, loop).value;
    const double s = std::sqrt(crA.norm() / crB.norm());
    const Vec3 c = rotate(crA.im(), q0);
    const double theta = signed_angle(c, crB.im(), nB);
    const Quaternion r(std::cos(theta / 2.0), -std::sin(theta / 2.0) * nB);
    phi_b = s * (q0 * r);
    out.kind = SpinEquivalence::Kind::Unique;
  } else {
    out.kind = SpinEquivalence::Kind::Family;
    out.family_axis = nB;
  }

  out.phi.assign(net.face_count(), Quaternion());
  out.phi[b] = phi_b;
  for (int f : tree.order) {
    if (f == b) continue;
    const int p = tree.parent[f];
    const Quaternion E = A.between(p, f);
    const Quaternion Ep = B.between(p, f);
    out.phi[f] = E.inverse() * out.phi[p].conj().inverse() * Ep;
  }

  // Verification: every hyperedge and normal.
  int bad_edge = -1;
  int bad_face = -1;
  for (int e = 0; e < net.edge_count(); ++e) {
    const PrimalEdge& pe = net.edge(e);
    const int c = pe.canonical_face();
    const int o = pe.interior() ? pe.other_face(c) : c;
    const double d = rel(out.phi[c].conj() * A.E[e] * out.phi[o], B.E[e]);
    out.max_deviation = std::max(out.max_deviation, d);
    if (d > tol && bad_edge < 0) bad_edge = e;
    if (!pe.interior()) {
      const double g = (rotate(A.ghost[e], out.phi[c]) - B.ghost[e]).norm();
      out.max_deviation = std::max(out.max_deviation, g);
      if (g > tol && bad_edge < 0) bad_edge = e;
    }
  }
  for (int f = 0; f < net.face_count(); ++f) {
    const double d = (rotate(A.normals[f], out.phi[f]) - B.normals[f]).norm();
    out.max_deviation = std::max(out.max_deviation, d);
    if (d > tol && bad_face < 0) bad_face = f;
  }

  if (bad_edge >= 0 || bad_face >= 0) {
    out.kind = SpinEquivalence::Kind::None;
    if (bad_edge >= 0 && net.edge(bad_edge).interior()) {
      out.violated = fundamental_cycle(net, tree, bad_edge);
      out.detail = "hyperedge " + std::to_string(bad_edge) + " inconsistent";
    } else if (bad_edge >= 0) {
      const int f = net.edge(bad_edge).canonical_face();
      out.violated = tree_path(tree, b, f);
      out.detail = "boundary edge " + std::to_string(bad_edge) + " inconsistent";
    } else {
      out.violated = tree_path(tree, b, bad_face);
      out.detail = "normal of face " + std::to_string(bad_face) + " inconsistent";
    }
  }
  return out;
}

SpinEquivalence spin_equivalent(const FecNet& A, const FecNet& B, double tol) {
  return spin_equivalent(hyperedges(A), hyperedges(B), tol);
}

}  // namespace spinnet
