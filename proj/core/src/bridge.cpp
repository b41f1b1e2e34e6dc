#include "spinnet/bridge.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "spinnet/error.hpp"
#include "spinnet/multiratio.hpp"

namespace spinnet {

namespace {

Vec3 projected(const Vec3& e, const Vec3& n, double length, int face) {
  const Vec3 p = e - e.dot(n) * n;
  if (p.norm() <= 1e-12 * std::max(e.norm(), 1e-300))
    throw Error(ErrorKind::Degenerate, "edge parallel to the normal of face " + std::to_string(face));
  return length * p / p.norm();
}

// Face i's own edge vectors projected into its plane, scaled to |E|.
std::vector<Vec3> projected_sides(const HyperedgeField& field, int f) {
  std::vector<Vec3> out;
  for (const FaceSide& s : field.topology().sides(f)) {
    const Quaternion E = field.seen_from(f, s.edge);
    out.push_back(projected(E.im(), field.normals[f], E.norm(), f));
  }
  return out;
}

std::vector<Quaternion> aligners(const HyperedgeField& field) {
  std::vector<Quaternion> g;
  for (int f = 0; f < field.topology().face_count(); ++f) {
    const Vec3& n = field.normals[f];
    const Vec3 t1 = projected_sides(field, f).front().normalized();
    Eigen::Matrix3d R;
    R.col(0) = t1;
    R.col(1) = n.cross(t1);
    R.col(2) = n;
    Eigen::Quaterniond q(R);
    if (q.w() < 0.0) q.coeffs() = -q.coeffs();
    g.push_back(Quaternion(q.w(), q.x(), q.y(), q.z()).conj());
  }
  return g;
}

Vec2 in_plane(const Quaternion& g, const Vec3& v) {
  const Vec3 w = (g * Quaternion::pure(v) * g.inverse()).im();
  return {w.x(), w.y()};
}

}  // namespace

std::vector<Quaternion> frame_aligners(const FecNet& fec) { return aligners(hyperedges(fec)); }

BridgeData induced_connection(const FecNet& fec, const std::vector<double>& gauge) {
  const HyperedgeField field = hyperedges(fec);
  const OrientedNet& net = fec.topology();
  if (!gauge.empty() && static_cast<int>(gauge.size()) != net.face_count())
    throw Error(ErrorKind::InvalidArgument, "gauge size does not match face count");

  BridgeData out;
  out.g = aligners(field);
  if (!gauge.empty())
    for (int f = 0; f < net.face_count(); ++f) out.g[f] = angle_map(Vec3::UnitZ(), gauge[f]) * out.g[f];

  std::vector<std::vector<Vec2>> vecs(net.face_count());
  for (int f = 0; f < net.face_count(); ++f)
    for (const Vec3& p : projected_sides(field, f)) vecs[f].push_back(in_plane(out.g[f], p));

  std::map<int, Quaternion> boundary_k;
  for (int e : net.boundary_edges()) {
    const int i = net.edge(e).canonical_face();
    const Quaternion E = field.E[e];
    const Vec3 p = projected(E.im(), field.normals[i], E.norm(), i);
    const Quaternion h = Quaternion::pure(p).inverse() * E;
    boundary_k[e] = out.g[i] * h * out.g[i].inverse();
  }

  out.inet = build_intrinsic(fec.net, std::move(vecs), std::move(boundary_k), 1e-9, false);
  out.conn = lift(out.inet);
  for (int e = 0; e < net.edge_count(); ++e) {
    const PrimalEdge& pe = net.edge(e);
    if (!pe.interior()) continue;
    const int c = pe.canonical_face();
    const int o = pe.other_face(c);
    const Quaternion gco = out.g[c] * factorize(field, c, o).h * out.g[o].inverse();
    out.max_axis_error = std::max(out.max_axis_error, std::hypot(gco.x, gco.y));
    const Quaternion lc = out.conn.at(c, e);
    const double plus = distance(gco, lc);
    const double minus = distance(gco, -lc);
    if (minus < plus) out.conn.sign[e] = -1;
    out.max_lift_error = std::max(out.max_lift_error, std::min(plus, minus));
  }
  if (out.max_axis_error > 1e-8)
    throw Error(ErrorKind::Connection, "induced transition leaves Q_k", out.max_axis_error);
  out.phi_c = out.g;
  return out;
}

IntrinsicNet intrinsic_of(const FecNet& fec) { return induced_connection(fec).inet; }

RelationReport relation_check(const FecNet& fec, const std::vector<double>& gauge) {
  const BridgeData bd = induced_connection(fec, gauge);
  const HyperedgeField field = hyperedges(fec);
  const std::vector<double> H = face_mean_curvatures(field);
  const QuatSparseOperator D = intrinsic_dirac(bd.inet, bd.conn);
  const QuatSparseOperator Df = dirac_matrix(field);

  RelationReport rep;
  rep.max_axis_error = bd.max_axis_error;
  rep.max_lift_error = bd.max_lift_error;
  auto keys = D.entries();
  for (const auto& [k, v] : Df.entries()) keys.emplace(k, Quaternion());
  for (const auto& [k, unused] : keys) {
    const auto [i, j] = k;
    Quaternion block = D.entry(i, j);
    if (i == j) block -= Quaternion(H[i]);
    const Quaternion conj = bd.g[i].inverse() * block * bd.g[j];
    rep.max_deviation = std::max(rep.max_deviation, distance(conj, Df.entry(i, j)));
    ++rep.entries;
  }
  const auto Dphi = D.apply(bd.phi_c);
  for (int i = 0; i < fec.topology().face_count(); ++i)
    rep.dirac_residual = std::max(rep.dirac_residual, distance(Dphi[i], H[i] * bd.phi_c[i]));
  return rep;
}

Alignment rigid_align(const std::vector<Vec3>& from, const std::vector<Vec3>& to) {
  if (from.size() != to.size() || from.empty()) throw Error(ErrorKind::InvalidArgument, "point sets differ in size");
  const double n = static_cast<double>(from.size());
  Vec3 ca = Vec3::Zero();
  Vec3 cb = Vec3::Zero();
  Alignment out;
  for (std::size_t k = 0; k < from.size(); ++k) {
    ca += from[k] / n;
    cb += to[k] / n;
    out.raw_deviation = std::max(out.raw_deviation, (from[k] - to[k]).norm());
  }
  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
  for (std::size_t k = 0; k < from.size(); ++k) C += (to[k] - cb) * (from[k] - ca).transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d S = Eigen::Matrix3d::Identity();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) S(2, 2) = -1.0;
  out.rotation = svd.matrixU() * S * svd.matrixV().transpose();
  out.translation = cb - out.rotation * ca;
  for (std::size_t k = 0; k < from.size(); ++k)
    out.max_deviation = std::max(out.max_deviation, (out.rotation * from[k] + out.translation - to[k]).norm());
  return out;
}

Roundtrip roundtrip(const FecNet& fec, double tol) {
  const BridgeData bd = induced_connection(fec);
  const std::vector<double> H = face_mean_curvatures(hyperedges(fec));
  const Realization r = realize(bd.inet, bd.conn, bd.phi_c, H, tol);

  Roundtrip out;
  out.max_dirac_residual = r.max_dirac_residual;
  out.alignment = rigid_align(r.fec.positions, fec.positions);
  out.fec = r.fec;
  for (auto& p : out.fec.positions) p = out.alignment.rotation * p + out.alignment.translation;
  for (auto& n : out.fec.normals) n = out.alignment.rotation * n;
  for (auto& [e, n] : out.fec.boundary_normals) n = out.alignment.rotation * n;
  for (std::size_t i = 0; i < fec.normals.size(); ++i)
    out.normal_deviation = std::max(out.normal_deviation, (out.fec.normals[i] - fec.normals[i]).norm());
  return out;
}

}  // namespace spinnet
