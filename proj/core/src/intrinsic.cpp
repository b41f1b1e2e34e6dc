#include "spinnet/intrinsic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spinnet/error.hpp"
#include "spinnet/gf2.hpp"

namespace spinnet {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double arg(const Vec2& v) { return std::atan2(v.y(), v.x()); }

Vec2 rotate2(const Vec2& v, double a) {
  const double c = std::cos(a);
  const double s = std::sin(a);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

int side_from(const OrientedNet& net, int f, int v) {
  const auto& sides = net.sides(f);
  for (std::size_t k = 0; k < sides.size(); ++k)
    if (sides[k].from == v) return static_cast<int>(k);
  return -1;
}

}  // namespace

Quaternion embed(const Vec2& v) { return {0.0, v.x(), v.y(), 0.0}; }

Vec2 IntrinsicNet::own(int f, int e) const {
  const int k = net->side_index(f, e);
  if (k < 0) throw Error(ErrorKind::InvalidArgument, "edge " + std::to_string(e) + " not in face " + std::to_string(f));
  return vecs[f][k];
}

Vec2 IntrinsicNet::in_frame(int i, int e, int frame) const {
  if (frame == i) return own(i, e);
  return -own(frame, e);
}

Quaternion IntrinsicNet::boundary_factor(int e) const {
  auto it = boundary_k.find(e);
  return it == boundary_k.end() ? Quaternion::identity() : it->second;
}

IntrinsicNet build_intrinsic(NetPtr net, std::vector<std::vector<Vec2>> vecs, std::map<int, Quaternion> boundary_k,
                             double tol, bool canonical_frames) {
  if (static_cast<int>(vecs.size()) != net->face_count())
    throw Error(ErrorKind::InvalidArgument, "edge vector table does not match face count");
  for (int f = 0; f < net->face_count(); ++f) {
    if (vecs[f].size() != net->sides(f).size())
      throw Error(ErrorKind::InvalidArgument, "face " + std::to_string(f) + ": wrong number of edge vectors");
    for (const auto& v : vecs[f])
      if (!(v.norm() > 0.0)) throw Error(ErrorKind::Degenerate, "zero edge vector in face " + std::to_string(f));
  }
  for (const auto& [e, k] : boundary_k)
    if (e < 0 || e >= net->edge_count() || net->edge(e).interior())
      throw Error(ErrorKind::InvalidArgument, "boundary factor given for a non-boundary edge");

  std::vector<int> bad;
  double worst = 0.0;
  for (int e = 0; e < net->edge_count(); ++e) {
    const PrimalEdge& pe = net->edge(e);
    if (!pe.interior()) continue;
    const double la = vecs[pe.face_ab][net->side_index(pe.face_ab, e)].norm();
    const double lb = vecs[pe.face_ba][net->side_index(pe.face_ba, e)].norm();
    const double d = std::abs(la - lb) / std::max(la, lb);
    if (d > tol) {
      bad.push_back(e);
      worst = std::max(worst, d);
    }
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "shared edge lengths differ on edges";
    for (int e : bad) msg << ' ' << net->edge(e).a << '-' << net->edge(e).b;
    throw Error(ErrorKind::Metric, msg.str(), worst);
  }

  if (canonical_frames)
    for (auto& face : vecs) {
      const double a = -arg(face[0]);
      for (auto& v : face) v = rotate2(v, a);
    }
  IntrinsicNet inet;
  inet.net = std::move(net);
  inet.vecs = std::move(vecs);
  inet.boundary_k = std::move(boundary_k);
  return inet;
}

IntrinsicNet regauge(const IntrinsicNet& inet, const std::vector<double>& angles) {
  IntrinsicNet out = inet;
  for (std::size_t f = 0; f < out.vecs.size(); ++f)
    for (auto& v : out.vecs[f]) v = rotate2(v, angles[f]);
  return out;
}

Quaternion SpinConnection::at(int face, int e) const {
  const Quaternion g(std::cos(angle[e] / 2.0), 0.0, 0.0, std::sin(angle[e] / 2.0));
  const Quaternion gc = sign[e] * g;
  return net->edge(e).canonical_face() == face ? gc : gc.inverse();
}

Quaternion SpinConnection::g(int i, int j) const {
  const int e = net->edge_between(i, j);
  if (e < 0) throw Error(ErrorKind::InvalidArgument, "faces " + std::to_string(i) + ", " + std::to_string(j) + " are not adjacent");
  return at(i, e);
}

std::vector<double> levi_civita(const IntrinsicNet& inet) {
  const OrientedNet& net = inet.topology();
  std::vector<double> angle(net.edge_count(), 0.0);
  for (int e = 0; e < net.edge_count(); ++e) {
    const PrimalEdge& pe = net.edge(e);
    if (!pe.interior()) continue;
    const int c = pe.canonical_face();
    const int o = pe.other_face(c);
    const Vec2 target = inet.in_frame(c, e, c);
    const Vec2 source = inet.in_frame(c, e, o);
    angle[e] = std::remainder(arg(target) - arg(source), 2.0 * std::numbers::pi);
  }
  return angle;
}

SpinConnection lift(const IntrinsicNet& inet, std::vector<int> signs) {
  SpinConnection conn;
  conn.net = inet.net;
  conn.angle = levi_civita(inet);
  if (signs.empty()) signs.assign(inet.topology().edge_count(), 1);
  if (static_cast<int>(signs.size()) != inet.topology().edge_count())
    throw Error(ErrorKind::InvalidArgument, "sign table does not match edge count");
  for (int& s : signs) s = s < 0 ? -1 : 1;
  conn.sign = std::move(signs);
  return conn;
}

IntrinsicCurvature intrinsic_curvature(const IntrinsicNet& inet, int v) {
  const OrientedNet& net = inet.topology();
  IntrinsicCurvature ic;
  ic.vertex = v;
  ic.loop = fundamental_loop(net, v);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < ic.loop.size(); ++k) {
    const int f = ic.loop[k];
    const int out = side_from(net, f, v);
    const int m = static_cast<int>(net.sides(f).size());
    const Vec2 a = inet.vecs[f][out];
    const Vec2 b = -inet.vecs[f][(out + m - 1) % m];
    const double w = std::atan2(std::abs(cross2(a, b)), a.dot(b));
    ic.omega.push_back(w);
    sum += w;
    if (ic.regular && !(cross2(a, b) > 0.0)) {
      ic.regular = false;
      ic.failing_face = f;
    }
  }
  ic.kappa = 2.0 * std::numbers::pi - sum;
  return ic;
}

Quaternion holonomy(const SpinConnection& conn, int v) {
  const DualPath loop = fundamental_loop(*conn.net, v);
  Quaternion mu = Quaternion::identity();
  for (std::size_t k = 0; k + 1 < loop.size(); ++k) mu = mu * conn.g(loop[k], loop[k + 1]);
  return mu;
}

std::vector<int> sigma(const IntrinsicNet& inet, const SpinConnection& conn, double tol) {
  const OrientedNet& net = inet.topology();
  std::vector<int> out(net.vertex_count(), 0);
  for (int v = 0; v < net.vertex_count(); ++v) {
    if (net.vertex_faces(v).empty() || net.is_boundary_vertex(v)) continue;
    const IntrinsicCurvature ic = intrinsic_curvature(inet, v);
    if (!ic.regular)
      throw Error(ErrorKind::Regularity,
                  "vertex " + std::to_string(v) + " is not regular in face " + std::to_string(ic.failing_face));
    const Quaternion mu = holonomy(conn, v);
    const double off = std::hypot(mu.x, mu.y);
    if (off > tol) throw Error(ErrorKind::Connection, "holonomy at vertex " + std::to_string(v) + " leaves Q_k", off);
    const Quaternion expect = angle_map(Vec3::UnitZ(), ic.kappa);
    const double plus = distance(mu, expect);
    const double minus = distance(mu, -expect);
    if (std::min(plus, minus) > tol)
      throw Error(ErrorKind::Tolerance, "holonomy at vertex " + std::to_string(v) + " does not match the angular defect",
                  std::min(plus, minus));
    out[v] = plus <= minus ? 1 : -1;
  }
  return out;
}

void check_convex_faces(const IntrinsicNet& inet) {
  for (int f = 0; f < inet.topology().face_count(); ++f) {
    const auto& vs = inet.vecs[f];
    const std::size_t m = vs.size();
    double turning = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const Vec2& prev = vs[(k + m - 1) % m];
      const Vec2& cur = vs[k];
      const double c = cross2(prev, cur);
      if (!(c > 0.0))
        throw Error(ErrorKind::Hypothesis, "face " + std::to_string(f) + " is not a convex counterclockwise polygon");
      turning += std::atan2(c, prev.dot(cur));
    }
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-9)
      throw Error(ErrorKind::Hypothesis, "face " + std::to_string(f) + " turns by more than one revolution",
                  turning - 2.0 * std::numbers::pi);
  }
}

PreferredLifting preferred_lifting(const IntrinsicNet& inet, double tol) {
  const OrientedNet& net = inet.topology();
  if (!net.is_closed()) throw Error(ErrorKind::UnsupportedTopology, "preferred lifting requires a closed net");
  check_convex_faces(inet);
  PreferredLifting out;
  out.conn = lift(inet);
  out.report.sigma_before = sigma(inet, out.conn, tol);
  std::vector<int> odd;
  for (int v = 0; v < net.vertex_count(); ++v)
    if (out.report.sigma_before[v] < 0) odd.push_back(v);
  if (odd.size() % 2 != 0)
    throw Error(ErrorKind::Infeasible, "odd number of vertices with sigma = -1 (product of sigma must be +1)");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : net.edges()) edges.push_back({e.a, e.b});
  out.report.flipped = tjoin_solve(net.vertex_count(), edges, odd);
  for (int e : out.report.flipped) out.conn.sign[e] = -out.conn.sign[e];
  out.report.sigma = sigma(inet, out.conn, tol);
  for (int s : out.report.sigma)
    if (s < 0) throw Error(ErrorKind::Infeasible, "sigma not repaired by the parity flip");
  return out;
}

namespace {

void require_preferred(const IntrinsicNet& inet, const SpinConnection& conn, double tol, const char* what) {
  for (int s : sigma(inet, conn, tol))
    if (s < 0) throw Error(ErrorKind::Precondition, std::string(what) + " is not a preferred lifting");
}

std::vector<int> classes_for(const OrientedNet& net, const std::vector<DualPath>& gens, const SpinConnection& ref,
                             const SpinConnection& conn) {
  std::vector<int> out;
  for (const auto& loop : gens) {
    int parity = 0;
    for (int e : path_edges(net, loop)) parity ^= (ref.sign[e] != conn.sign[e]) ? 1 : 0;
    out.push_back(parity);
  }
  return out;
}

}  // namespace

std::vector<int> class_of(const IntrinsicNet& inet, const SpinConnection& reference, const SpinConnection& conn,
                          double tol) {
  require_preferred(inet, reference, tol, "reference");
  require_preferred(inet, conn, tol, "connection");
  const OrientedNet& net = inet.topology();
  return classes_for(net, homology_basis(net), reference, conn);
}

SpinClasses spin_classes(const IntrinsicNet& inet, const SpinConnection& reference, double tol) {
  require_preferred(inet, reference, tol, "reference");
  const OrientedNet& net = inet.topology();
  SpinClasses out;
  out.generators = homology_basis(net);
  const int b = static_cast<int>(out.generators.size());
  if (b > 12) throw Error(ErrorKind::UnsupportedTopology, "enumeration limited to b <= 12");
  const int m = net.edge_count();

  std::vector<Gf2Row> A;
  for (int v = 0; v < net.vertex_count(); ++v) {
    Gf2Row row(m);
    for (int e : net.vertex_edges(v)) row.flip(e);
    A.push_back(row);
  }
  for (const auto& loop : out.generators) {
    Gf2Row row(m);
    for (int e : path_edges(net, loop)) row.flip(e);
    A.push_back(row);
  }
  for (int c = 0; c < (1 << b); ++c) {
    std::vector<bool> rhs(net.vertex_count(), false);
    for (int k = 0; k < b; ++k) rhs.push_back((c >> k) & 1);
    const auto delta = gf2_solve(A, rhs, m);
    if (!delta) throw Error(ErrorKind::Infeasible, "no flip cycle realizes class " + std::to_string(c));
    SpinConnection conn = reference;
    for (int e = 0; e < m; ++e)
      if (delta->get(e)) conn.sign[e] = -conn.sign[e];
    require_preferred(inet, conn, tol, "representative");
    out.class_vectors.push_back(classes_for(net, out.generators, reference, conn));
    out.representatives.push_back(std::move(conn));
  }
  return out;
}

QuatSparseOperator intrinsic_dirac(const IntrinsicNet& inet, const SpinConnection& conn) {
  const OrientedNet& net = inet.topology();
  QuatSparseOperator D(net.face_count());
  for (int i = 0; i < net.face_count(); ++i) {
    for (std::size_t k = 0; k < net.sides(i).size(); ++k) {
      const FaceSide& s = net.sides(i)[k];
      const Quaternion e = embed(inet.vecs[i][k]);
      if (s.neighbor >= 0)
        D.add(i, s.neighbor, e * conn.at(i, s.edge));
      else
        D.add(i, i, e * inet.boundary_factor(s.edge));
    }
    D.add(i, i, Quaternion());
  }
  return D;
}

std::vector<double> rayleigh_rho(const IntrinsicNet& inet, const SpinConnection& conn, const std::vector<Quaternion>& phi) {
  const auto Dphi = intrinsic_dirac(inet, conn).apply(phi);
  std::vector<double> rho;
  for (std::size_t i = 0; i < phi.size(); ++i) rho.push_back((phi[i].conj() * Dphi[i]).w / phi[i].norm2());
  return rho;
}

Realization realize(const IntrinsicNet& inet, const SpinConnection& conn, const std::vector<Quaternion>& phi,
                    std::vector<double> rho, double tol) {
  const OrientedNet& net = inet.topology();
  if (static_cast<int>(phi.size()) != net.face_count()) throw Error(ErrorKind::InvalidArgument, "spinor size mismatch");
  double scale = 0.0;
  for (const auto& p : phi) scale = std::max(scale, p.norm());
  for (int i = 0; i < net.face_count(); ++i)
    if (!(phi[i].norm() > 1e-14 * scale))
      throw Error(ErrorKind::InvalidSpinor, "spinor vanishes at face " + std::to_string(i));
  if (rho.empty()) rho = rayleigh_rho(inet, conn, phi);
  if (static_cast<int>(rho.size()) != net.face_count()) throw Error(ErrorKind::InvalidArgument, "rho size mismatch");

  Realization out;
  out.rho = rho;
  const auto Dphi = intrinsic_dirac(inet, conn).apply(phi);
  for (int i = 0; i < net.face_count(); ++i) {
    const double r = (Dphi[i] - rho[i] * phi[i]).norm();
    out.dirac_residual.push_back(r);
    out.max_dirac_residual = std::max(out.max_dirac_residual, r);
  }

  HyperedgeField& field = out.field;
  field.net = inet.net;
  field.E.resize(net.edge_count());
  field.ghost.assign(net.edge_count(), Vec3::Zero());
  for (int i = 0; i < net.face_count(); ++i) field.normals.push_back(rotate(Vec3::UnitZ(), phi[i]));
  for (int e = 0; e < net.edge_count(); ++e) {
    const PrimalEdge& pe = net.edge(e);
    const int c = pe.canonical_face();
    const Quaternion ev = embed(inet.own(c, e));
    if (pe.interior()) {
      field.E[e] = phi[c].conj() * ev * conn.at(c, e) * phi[pe.other_face(c)];
    } else {
      field.E[e] = phi[c].conj() * ev * inet.boundary_factor(e) * phi[c];
      const Quaternion& E = field.E[e];
      field.ghost[e] = (-(E.inverse() * Quaternion::pure(field.normals[c]) * E)).im().normalized();
    }
  }
  out.closure_defect = closure_defects(field);
  for (double d : out.closure_defect) out.max_closure_defect = std::max(out.max_closure_defect, d);
  try {
    out.fec = realize_field(field, tol);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::Integration) throw;
    std::ostringstream msg;
    msg << "realization does not close: " << err.what() << "; max Dirac residual " << out.max_dirac_residual;
    throw Error(ErrorKind::Integration, msg.str(), err.residual());
  }
  return out;
}

GaussBonnet gauss_bonnet_check(const IntrinsicNet& inet) {
  const OrientedNet& net = inet.topology();
  if (!net.is_closed()) throw Error(ErrorKind::UnsupportedTopology, "Gauss-Bonnet check requires a closed net");
  check_convex_faces(inet);
  GaussBonnet gb;
  for (int v = 0; v < net.vertex_count(); ++v) {
    if (net.vertex_faces(v).empty()) continue;
    const IntrinsicCurvature ic = intrinsic_curvature(inet, v);
    if (!ic.regular) throw Error(ErrorKind::Hypothesis, "vertex " + std::to_string(v) + " is not regular");
    gb.total_kappa += ic.kappa;
  }
  gb.two_pi_chi = 2.0 * std::numbers::pi * net.euler_characteristic();
  gb.residual = gb.total_kappa - gb.two_pi_chi;
  return gb;
}

}  // namespace spinnet
