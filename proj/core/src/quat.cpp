#include "spinnet/quat.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <numbers>
#include <string>

#include "spinnet/error.hpp"

namespace spinnet {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::ConstraintViolation: return "constraint-violation";
    case ErrorKind::DegenerateAngle: return "degenerate-angle";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::NonManifold: return "non-manifold";
    case ErrorKind::Orientation: return "orientation";
    case ErrorKind::UnsupportedTopology: return "unsupported-topology";
    case ErrorKind::Disconnected: return "disconnected";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Integration: return "integration";
    case ErrorKind::Monodromy: return "monodromy";
    case ErrorKind::Metric: return "metric";
    case ErrorKind::Regularity: return "regularity";
    case ErrorKind::Parity: return "parity";
    case ErrorKind::InvalidSpinor: return "invalid-spinor";
    case ErrorKind::Connection: return "connection";
    case ErrorKind::Tolerance: return "tolerance";
    case ErrorKind::Construction: return "construction";
    case ErrorKind::ClassicalOnly: return "classical-only";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion Quaternion::inverse() const {
  const double n2 = norm2();
  if (n2 == 0.0) throw Error(ErrorKind::InvalidArgument, "inverse of zero quaternion");
  return conj() / n2;
}

Quaternion Quaternion::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorKind::InvalidArgument, "normalizing zero quaternion");
  return *this / n;
}

Quaternion& Quaternion::operator+=(const Quaternion& o) {
  w += o.w;
  x += o.x;
  y += o.y;
  z += o.z;
  return *this;
}

Quaternion& Quaternion::operator-=(const Quaternion& o) {
  w -= o.w;
  x -= o.x;
  y -= o.y;
  z -= o.z;
  return *this;
}

Quaternion& Quaternion::operator*=(double s) {
  w *= s;
  x *= s;
  y *= s;
  z *= s;
  return *this;
}

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}

Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}

Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }

Quaternion operator*(double s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }

Quaternion operator*(const Quaternion& q, double s) { return s * q; }

Quaternion operator/(const Quaternion& q, double s) { return {q.w / s, q.x / s, q.y / s, q.z / s}; }

double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

bool approx_equal(const Quaternion& a, const Quaternion& b, double tol) {
  return std::abs(a.w - b.w) <= tol && std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol &&
         std::abs(a.z - b.z) <= tol;
}

Vec3 rotate(const Vec3& w, const Quaternion& q) {
  if (q.norm2() == 0.0) throw Error(ErrorKind::InvalidArgument, "rotate: zero quaternion");
  return (q.inverse() * Quaternion::pure(w) * q).im();
}

double signed_angle(const Vec3& a, const Vec3& b, const Vec3& u) {
  const Vec3 uh = u.normalized();
  const Vec3 pa = a - a.dot(uh) * uh;
  const Vec3 pb = b - b.dot(uh) * uh;
  return std::atan2(pa.cross(pb).dot(uh), pa.dot(pb));
}

double unsigned_angle(const Vec3& a, const Vec3& b) { return std::atan2(a.cross(b).norm(), a.dot(b)); }

namespace {

void check_pair(const Vec3& w1, const Vec3& w2, const Vec3& u, double tol, const char* who) {
  const double l1 = w1.norm();
  const double l2 = w2.norm();
  if (l1 == 0.0 || l2 == 0.0 || u.norm() == 0.0)
    throw Error(ErrorKind::ConstraintViolation, std::string(who) + ": vanishing input vector");
  const double dl = std::abs(l1 - l2) / std::max(l1, l2);
  if (dl > tol)
    throw Error(ErrorKind::ConstraintViolation, std::string(who) + ": |w1| != |w2|", dl);
}

// A projection onto the plane orthogonal to u shorter than this (relative) is
// treated as zero.
constexpr double kTinyProjection = 1e-12;

}  // namespace

Quaternion rotation_quat(const Vec3& w1, const Vec3& w2, const Vec3& u, double tol) {
  check_pair(w1, w2, u, tol, "rotation_quat");
  const Vec3 uh = u.normalized();
  const double res = std::abs((w1 - w2).dot(uh)) / w1.norm();
  if (res > tol) throw Error(ErrorKind::ConstraintViolation, "rotation_quat: w1 - w2 not orthogonal to u", res);

  const Vec3 pa = w1 - w1.dot(uh) * uh;
  if (pa.norm() <= kTinyProjection * w1.norm()) return Quaternion::identity();
  const double theta = signed_angle(w1, w2, uh);
  if (std::abs(theta) == 0.0) return Quaternion::identity();
  if (std::cos(theta / 2.0) <= 1e-12)
    throw Error(ErrorKind::DegenerateAngle, "rotation_quat: rotation angle is pi", theta);

  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  if (s >= 0.0) return Quaternion(-c, s * uh);
  return Quaternion(c, -s * uh);
}

HalfTangent half_tangent_quat(const Vec3& w1, const Vec3& w2, const Vec3& u, double tol) {
  check_pair(w1, w2, u, tol, "half_tangent_quat");
  const Vec3 uh = u.normalized();
  const double res = std::abs((w1 + w2).dot(uh)) / w1.norm();
  if (res > tol)
    throw Error(ErrorKind::ConstraintViolation, "half_tangent_quat: w1 + w2 not orthogonal to u", res);

  const Vec3 pa = w1 - w1.dot(uh) * uh;
  if (pa.norm() <= kTinyProjection * w1.norm())
    throw Error(ErrorKind::DegenerateAngle, "half_tangent_quat: w1 parallel to u");
  const double theta = signed_angle(w1, w2, uh);
  if (std::cos(theta / 2.0) <= 1e-12)
    throw Error(ErrorKind::DegenerateAngle, "half_tangent_quat: bending angle is pi", theta);

  HalfTangent out;
  out.theta = theta;
  out.H = u.norm() * std::tan(theta / 2.0);
  out.value = Quaternion(out.H, u);
  return out;
}

Quaternion angle_map(const Vec3& u, double theta) {
  return Quaternion(std::cos(theta / 2.0), std::sin(theta / 2.0) * u);
}

double angle_unmap(const Vec3& u, const Quaternion& q, double tol) {
  const Vec3 v = q.im();
  const double along = v.dot(u);
  const double off = (v - along * u).norm();
  const double unit = std::abs(q.norm() - 1.0);
  if (off > tol || unit > tol)
    throw Error(ErrorKind::ConstraintViolation, "angle_unmap: quaternion not in Q_u", std::max(off, unit));
  if (distance(q, Quaternion(-1.0)) <= tol) throw Error(ErrorKind::Domain, "angle_unmap: q = -1");
  return 2.0 * std::atan2(along, q.w);
}

CoplanarProduct coplanar_product(const std::vector<Vec3>& qs, double tol) {
  if (qs.size() % 2 != 0) throw Error(ErrorKind::InvalidArgument, "coplanar_product: odd count");
  CoplanarProduct out;
  out.value = Quaternion::identity();
  double prev = 0.0;
  for (std::size_t k = 0; k < qs.size(); ++k) {
    const Vec3& q = qs[k];
    const double res = std::max(std::abs(q.z()), std::abs(q.norm() - 1.0));
    if (res > tol) throw Error(ErrorKind::ConstraintViolation, "coplanar_product: input not a unit ij-vector", res);
    const double a = std::atan2(q.y(), q.x());
    if (k > 0 && k % 2 == 1) out.phi += std::remainder(prev - a, 2.0 * std::numbers::pi);
    prev = a;
    out.value = out.value * Quaternion::pure(q);
  }
  out.sign = qs.size() % 4 == 0 ? 1 : -1;
  const Quaternion expect = out.sign * Quaternion(std::cos(out.phi), 0.0, 0.0, std::sin(out.phi));
  const double dev = distance(expect, out.value);
  if (dev > 1e3 * tol) throw Error(ErrorKind::ConstraintViolation, "coplanar_product: sign table mismatch", dev);
  return out;
}

Quaternion align_quat(const Vec3& a, const Vec3& b) {
  const Eigen::Quaterniond e = Eigen::Quaterniond::FromTwoVectors(a, b);
  return Quaternion(e.w(), -e.x(), -e.y(), -e.z()).normalized();
}

Eigen::Matrix4d left_block(const Quaternion& q) {
  Eigen::Matrix4d m;
  m << q.w, -q.x, -q.y, -q.z,
       q.x, q.w, -q.z, q.y,
       q.y, q.z, q.w, -q.x,
       q.z, -q.y, q.x, q.w;
  return m;
}

}  // namespace spinnet
