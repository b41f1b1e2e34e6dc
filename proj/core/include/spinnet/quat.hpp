#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <vector>

namespace spinnet {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

// Hamilton quaternion w + x i + y j + z k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  constexpr explicit Quaternion(double real) : w(real) {}
  Quaternion(double real, const Vec3& v) : w(real), x(v.x()), y(v.y()), z(v.z()) {}

  static Quaternion pure(const Vec3& v) { return {0.0, v.x(), v.y(), v.z()}; }
  static constexpr Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }

  double re() const { return w; }
  Vec3 im() const { return {x, y, z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const;
  Quaternion conj() const { return {w, -x, -y, -z}; }
  Quaternion inverse() const;
  Quaternion normalized() const;
  Eigen::Vector4d coeffs() const { return {w, x, y, z}; }

  Quaternion& operator+=(const Quaternion& o);
  Quaternion& operator-=(const Quaternion& o);
  Quaternion& operator*=(double s);
};

Quaternion operator*(const Quaternion& a, const Quaternion& b);
Quaternion operator+(const Quaternion& a, const Quaternion& b);
Quaternion operator-(const Quaternion& a, const Quaternion& b);
Quaternion operator-(const Quaternion& a);
Quaternion operator*(double s, const Quaternion& q);
Quaternion operator*(const Quaternion& q, double s);
Quaternion operator/(const Quaternion& q, double s);

double distance(const Quaternion& a, const Quaternion& b);
// Component-wise comparison with absolute tolerance.
bool approx_equal(const Quaternion& a, const Quaternion& b, double tol = 1e-10);

// q^-1 w q. Throws InvalidArgument for q = 0.
Vec3 rotate(const Vec3& w, const Quaternion& q);

// Signed angle about u from the projection of a to the projection of b (both
// projected orthogonally to u).
double signed_angle(const Vec3& a, const Vec3& b, const Vec3& u);
// Unsigned angle in [0, pi].
double unsigned_angle(const Vec3& a, const Vec3& b);

// Unit q with Im(q) a nonnegative multiple of u and q^-1 w1 q = w2.
Quaternion rotation_quat(const Vec3& w1, const Vec3& w2, const Vec3& u, double tol = 1e-9);

struct HalfTangent {
  double H = 0.0;
  double theta = 0.0;
  Quaternion value;  // H + u
};

// Real H with (H + u)^-1 w1 (H + u) = -w2, H = |u| tan(theta/2).
HalfTangent half_tangent_quat(const Vec3& w1, const Vec3& w2, const Vec3& u, double tol = 1e-9);

// cos(theta/2) + sin(theta/2) u for unit u, theta in (-2pi, 2pi).
Quaternion angle_map(const Vec3& u, double theta);
// Inverse of angle_map on Q_u \ {-1}.
double angle_unmap(const Vec3& u, const Quaternion& q, double tol = 1e-9);

struct CoplanarProduct {
  Quaternion value;
  double phi = 0.0;
  int sign = 1;  // +1 when n = 0 mod 4, -1 when n = 2 mod 4
};

// Product of an even number of unit vectors in the ij-plane.
CoplanarProduct coplanar_product(const std::vector<Vec3>& qs, double tol = 1e-9);

// Unit q with q^-1 a q = b for unit a, b.
Quaternion align_quat(const Vec3& a, const Vec3& b);

// Left-multiplication matrix: block(q) * coeffs(p) = coeffs(q * p).
Eigen::Matrix4d left_block(const Quaternion& q);

}  // namespace spinnet
