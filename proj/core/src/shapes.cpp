#include "spinnet/shapes.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "spinnet/error.hpp"

namespace spinnet::shapes {

namespace {

FecNet classical(std::vector<std::vector<int>> faces, std::vector<Vec3> positions) {
  OrientedNet net = OrientedNet::build(faces, static_cast<int>(positions.size()));
  std::vector<Vec3> normals = polygon_normals(net, positions);
  return make_fec(std::move(net), std::move(positions), std::move(normals));
}

}  // namespace

FecNet cube() {
  std::vector<Vec3> pos;
  for (int z = 0; z < 2; ++z)
    for (int y = 0; y < 2; ++y)
      for (int x = 0; x < 2; ++x) pos.emplace_back(x, y, z);
  return classical({{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}}, pos);
}

FecNet tetrahedron() {
  std::vector<Vec3> pos{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  std::vector<std::vector<int>> faces{{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  for (auto& f : faces) {
    const Vec3 n = (pos[f[1]] - pos[f[0]]).cross(pos[f[2]] - pos[f[0]]);
    if (n.dot(pos[f[0]] + pos[f[1]] + pos[f[2]]) < 0.0) std::swap(f[1], f[2]);
  }
  return classical(faces, pos);
}

OrientedNet torus_topology(int nu, int nv) {
  if (nu < 3 || nv < 3) throw Error(ErrorKind::InvalidArgument, "torus needs at least 3 x 3 faces");
  auto v = [&](int a, int b) { return ((a % nu + nu) % nu) * nv + (b % nv + nv) % nv; };
  std::vector<std::vector<int>> faces;
  for (int a = 0; a < nu; ++a)
    for (int b = 0; b < nv; ++b) faces.push_back({v(a, b), v(a + 1, b), v(a + 1, b + 1), v(a, b + 1)});
  return OrientedNet::build(faces, nu * nv);
}

FecNet torus(int nu, int nv, double R, double r) {
  OrientedNet net = torus_topology(nu, nv);
  std::vector<Vec3> pos;
  for (int a = 0; a < nu; ++a)
    for (int b = 0; b < nv; ++b) {
      const double t = 2.0 * std::numbers::pi * a / nu;
      const double p = 2.0 * std::numbers::pi * b / nv;
      pos.emplace_back((R + r * std::cos(p)) * std::cos(t), (R + r * std::cos(p)) * std::sin(t), r * std::sin(p));
    }
  std::vector<Vec3> normals = polygon_normals(net, pos);
  return make_fec(std::move(net), std::move(pos), std::move(normals));
}

FecNet flat_grid(int m, int n) {
  std::vector<Vec3> pos;
  for (int y = 0; y <= n; ++y)
    for (int x = 0; x <= m; ++x) pos.emplace_back(x, y, 0.0);
  auto v = [&](int x, int y) { return y * (m + 1) + x; };
  std::vector<std::vector<int>> faces;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < m; ++x) faces.push_back({v(x, y), v(x + 1, y), v(x + 1, y + 1), v(x, y + 1)});
  return classical(faces, pos);
}

FecNet fan(const std::vector<double>& heights, double radius) {
  const int n = static_cast<int>(heights.size());
  if (n < 3) throw Error(ErrorKind::InvalidArgument, "fan needs at least 3 faces");
  std::vector<Vec3> pos{Vec3::Zero()};
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * std::numbers::pi * k / n;
    pos.emplace_back(radius * std::cos(a), radius * std::sin(a), heights[k]);
  }
  std::vector<std::vector<int>> faces;
  for (int k = 0; k < n; ++k) faces.push_back({0, 1 + k, 1 + (k + 1) % n});
  return classical(faces, pos);
}

OrientedNet genus2_topology() {
  const OrientedNet t = torus_topology(4, 4);
  // Drop face 0 = (0, 4, 5, 1) from both copies; the second copy's hole
  // (a', b', c', d') is glued to the first with a' -> b, b' -> a, c' -> d, d' -> c.
  const std::vector<int> hole = t.face(0);
  std::map<int, int> second;
  int next = t.vertex_count();
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (v == hole[0]) second[v] = hole[1];
    else if (v == hole[1]) second[v] = hole[0];
    else if (v == hole[2]) second[v] = hole[3];
    else if (v == hole[3]) second[v] = hole[2];
    else second[v] = next++;
  }
  std::vector<std::vector<int>> faces;
  for (int f = 1; f < t.face_count(); ++f) faces.push_back(t.face(f));
  for (int f = 1; f < t.face_count(); ++f) {
    std::vector<int> face;
    for (int v : t.face(f)) face.push_back(second[v]);
    faces.push_back(face);
  }
  return OrientedNet::build(faces, next);
}

IntrinsicNet regular_intrinsic(const OrientedNet& net) {
  std::vector<std::vector<Vec2>> vecs;
  for (int f = 0; f < net.face_count(); ++f) {
    const int m = static_cast<int>(net.face(f).size());
    std::vector<Vec2> face;
    for (int k = 0; k < m; ++k) {
      const double a = 2.0 * std::numbers::pi * k / m;
      face.emplace_back(std::cos(a), std::sin(a));
    }
    vecs.push_back(std::move(face));
  }
  return build_intrinsic(std::make_shared<OrientedNet>(net), std::move(vecs));
}

PlanarMesh hex_disk() {
  const Complex w = std::polar(1.0, std::numbers::pi / 3.0);
  std::map<std::pair<int, int>, int> index;
  PlanarMesh pm;
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      if (std::abs(a + b) <= 2) {
        index[{a, b}] = static_cast<int>(pm.z.size());
        pm.z.push_back((static_cast<double>(a) + static_cast<double>(b) * w) * 0.4 + Complex(0.1, 0.05));
      }
  for (const auto& [ab, i] : index) {
    const auto [a, b] = ab;
    const std::pair<int, int> up[2][2] = {{{a + 1, b}, {a, b + 1}}, {{a + 1, b}, {a + 1, b - 1}}};
    for (const auto& t : up) {
      if (!index.count(t[0]) || !index.count(t[1])) continue;
      std::array<int, 3> tri{i, index[t[0]], index[t[1]]};
      const Complex d1 = pm.z[tri[1]] - pm.z[tri[0]];
      const Complex d2 = pm.z[tri[2]] - pm.z[tri[0]];
      if (d1.real() * d2.imag() - d1.imag() * d2.real() < 0.0) std::swap(tri[1], tri[2]);
      pm.triangles.push_back(tri);
    }
  }
  return pm;
}

std::vector<Quaternion> random_spinor(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> size(0.5, 1.5);
  std::vector<Quaternion> phi;
  for (int i = 0; i < n; ++i) {
    Quaternion q(normal(rng), normal(rng), normal(rng), normal(rng));
    phi.push_back(q.normalized() * size(rng));
  }
  return phi;
}

}  // namespace spinnet::shapes
