#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spinnet/error.hpp"
#include "spinnet/multiratio.hpp"
#include "spinnet/shapes.hpp"

using namespace spinnet;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> alternating(int n, double h) {
  std::vector<double> z;
  for (int k = 0; k < n; ++k) z.push_back(k % 2 ? -h : h);
  return z;
}

std::vector<double> random_heights(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  std::vector<double> z;
  for (int k = 0; k < n; ++k) z.push_back(u(rng));
  return z;
}

// Brute-force alternating product straight from the definition.
Quaternion brute_ratio(const HyperedgeField& f, const DualPath& p) {
  Quaternion q = Quaternion::identity();
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const Quaternion E = f.between(p[k], p[k + 1]);
    q = q * (k % 2 == 0 ? E.conj().inverse() : E);
  }
  return q;
}

}  // namespace

TEST(MultiRatio, SingleStep) {
  const HyperedgeField f = hyperedges(shapes::cube());
  const MultiRatio mr = multi_ratio(f, {0, 2});
  EXPECT_LT(distance(mr.value, f.between(0, 2).conj().inverse()), 1e-15);
  EXPECT_FALSE(mr.even);
}

TEST(MultiRatio, FlatGridLoopIsReal) {
  const FecNet grid = shapes::flat_grid(3, 3);
  const HyperedgeField f = hyperedges(grid);
  const MultiRatio mr = multi_ratio(f, fundamental_loop(grid.topology(), 5));
  EXPECT_TRUE(mr.even);
  EXPECT_LT(mr.value.im().norm(), 1e-12);
  EXPECT_NEAR(std::abs(mr.value.w), 1.0, 1e-12);
}

TEST(MultiRatio, CubeCornerIsImaginaryAndTangent) {
  const FecNet cube = shapes::cube();
  const HyperedgeField f = hyperedges(cube);
  for (int v = 0; v < 8; ++v) {
    const MultiRatio mr = multi_ratio(f, fundamental_loop(cube.topology(), v));
    EXPECT_FALSE(mr.even);
    EXPECT_NEAR(mr.value.w, 0.0, 1e-10);
    EXPECT_NEAR(mr.value.im().dot(f.normals[mr.base]), 0.0, 1e-10);
  }
}

TEST(MultiRatio, MatchesBruteForceAndModifiedScalar) {
  const FecNet torus = shapes::torus(6, 4);
  const HyperedgeField f = hyperedges(torus);
  for (int v = 0; v < torus.topology().vertex_count(); ++v) {
    const DualPath loop = fundamental_loop(torus.topology(), v);
    const MultiRatio mr = multi_ratio(f, loop);
    EXPECT_LT(distance(mr.value, brute_ratio(f, loop)), 1e-12);
    // The modified ratio differs by a real factor.
    const Quaternion a = mr.value / mr.value.norm();
    const Quaternion b = mr.modified / mr.modified.norm();
    EXPECT_LT(std::min(distance(a, b), distance(a, -b)), 1e-12);
  }
  EXPECT_THROW(multi_ratio(f, {0, 13}), Error);
}

TEST(MultiRatio, EvenLoopsAtABaseFormAGroup) {
  const FecNet torus = shapes::torus(6, 4);
  const HyperedgeField f = hyperedges(torus);
  const DualPath a = fundamental_loop(torus.topology(), 0);
  DualPath b = a;
  std::reverse(b.begin(), b.end());
  std::rotate(b.begin(), b.end() - 1, b.end());
  // Loop through a's base: a around a neighbouring vertex shifted to start at a[0].
  const DualPath c = [&] {
    for (int v = 1; v < torus.topology().vertex_count(); ++v) {
      DualPath l = fundamental_loop(torus.topology(), v);
      l.pop_back();
      auto it = std::find(l.begin(), l.end(), a[0]);
      if (it == l.end()) continue;
      std::rotate(l.begin(), it, l.end());
      l.push_back(l.front());
      return l;
    }
    return DualPath{};
  }();
  ASSERT_FALSE(c.empty());
  DualPath ac = a;
  ac.insert(ac.end(), c.begin() + 1, c.end());
  const Quaternion lhs = brute_ratio(f, ac);
  EXPECT_LT(distance(lhs, brute_ratio(f, a) * brute_ratio(f, c)), 1e-12);
  EXPECT_LT(distance(multi_ratio(f, ac).value, lhs), 1e-12);
}

TEST(MultiRatio, CovariantUnderSpinTransforms) {
  const FecNet torus = shapes::torus(6, 4);
  const HyperedgeField f = hyperedges(torus);
  const auto phi = shapes::random_spinor(24, 9);
  const HyperedgeField g = spin_transform(f, phi).field;
  for (int v = 0; v < torus.topology().vertex_count(); ++v) {
    const DualPath loop = fundamental_loop(torus.topology(), v);
    const MultiRatio a = multi_ratio(f, loop);
    const MultiRatio b = multi_ratio(g, loop);
    const Quaternion& p = phi[a.base];
    EXPECT_LT(distance(b.value, p.inverse() * a.value * p), 1e-9);
    EXPECT_NEAR(a.value.norm(), b.value.norm(), 1e-9);
  }
}

TEST(Factorize, FlatAndCube) {
  const HyperedgeField grid = hyperedges(shapes::flat_grid(2, 1));
  EXPECT_LT(distance(factorize(grid, 0, 1).h, Quaternion::identity()), 1e-15);

  const FecNet cube = shapes::cube();
  const HyperedgeField f = hyperedges(cube);
  const HyperEdgeFactorization hf = factorize(f, 0, 2);
  EXPECT_NEAR(hf.h.w, std::cos(kPi / 4), 1e-12);
  const Vec3 e = f.between(0, 2).im();
  EXPECT_LT(hf.h.im().cross(e).norm(), 1e-12);
  EXPECT_LT((rotate(f.normals[0], hf.h) - f.normals[2]).norm(), 1e-12);
}

TEST(Factorize, LemmaConditionsOnRandomNets) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    const FecNet fec = shapes::fan(random_heights(4 + t % 4, rng));
    const HyperedgeField f0 = hyperedges(fec);
    const HyperedgeField f = spin_transform(f0, shapes::random_spinor(fec.topology().face_count(), t)).field;
    for (auto [i, j] : fec.topology().dual_edges()) {
      const HyperEdgeFactorization hf = factorize(f, i, j);
      EXPECT_LT(distance(Quaternion::pure(hf.e_proj) * hf.h, f.between(i, j)), 1e-12);
      EXPECT_GT(hf.h.w, 0.0);
      EXPECT_NEAR(hf.h.norm(), 1.0, 1e-12);
      EXPECT_NEAR(hf.h.im().dot(f.normals[i]), 0.0, 1e-10);
      EXPECT_NEAR(hf.h.im().dot(f.normals[j]), 0.0, 1e-10);
      EXPECT_LT((rotate(f.normals[i], hf.h) - f.normals[j]).norm(), 1e-10);
    }
  }
}

TEST(AngularDefect, Examples) {
  const FecNet grid = shapes::flat_grid(3, 3);
  EXPECT_NEAR(angular_defect(hyperedges(grid), 5).kappa, 0.0, 1e-12);
  const HyperedgeField cube = hyperedges(shapes::cube());
  for (int v = 0; v < 8; ++v) EXPECT_NEAR(angular_defect(cube, v).kappa, kPi / 2, 1e-12);
  const HyperedgeField tet = hyperedges(shapes::tetrahedron());
  for (int v = 0; v < 4; ++v) EXPECT_NEAR(angular_defect(tet, v).kappa, kPi, 1e-12);
}

TEST(AngularDefect, IrregularCornerIsReported) {
  // Ring directions 0, 72, 144, 130, 288 degrees: face 2 turns clockwise at
  // the center while its normal stays +k.
  std::vector<Vec3> pos{Vec3::Zero()};
  for (double deg : {0.0, 72.0, 144.0, 130.0, 288.0})
    pos.emplace_back(std::cos(deg * kPi / 180), std::sin(deg * kPi / 180), 0.0);
  OrientedNet net = OrientedNet::build({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1}});
  const FecNet fec = make_fec(std::move(net), pos, std::vector<Vec3>(5, Vec3::UnitZ()));
  const VertexCurvature vc = vertex_curvature(hyperedges(fec), 0);
  EXPECT_FALSE(vc.regular);
  EXPECT_EQ(vc.failing_face, 2);
  try {
    angular_defect(hyperedges(fec), 0);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Regularity);
  }
}

TEST(CurvaturePart, FlatCubeAndSaddle) {
  const FecNet grid = shapes::flat_grid(3, 3);
  EXPECT_LT(distance(curvature_part(hyperedges(grid), 5).product, Quaternion::identity()), 1e-12);

  const HyperedgeField cube = hyperedges(shapes::cube());
  const CurvaturePart cp = curvature_part(cube, 0);
  const Vec3 n1 = cube.normals[fundamental_loop(shapes::cube().topology(), 0)[0]];
  EXPECT_LT(distance(cp.product, angle_map(n1, kPi / 2)), 1e-12);

  const FecNet saddle = shapes::fan(alternating(6, 0.5));
  const CurvaturePart sp = curvature_part(hyperedges(saddle), 0);
  EXPECT_LT(sp.kappa, 0.0);
  EXPECT_LT(sp.deviation, 1e-9);
}

int star_winding(const HyperedgeField& f, int v) {
  const std::vector<Vec3> e = unfolded_edges(f, v);
  const Vec3 n1 = f.normals[fundamental_loop(f.topology(), v)[0]];
  double turn = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const Vec3& a = e[k];
    const Vec3& b = e[(k + 1) % e.size()];
    turn += std::atan2(a.cross(b).dot(n1), a.dot(b));
  }
  return static_cast<int>(std::lround(std::abs(turn) / (2 * kPi)));
}

TEST(CurvaturePart, HoldsAtEveryRegularVertex) {
  std::mt19937_64 rng(43);
  // A regular star can still wind twice around n_1 (branch point); kappa then
  // misses a full turn, so only simple stars qualify.
  int checked = 0;
  int branched = 0;
  for (int t = 0; t < 60; ++t) {
    const FecNet fec = shapes::fan(random_heights(3 + t % 6, rng));
    EXPECT_LT(curvature_part(hyperedges(fec), 0).deviation, 1e-9);
    std::vector<Quaternion> phi = shapes::random_spinor(fec.topology().face_count(), t);
    for (Quaternion& q : phi) q = Quaternion::identity() + q * 0.3;
    const HyperedgeField f = spin_transform(hyperedges(fec), phi).field;
    if (!vertex_curvature(f, 0).regular) continue;
    if (star_winding(f, 0) != 1) {
      ++branched;
      continue;
    }
    EXPECT_LT(curvature_part(f, 0).deviation, 1e-9) << "case " << t;
    ++checked;
  }
  EXPECT_GT(checked, 20);
  EXPECT_LT(branched, checked);
}

TEST(VertexArgument, FlatAndEqualAngles) {
  const VertexArgument flat = vertex_argument(hyperedges(shapes::flat_grid(3, 3)), 5);
  EXPECT_NEAR(flat.phi, 2 * kPi, 1e-12);
  EXPECT_NEAR(flat.normalized.w, -1.0, 1e-12);
  const VertexArgument six = vertex_argument(hyperedges(shapes::fan(std::vector<double>(6, 0.0))), 0);
  EXPECT_NEAR(six.phi, 2 * kPi, 1e-12);
  EXPECT_THROW(vertex_argument(hyperedges(shapes::cube()), 0), Error);
}

TEST(VertexArgument, MatchesDirectProduct) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 20; ++t) {
    const int n = 4 + 2 * (t % 3);
    const FecNet fec = shapes::fan(random_heights(n, rng));
    const HyperedgeField f = hyperedges(fec);
    const VertexArgument va = vertex_argument(f, 0);
    const DualPath loop = fundamental_loop(fec.topology(), 0);
    const Quaternion cr = brute_ratio(f, loop);
    EXPECT_LT(distance(cr / cr.norm(), va.sign * angle_map(f.normals[loop[0]], va.phi)), 1e-8);
    EXPECT_EQ(va.sign, n % 4 == 0 ? 1 : -1);
  }
}

TEST(SpinEquivalence, RoundTripCube) {
  const HyperedgeField A = hyperedges(shapes::cube());
  const HyperedgeField B = spin_transform(A, shapes::random_spinor(6, 71)).field;
  const SpinEquivalence eq = spin_equivalent(A, B);
  ASSERT_EQ(eq.kind, SpinEquivalence::Kind::Unique);
  const HyperedgeField R = spin_transform(A, eq.phi).field;
  for (std::size_t e = 0; e < B.E.size(); ++e) EXPECT_LT(distance(R.E[e], B.E[e]), 1e-8);
}

TEST(SpinEquivalence, TorusIsAFamily) {
  const HyperedgeField A = hyperedges(shapes::torus(4, 4));
  const HyperedgeField B = spin_transform(A, shapes::random_spinor(16, 72)).field;
  const SpinEquivalence eq = spin_equivalent(A, B);
  ASSERT_EQ(eq.kind, SpinEquivalence::Kind::Family);
  const HyperedgeField R = spin_transform(A, eq.phi).field;
  for (std::size_t e = 0; e < B.E.size(); ++e) EXPECT_LT(distance(R.E[e], B.E[e]), 1e-8);
}

TEST(SpinEquivalence, RigidRotationIsConstant) {
  const HyperedgeField A = hyperedges(shapes::cube());
  const Quaternion q = Quaternion(0.3, -0.2, 0.9, 0.1).normalized();
  const HyperedgeField B = spin_transform(A, std::vector<Quaternion>(6, q)).field;
  const SpinEquivalence eq = spin_equivalent(A, B);
  ASSERT_NE(eq.kind, SpinEquivalence::Kind::None);
  for (const Quaternion& p : eq.phi) EXPECT_LT(std::min(distance(p, q), distance(p, -q)), 1e-8);
}

TEST(SpinEquivalence, PerturbedLengthIsRejected) {
  const HyperedgeField A = hyperedges(shapes::cube());
  HyperedgeField B = spin_transform(A, shapes::random_spinor(6, 73)).field;
  B.E[5] = 1.02 * B.E[5];
  const SpinEquivalence eq = spin_equivalent(A, B);
  EXPECT_EQ(eq.kind, SpinEquivalence::Kind::None);
  EXPECT_FALSE(eq.violated.empty());
}
