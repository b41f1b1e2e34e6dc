#pragma once

#include <map>
#include <vector>

#include "spinnet/extrinsic.hpp"

namespace spinnet {

// Per face and side, the edge vector in the face's orthonormal frame,
// oriented along the face's traversal.
struct IntrinsicNet {
  NetPtr net;
  std::vector<std::vector<Vec2>> vecs;
  // Unit quaternion acting in the diagonal term of each boundary edge
  // (defaults to 1).
  std::map<int, Quaternion> boundary_k;

  const OrientedNet& topology() const { return *net; }
  // Face f's own vector for edge e.
  Vec2 own(int f, int e) const;
  // e^i_ij: edge e as oriented in face i, in face `frame`'s coordinates.
  Vec2 in_frame(int i, int e, int frame) const;
  Quaternion boundary_factor(int e) const;
};

Quaternion embed(const Vec2& v);

// Checks shared lengths; with canonical_frames each face is rotated so its
// first side lies on +x.
IntrinsicNet build_intrinsic(NetPtr net, std::vector<std::vector<Vec2>> vecs, std::map<int, Quaternion> boundary_k = {},
                             double tol = 1e-9, bool canonical_frames = true);
// Rotates face f's frame by -angles[f] (its vectors by +angles[f]).
IntrinsicNet regauge(const IntrinsicNet& inet, const std::vector<double>& angles);

struct SpinConnection {
  NetPtr net;
  std::vector<double> angle;  // per edge: SO(2) angle from the other face to the canonical face
  std::vector<int> sign;      // per edge: +1 / -1 lifting choice

  // g_ij for adjacent faces; g_ji = g_ij^-1.
  Quaternion g(int i, int j) const;
  Quaternion at(int face, int e) const;
};

// Per interior edge the rotation angle taking the other face's coordinates of
// the shared edge to the canonical face's coordinates.
std::vector<double> levi_civita(const IntrinsicNet& inet);
// Lifts with the given signs (default all +1); canonical lift has Re g >= 0.
SpinConnection lift(const IntrinsicNet& inet, std::vector<int> signs = {});

struct IntrinsicCurvature {
  int vertex = -1;
  double kappa = 0.0;
  bool regular = true;
  int failing_face = -1;
  std::vector<double> omega;
  DualPath loop;
};

IntrinsicCurvature intrinsic_curvature(const IntrinsicNet& inet, int v);

// Holonomy g_12 g_23 ... g_n1 around the fundamental loop of v.
Quaternion holonomy(const SpinConnection& conn, int v);
// +1 where the holonomy equals i_k(kappa), -1 where it equals its negative,
// 0 at boundary vertices.
std::vector<int> sigma(const IntrinsicNet& inet, const SpinConnection& conn, double tol = 1e-9);

struct PreferredLiftingReport {
  std::vector<int> sigma_before;
  std::vector<int> sigma;
  std::vector<int> flipped;  // primal edge ids whose dual sign was flipped
};

struct PreferredLifting {
  SpinConnection conn;
  PreferredLiftingReport report;
};

// Checks that every face extends to a convex counterclockwise polygon.
void check_convex_faces(const IntrinsicNet& inet);

PreferredLifting preferred_lifting(const IntrinsicNet& inet, double tol = 1e-9);

// Sign-difference parities along each homology generator.
std::vector<int> class_of(const IntrinsicNet& inet, const SpinConnection& reference, const SpinConnection& conn,
                          double tol = 1e-9);

struct SpinClasses {
  std::vector<DualPath> generators;
  std::vector<SpinConnection> representatives;
  std::vector<std::vector<int>> class_vectors;
};

// All 2^b classes for b <= 12.
SpinClasses spin_classes(const IntrinsicNet& inet, const SpinConnection& reference, double tol = 1e-9);

// D(phi)_i = sum_j e^i_ij g_ij phi_j + sum_boundary e^i_ib k_ib phi_i.
QuatSparseOperator intrinsic_dirac(const IntrinsicNet& inet, const SpinConnection& conn);

// Re(conj(phi_i) (D phi)_i) / |phi_i|^2.
std::vector<double> rayleigh_rho(const IntrinsicNet& inet, const SpinConnection& conn, const std::vector<Quaternion>& phi);

struct Realization {
  HyperedgeField field;
  FecNet fec;
  std::vector<double> rho;
  std::vector<double> dirac_residual;  // |(D phi)_i - rho_i phi_i|
  std::vector<double> closure_defect;
  double max_dirac_residual = 0.0;
  double max_closure_defect = 0.0;
};

// E_ij = conj(phi_i) e^i_ij g_ij phi_j, n_i = phi_i^-1 k phi_i; empty rho
// means the per-face Rayleigh quotient.
Realization realize(const IntrinsicNet& inet, const SpinConnection& conn, const std::vector<Quaternion>& phi,
                    std::vector<double> rho = {}, double tol = 1e-8);

struct GaussBonnet {
  double total_kappa = 0.0;
  double two_pi_chi = 0.0;
  double residual = 0.0;
};

GaussBonnet gauss_bonnet_check(const IntrinsicNet& inet);

}  // namespace spinnet
