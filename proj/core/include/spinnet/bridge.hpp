#pragma once

#include <vector>

#include "spinnet/extrinsic.hpp"
#include "spinnet/intrinsic.hpp"

namespace spinnet {

struct BridgeData {
  IntrinsicNet inet;
  SpinConnection conn;
  std::vector<Quaternion> g;      // frame aligners: e^i_ij = g_i^-1 (frame vector) g_i
  std::vector<Quaternion> phi_c;  // the constant spinor, phi_c|_i = g_i
  double max_axis_error = 0.0;    // |Im g_ij| off the k axis
  double max_lift_error = 0.0;    // distance of g_ij to the nearest Levi-Civita lift
};

// Face frames (t1, t2, n_i) with t1 along the projected first side.
std::vector<Quaternion> frame_aligners(const FecNet& fec);

// Projected edges expressed in each face's tangent frame. Shared lengths are
// |E_ij| on both sides.
IntrinsicNet intrinsic_of(const FecNet& fec);

// gauge[i] rotates face i's frame: g_i -> i_k(gauge[i]) g_i. Empty means none.
BridgeData induced_connection(const FecNet& fec, const std::vector<double>& gauge = {});

struct RelationReport {
  double max_deviation = 0.0;   // max entry of |g_i^-1 (D - H)_ij g_j - (D_f)_ij|
  double dirac_residual = 0.0;  // max |D(phi_c)_i - H_i phi_c,i|
  double max_axis_error = 0.0;
  double max_lift_error = 0.0;
  int entries = 0;
};

RelationReport relation_check(const FecNet& fec, const std::vector<double>& gauge = {});

struct Alignment {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Vec3 translation = Vec3::Zero();
  double raw_deviation = 0.0;
  double max_deviation = 0.0;
};

// Optimal proper rigid motion taking `from` onto `to`.
Alignment rigid_align(const std::vector<Vec3>& from, const std::vector<Vec3>& to);

struct Roundtrip {
  FecNet fec;  // aligned to the input
  Alignment alignment;
  double normal_deviation = 0.0;
  double max_dirac_residual = 0.0;
};

Roundtrip roundtrip(const FecNet& fec, double tol = 1e-8);

}  // namespace spinnet
