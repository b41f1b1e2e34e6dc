#pragma once

#include <string>
#include <vector>

#include "spinnet/extrinsic.hpp"

namespace spinnet {

struct MultiRatio {
  Quaternion value;
  Quaternion modified;  // E_12 E_23 ... without conjugate inversions
  bool even = true;     // parity of the path length
  int base = -1;
  int length = 0;
  DualPath path;  // after normalization
};

// Alternating product conj(E_12)^-1 E_23 conj(E_34)^-1 ... along the path.
MultiRatio multi_ratio(const HyperedgeField& field, const DualPath& path);

struct HyperEdgeFactorization {
  Vec3 e_proj = Vec3::Zero();  // e^i_ij
  Quaternion h;                // unit, E_ij = e_proj h
};

HyperEdgeFactorization factorize(const HyperedgeField& field, int i, int j);

struct VertexCurvature {
  int vertex = -1;
  double kappa = 0.0;
  bool regular = true;
  int failing_face = -1;
  std::vector<double> omega;  // per face of the loop
  DualPath loop;              // closed
};

// Never throws on irregular corners; reports them.
VertexCurvature vertex_curvature(const HyperedgeField& field, int v);
// Throws Regularity when a corner is not regular.
VertexCurvature angular_defect(const HyperedgeField& field, int v);

// Edges e_{k,k+1} unfolded into face 1 by the accumulated h-conjugation.
std::vector<Vec3> unfolded_edges(const HyperedgeField& field, int v);

struct CurvaturePart {
  Quaternion product;   // h_12 h_23 ... h_n1
  Quaternion expected;  // i_{n_1}(kappa)
  double kappa = 0.0;
  double deviation = 0.0;
};

CurvaturePart curvature_part(const HyperedgeField& field, int v);

struct VertexArgument {
  double phi = 0.0;
  double kappa = 0.0;
  int sign = 1;  // cr/|cr| = sign * i_{n_1}(phi)
  Quaternion normalized;
  double deviation = 0.0;
  double cr_norm = 0.0;
};

// Even-degree regular interior vertices; throws Parity otherwise.
VertexArgument vertex_argument(const HyperedgeField& field, int v);

struct SpinEquivalence {
  enum class Kind { Unique, Family, None };
  Kind kind = Kind::None;
  int base = 0;
  // A representative spinor. For a family, the others are
  // s * phi_base * (cos t + sin t axis) at the base, s > 0, propagated.
  std::vector<Quaternion> phi;
  Vec3 family_axis = Vec3::Zero();
  DualPath odd_loop;      // anchoring loop when unique
  DualPath violated;      // first violated loop when not equivalent
  double max_deviation = 0.0;
  std::string detail;
};

const char* to_string(SpinEquivalence::Kind kind);

// Decides whether B is a spin transform of A (same net) and reconstructs the
// spinor by propagation along the dual spanning tree.
SpinEquivalence spin_equivalent(const HyperedgeField& A, const HyperedgeField& B, double tol = 1e-8);
SpinEquivalence spin_equivalent(const FecNet& A, const FecNet& B, double tol = 1e-8);

}  // namespace spinnet
