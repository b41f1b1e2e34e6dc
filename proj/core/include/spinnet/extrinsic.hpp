#pragma once

#include <map>
#include <memory>
#include <vector>

#include "spinnet/net.hpp"
#include "spinnet/quat.hpp"
#include "spinnet/solver.hpp"

namespace spinnet {

using NetPtr = std::shared_ptr<const OrientedNet>;

// Net with vertex positions and per-face unit normals.
struct FecNet {
  NetPtr net;
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;
  // Normals of the virtual faces across boundary edges, keyed by edge id.
  // Missing entries default to the reflection of the face normal across the
  // plane orthogonal to the edge (bending angle zero).
  std::map<int, Vec3> boundary_normals;

  const OrientedNet& topology() const { return *net; }
};

FecNet make_fec(OrientedNet net, std::vector<Vec3> positions, std::vector<Vec3> normals,
                std::map<int, Vec3> boundary_normals = {});
// Area-weighted (Newell) unit normals of the face polygons.
std::vector<Vec3> polygon_normals(const OrientedNet& net, const std::vector<Vec3>& positions);

// Vector of side k of face f, from vertex k to vertex k+1.
Vec3 side_vector(const FecNet& fec, int f, int k);
Vec3 boundary_normal(const FecNet& fec, int e);

struct EdgeResidual {
  int edge = -1;
  int face_i = -1;
  int face_j = -1;  // -1 for boundary edges
  double residual = 0.0;
};

struct Diagnostics {
  std::vector<EdgeResidual> edges;
  std::vector<double> normal_error;  // ||n_i| - 1|
  double max_residual = 0.0;
  double max_normal_error = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Edge-constraint residual <n_i + n_j, e_ij>/|e_ij| on every dual edge.
Diagnostics validate(const FecNet& fec, double tol = 1e-9);

struct HyperEdge {
  int i = -1;
  int j = -1;  // -1 for boundary edges
  int edge = -1;
  double theta = 0.0;
  double H = 0.0;
  Vec3 e = Vec3::Zero();
  Quaternion value;
};

double bending_angle(const FecNet& fec, int i, int j);
HyperEdge hyperedge(const FecNet& fec, int i, int j);
HyperEdge boundary_hyperedge(const FecNet& fec, int e);
double face_mean_curvature(const FecNet& fec, int i);

// Hyperedges and normals detached from positions. E[e] is the hyperedge seen
// from the canonical face of edge e; the opposite face sees its conjugate.
struct HyperedgeField {
  NetPtr net;
  std::vector<Quaternion> E;
  std::vector<Vec3> normals;
  std::vector<Vec3> ghost;  // per edge; meaningful on boundary edges only

  const OrientedNet& topology() const { return *net; }
  Quaternion seen_from(int face, int e) const;
  // E_ij for adjacent faces.
  Quaternion between(int i, int j) const;
};

HyperedgeField hyperedges(const FecNet& fec);
std::vector<double> face_mean_curvatures(const HyperedgeField& field);
// Per-face |Im sum_j E_ij| over all sides.
std::vector<double> closure_defects(const HyperedgeField& field);

// D_f: off-diagonal E_ij, diagonal -sum over interior neighbours of E_ij.
QuatSparseOperator dirac_matrix(const HyperedgeField& field);
std::vector<Quaternion> dirac_apply(const HyperedgeField& field, const std::vector<Quaternion>& phi);

struct SpinTransformResult {
  HyperedgeField field;
  std::vector<double> closure_defect;
  double max_closure_defect = 0.0;
  bool boundary_extended = false;
};

// s(E_ij) = conj(phi_i) E_ij phi_j, s(n_i) = phi_i^-1 n_i phi_i. Boundary
// edges use phi_j := phi_i.
SpinTransformResult spin_transform(const HyperedgeField& field, const std::vector<Quaternion>& phi);

// Right-multiplies phi by a constant so phi[gauge_face] is real positive and
// scales it to mean |phi|^2 = 1. Solutions of D_f phi = rho phi stay solutions.
void normalize_spinor(std::vector<Quaternion>& phi, int gauge_face = 0);

struct EdgeMismatch {
  int edge = -1;
  double mismatch = 0.0;
  std::vector<int> cycle;  // vertex cycle closed by this edge
};

class MonodromyError : public Error {
 public:
  MonodromyError(const std::string& what, std::vector<EdgeMismatch> m)
      : Error(ErrorKind::Monodromy, what, m.empty() ? 0.0 : m.front().mismatch), mismatches_(std::move(m)) {}
  const std::vector<EdgeMismatch>& mismatches() const { return mismatches_; }

 private:
  std::vector<EdgeMismatch> mismatches_;
};

// Positions from edge vectors (per edge id, along the canonical direction).
// Vertex 0 (lowest id) is placed at the origin. Tolerances are relative to the
// face perimeter / edge length.
std::vector<Vec3> integrate(const OrientedNet& net, const std::vector<Vec3>& edge_vectors, double tol = 1e-8);

// Positions from the imaginary parts of a field, packaged with its normals.
FecNet realize_field(const HyperedgeField& field, double tol = 1e-8);

// Area of face i after offsetting every adjacent plane by t along its normal.
double steiner_offset_area(const FecNet& fec, int i, double t, double tol = 1e-9);

// Solves (D_f - rho) phi = 0 as a near-kernel problem.
KernelResult solve_spinor(const HyperedgeField& field, const std::vector<double>& rho, const KernelOptions& opts = {});

}  // namespace spinnet
