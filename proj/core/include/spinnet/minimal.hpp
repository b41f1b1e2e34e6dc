#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinnet/extrinsic.hpp"

namespace spinnet {

using Complex = std::complex<double>;
using VertexPair = std::pair<int, int>;  // sorted

// Triangulated planar net z: V -> C.
struct PlanarMesh {
  std::vector<Complex> z;
  std::vector<std::array<int, 3>> triangles;
};

// Edge values keyed by the sorted vertex pair; missing edges carry zero.
struct QuadDiff {
  std::map<VertexPair, Complex> q;

  Complex at(int i, int j) const;
};

struct PlanarTopology {
  std::vector<VertexPair> interior_edges;  // edges with two triangles, sorted
  std::vector<int> interior_vertices;
  std::vector<std::vector<int>> neighbors;  // sorted
  std::vector<bool> boundary;
};

// Checks non-degenerate counterclockwise triangles and manifold edges.
PlanarTopology planar_topology(const PlanarMesh& pm);

struct HqdVertexResidual {
  int vertex = -1;
  double sum = 0.0;     // |sum_j q_ij|
  double sum_dz = 0.0;  // |sum_j q_ij / (z_j - z_i)|
};

struct HqdDiagnostics {
  std::vector<HqdVertexResidual> vertices;
  double max_sum = 0.0;
  double max_sum_dz = 0.0;
  bool valid = false;
};

HqdDiagnostics hqd_validate(const PlanarMesh& pm, const QuadDiff& q, double tol = 1e-10);

struct HqdSolveOptions {
  bool imaginary = false;  // restrict to purely imaginary q
  std::uint64_t seed = 1;
};

// A random element of the solution space of both linear constraint systems.
QuadDiff hqd_solve(const PlanarMesh& pm, const HqdSolveOptions& opts = {});
// Dimension of that solution space.
int hqd_dimension(const PlanarMesh& pm, bool imaginary = false);

QuadDiff hqd_rotate(const QuadDiff& q, double lambda);

// Unit normal of the stereographic projection of z.
Vec3 stereographic(Complex z);

struct WeierstrassNet {
  FecNet fec;
  HyperedgeField field;
  std::vector<int> face_vertex;    // planar interior vertex of each face
  std::vector<int> vertex_triangle;  // planar triangle of each vertex
  double max_constraint = 0.0;   // |<n_i + n_j, e_ij>| / |e_ij|
  double max_closure = 0.0;      // |sum_j Im E_ij|
  double max_face_curvature = 0.0;
  double max_edge_curvature = 0.0;
  double max_curvature_mismatch = 0.0;  // |H_ij(geometry) - Re q_ij|
};

// Faces are planar interior vertices, vertices are triangles, edges are planar
// edges at interior vertices.
WeierstrassNet weierstrass(const PlanarMesh& pm, const QuadDiff& q, double tol = 1e-9);

struct MinimalResult {
  std::vector<Quaternion> phi;
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
  SpinTransformResult transformed;
  double max_face_curvature = 0.0;
  std::optional<FecNet> fec;  // absent when the transformed edges do not close
  std::string integration_error;
};

// phi minimizing |(D_f + H) phi|, then the spin transform by phi. phi is
// made real and positive at gauge_face and scaled to mean |phi|^2 = 1.
MinimalResult minimalize(const FecNet& fec, const KernelOptions& opts = {}, int gauge_face = 0);

// conj(phi_i) (cos 2l E_ij - sin 2l n_i E_ij) phi_j, n_i -> phi_i^-1 n_i phi_i.
HyperedgeField associated_family(const HyperedgeField& field, const std::vector<Quaternion>& phi, double lambda);

// All H_ij vanish.
bool is_a_minimal(const HyperedgeField& field, double tol = 1e-9);
// Planar faces orthogonal to their normals and all H_i vanish.
bool is_classical(const FecNet& fec, double tol = 1e-9);
bool is_c_minimal(const FecNet& fec, double tol = 1e-9);

}  // namespace spinnet
