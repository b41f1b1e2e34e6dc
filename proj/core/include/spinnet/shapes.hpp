#pragma once

#include <cstdint>
#include <vector>

#include "spinnet/extrinsic.hpp"
#include "spinnet/intrinsic.hpp"
#include "spinnet/minimal.hpp"

namespace spinnet::shapes {

// Unit cube [0,1]^3, vertex x + 2y + 4z, outward normals.
FecNet cube();
// Regular tetrahedron inscribed in the cube [-1,1]^3.
FecNet tetrahedron();
// Torus of revolution with planar trapezoid faces, face (a, b) = a * nv + b.
FecNet torus(int nu = 4, int nv = 4, double R = 2.0, double r = 1.0);
OrientedNet torus_topology(int nu, int nv);
// Planar m x n grid of unit squares in z = 0, normals +k.
FecNet flat_grid(int m = 3, int n = 3);
// Center vertex 0 with a ring of n vertices at heights z[k].
FecNet fan(const std::vector<double>& heights, double radius = 1.0);
// Two punctured 4 x 4 tori glued along the puncture: genus 2.
OrientedNet genus2_topology();

// Every face a regular polygon with unit sides.
IntrinsicNet regular_intrinsic(const OrientedNet& net);

// Triangulated hexagon of radius 2 on the triangular lattice, scaled by 0.4
// and shifted off the origin.
PlanarMesh hex_disk();

// Seeded random quaternions with norms in [0.5, 1.5].
std::vector<Quaternion> random_spinor(int n, std::uint64_t seed);

}  // namespace spinnet::shapes
