#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "spinnet/extrinsic.hpp"
#include "spinnet/intrinsic.hpp"
#include "spinnet/minimal.hpp"

namespace spinnet::io {

using nlohmann::json;

// {"vertices", "faces", "normals", optional "boundary_normals": {"a-b": [x,y,z]}}
FecNet fecnet_from_json(const json& j);
json fecnet_to_json(const FecNet& fec);

struct IntrinsicInput {
  IntrinsicNet inet;
  std::vector<int> signs;  // per primal edge; empty when the file has none
};

// {"faces": n, "polygons": [[v...]...], "edges": [...], optional "signs"}.
// Interior edges: {"i", "j", "vec_i", "vec_j"}, each vector along its own
// face's traversal. Boundary edges: {"i", "verts": [a, b], "vec_i", "k"?}.
IntrinsicInput intrinsic_from_json(const json& j);
json intrinsic_to_json(const IntrinsicNet& inet, const SpinConnection* conn = nullptr);

struct HqdInput {
  PlanarMesh mesh;
  QuadDiff q;
};

// {"z": [[re, im]...], "faces": [[a, b, c]...], "q": {"i-j": [re, im]}}
HqdInput hqd_from_json(const json& j);
json hqd_to_json(const PlanarMesh& pm, const QuadDiff& q);

// Vertices and polygonal faces only; normals are the planar face normals.
// Throws ClassicalOnly for non-planar faces.
FecNet read_obj(std::istream& in, double tol = 1e-9);
void write_obj(std::ostream& out, const FecNet& fec);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

json to_json(const Vec3& v);
json to_json(const Quaternion& q);
Vec3 vec3_from_json(const json& j);
Quaternion quat_from_json(const json& j);

}  // namespace spinnet::io
