#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

namespace spinnet {

struct PrimalEdge {
  int a = -1;  // a < b
  int b = -1;
  int face_ab = -1;  // face traversing a -> b
  int face_ba = -1;  // face traversing b -> a

  bool interior() const { return face_ab >= 0 && face_ba >= 0; }
  // Interior edges: the lower face id; boundary edges: the only face.
  int canonical_face() const;
  int other_face(int f) const { return f == face_ab ? face_ba : face_ab; }
};

// Side k of a face: the edge from vertex k to vertex k+1.
struct FaceSide {
  int edge = -1;
  int from = -1;
  int to = -1;
  int neighbor = -1;  // -1 on the boundary
};

// Sequence of face ids, consecutive ones adjacent. A loop repeats its first
// face at the end.
using DualPath = std::vector<int>;

class OrientedNet {
 public:
  // Vertex count defaults to one past the largest referenced id.
  static OrientedNet build(const std::vector<std::vector<int>>& faces, int vertex_count = -1);

  int vertex_count() const { return vertex_count_; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<std::vector<int>>& faces() const { return faces_; }
  const std::vector<int>& face(int f) const { return faces_[f]; }
  const std::vector<FaceSide>& sides(int f) const { return sides_[f]; }
  const std::vector<PrimalEdge>& edges() const { return edges_; }
  const PrimalEdge& edge(int e) const { return edges_[e]; }

  // -1 when absent.
  int edge_id(int a, int b) const;
  int face_of_directed(int from, int to) const;
  // Primal edge shared by faces i and j, or -1.
  int edge_between(int i, int j) const;
  // Side index of edge e inside face f, or -1.
  int side_index(int f, int e) const;
  // Direction of edge e as traversed by its canonical face.
  std::pair<int, int> canonical_direction(int e) const;

  // Ordered dual edges (i, j), both directions, sorted.
  std::vector<std::pair<int, int>> dual_edges() const;
  std::vector<int> interior_edges() const;
  std::vector<int> boundary_edges() const;

  const std::vector<int>& vertex_faces(int v) const { return vertex_faces_[v]; }
  const std::vector<int>& vertex_edges(int v) const { return vertex_edges_[v]; }
  bool is_boundary_vertex(int v) const;
  bool is_closed() const;
  int euler_characteristic() const;

  // Connected components of the dual graph, each sorted, ordered by first face.
  std::vector<std::vector<int>> face_components() const;

 private:
  int vertex_count_ = 0;
  std::vector<std::vector<int>> faces_;
  std::vector<std::vector<FaceSide>> sides_;
  std::vector<PrimalEdge> edges_;
  std::unordered_map<std::uint64_t, int> edge_index_;
  std::unordered_map<std::uint64_t, int> directed_face_;
  std::vector<std::vector<int>> vertex_faces_;
  std::vector<std::vector<int>> vertex_edges_;
};

int euler_characteristic(const OrientedNet& net);
bool is_closed(const OrientedNet& net);

// Removes immediate backtracks (..., i, j, i, ...) ~ (..., i, ...).
DualPath normalize_loop(DualPath loop);
// Primal edges crossed by consecutive faces of the path.
std::vector<int> path_edges(const OrientedNet& net, const DualPath& path);
bool is_valid_path(const OrientedNet& net, const DualPath& path);

// Faces around an interior vertex, closed (first face repeated at the end).
// Starts at the lowest incident face id and leaves each face through its
// outgoing edge at v.
DualPath fundamental_loop(const OrientedNet& net, int v);

struct DualTree {
  int root = 0;
  std::vector<int> parent;       // -1 at the root
  std::vector<int> parent_edge;  // primal edge crossed to reach the parent
  std::vector<int> depth;
  std::vector<int> order;  // BFS order
  std::vector<int> tree_edges;
  std::vector<int> cotree_edges;
};

// Deterministic BFS tree rooted at face 0. Throws Disconnected.
DualTree dual_spanning_tree(const OrientedNet& net);
// Tree path from face a to face b.
DualPath tree_path(const DualTree& tree, int a, int b);
// Closed loop through the co-tree edge e: lca -> ... -> a -> b -> ... -> lca.
DualPath fundamental_cycle(const OrientedNet& net, const DualTree& tree, int e);

// Dual loops generating H_1 over GF(2); closed connected nets only.
std::vector<DualPath> homology_basis(const OrientedNet& net);

}  // namespace spinnet
