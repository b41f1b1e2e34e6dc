#include "spinnet/net.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "spinnet/error.hpp"
#include "spinnet/gf2.hpp"

namespace spinnet {

namespace {

std::uint64_t key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

int PrimalEdge::canonical_face() const {
  if (face_ab >= 0 && face_ba >= 0) return std::min(face_ab, face_ba);
  return face_ab >= 0 ? face_ab : face_ba;
}

OrientedNet OrientedNet::build(const std::vector<std::vector<int>>& faces, int vertex_count) {
  OrientedNet net;
  int max_id = -1;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& face = faces[f];
    if (face.size() < 3)
      throw Error(ErrorKind::InvalidArgument, "face " + std::to_string(f) + " has fewer than 3 vertices");
    std::set<int> distinct(face.begin(), face.end());
    if (distinct.size() != face.size())
      throw Error(ErrorKind::InvalidArgument, "face " + std::to_string(f) + " repeats a vertex");
    for (int v : face) {
      if (v < 0) throw Error(ErrorKind::InvalidArgument, "negative vertex id in face " + std::to_string(f));
      max_id = std::max(max_id, v);
    }
  }
  if (vertex_count < 0) vertex_count = max_id + 1;
  if (max_id >= vertex_count) throw Error(ErrorKind::InvalidArgument, "vertex id out of range");
  net.vertex_count_ = vertex_count;
  net.faces_ = faces;

  std::map<std::pair<int, int>, std::vector<std::pair<int, bool>>> incidence;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& face = faces[f];
    for (std::size_t k = 0; k < face.size(); ++k) {
      const int a = face[k];
      const int b = face[(k + 1) % face.size()];
      incidence[{std::min(a, b), std::max(a, b)}].push_back({static_cast<int>(f), a < b});
    }
  }

  for (const auto& [pair, inc] : incidence) {
    const std::string name = std::to_string(pair.first) + "-" + std::to_string(pair.second);
    if (inc.size() > 2) throw Error(ErrorKind::NonManifold, "edge " + name + " is shared by more than two faces");
    PrimalEdge e;
    e.a = pair.first;
    e.b = pair.second;
    for (const auto& [f, forward] : inc) {
      int& slot = forward ? e.face_ab : e.face_ba;
      if (slot >= 0)
        throw Error(ErrorKind::Orientation,
                    "edge " + name + " has the same direction in faces " + std::to_string(slot) + " and " +
                        std::to_string(f));
      slot = f;
    }
    if (e.face_ab >= 0 && e.face_ab == e.face_ba)
      throw Error(ErrorKind::NonManifold, "edge " + name + " appears twice in one face");
    net.edge_index_[key(e.a, e.b)] = static_cast<int>(net.edges_.size());
    net.edges_.push_back(e);
  }

  net.sides_.resize(faces.size());
  net.vertex_faces_.assign(vertex_count, {});
  net.vertex_edges_.assign(vertex_count, {});
  std::set<std::pair<int, int>> adjacent;
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const auto& face = faces[f];
    for (std::size_t k = 0; k < face.size(); ++k) {
      FaceSide s;
      s.from = face[k];
      s.to = face[(k + 1) % face.size()];
      s.edge = net.edge_id(s.from, s.to);
      s.neighbor = net.edges_[s.edge].other_face(static_cast<int>(f));
      net.directed_face_[key(s.from, s.to)] = static_cast<int>(f);
      net.sides_[f].push_back(s);
      net.vertex_faces_[s.from].push_back(static_cast<int>(f));
      if (s.neighbor >= 0 && !adjacent.insert({static_cast<int>(f), s.neighbor}).second)
        throw Error(ErrorKind::NonManifold,
                    "faces " + std::to_string(f) + " and " + std::to_string(s.neighbor) + " share more than one edge");
    }
  }
  for (std::size_t e = 0; e < net.edges_.size(); ++e) {
    net.vertex_edges_[net.edges_[e].a].push_back(static_cast<int>(e));
    net.vertex_edges_[net.edges_[e].b].push_back(static_cast<int>(e));
  }
  for (auto& vf : net.vertex_faces_) std::sort(vf.begin(), vf.end());
  for (auto& ve : net.vertex_edges_) std::sort(ve.begin(), ve.end());
  return net;
}

int OrientedNet::edge_id(int a, int b) const {
  auto it = edge_index_.find(key(std::min(a, b), std::max(a, b)));
  return it == edge_index_.end() ? -1 : it->second;
}

int OrientedNet::face_of_directed(int from, int to) const {
  auto it = directed_face_.find(key(from, to));
  return it == directed_face_.end() ? -1 : it->second;
}

int OrientedNet::edge_between(int i, int j) const {
  if (i < 0 || j < 0 || i >= face_count() || j >= face_count()) return -1;
  for (const auto& s : sides_[i])
    if (s.neighbor == j) return s.edge;
  return -1;
}

int OrientedNet::side_index(int f, int e) const {
  const auto& s = sides_[f];
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k].edge == e) return static_cast<int>(k);
  return -1;
}

std::pair<int, int> OrientedNet::canonical_direction(int e) const {
  const PrimalEdge& pe = edges_[e];
  if (pe.canonical_face() == pe.face_ab) return {pe.a, pe.b};
  return {pe.b, pe.a};
}

std::vector<std::pair<int, int>> OrientedNet::dual_edges() const {
  std::vector<std::pair<int, int>> out;
  for (const auto& e : edges_) {
    if (!e.interior()) continue;
    out.push_back({e.face_ab, e.face_ba});
    out.push_back({e.face_ba, e.face_ab});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> OrientedNet::interior_edges() const {
  std::vector<int> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].interior()) out.push_back(static_cast<int>(e));
  return out;
}

std::vector<int> OrientedNet::boundary_edges() const {
  std::vector<int> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (!edges_[e].interior()) out.push_back(static_cast<int>(e));
  return out;
}

bool OrientedNet::is_boundary_vertex(int v) const {
  for (int e : vertex_edges_[v])
    if (!edges_[e].interior()) return true;
  return false;
}

bool OrientedNet::is_closed() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const PrimalEdge& e) { return e.interior(); });
}

int OrientedNet::euler_characteristic() const { return vertex_count_ - edge_count() + face_count(); }

std::vector<std::vector<int>> OrientedNet::face_components() const {
  std::vector<int> comp(faces_.size(), -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < face_count(); ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::deque<int> queue{start};
    comp[start] = id;
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      out[id].push_back(f);
      for (const auto& s : sides_[f])
        if (s.neighbor >= 0 && comp[s.neighbor] < 0) {
          comp[s.neighbor] = id;
          queue.push_back(s.neighbor);
        }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

int euler_characteristic(const OrientedNet& net) { return net.euler_characteristic(); }

bool is_closed(const OrientedNet& net) { return net.is_closed(); }

DualPath normalize_loop(DualPath loop) {
  std::vector<int> stack;
  for (int f : loop) {
    if (!stack.empty() && stack.back() == f) continue;
    if (stack.size() >= 2 && stack[stack.size() - 2] == f) {
      stack.pop_back();
      continue;
    }
    stack.push_back(f);
  }
  return stack;
}

std::vector<int> path_edges(const OrientedNet& net, const DualPath& path) {
  std::vector<int> out;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const int e = net.edge_between(path[k], path[k + 1]);
    if (e < 0)
      throw Error(ErrorKind::InvalidArgument,
                  "faces " + std::to_string(path[k]) + " and " + std::to_string(path[k + 1]) + " are not adjacent");
    out.push_back(e);
  }
  return out;
}

bool is_valid_path(const OrientedNet& net, const DualPath& path) {
  if (path.empty()) return false;
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    if (net.edge_between(path[k], path[k + 1]) < 0) return false;
  return true;
}

DualPath fundamental_loop(const OrientedNet& net, int v) {
  if (v < 0 || v >= net.vertex_count()) throw Error(ErrorKind::InvalidArgument, "vertex out of range");
  const auto& faces = net.vertex_faces(v);
  if (faces.empty() || net.is_boundary_vertex(v))
    throw Error(ErrorKind::Domain, "vertex " + std::to_string(v) + " is not an interior vertex");
  const int start = faces.front();
  DualPath loop{start};
  int f = start;
  while (true) {
    const auto& face = net.face(f);
    const auto k = std::find(face.begin(), face.end(), v) - face.begin();
    const int next = face[(k + 1) % face.size()];
    const int g = net.face_of_directed(next, v);
    if (g < 0) throw Error(ErrorKind::Domain, "vertex " + std::to_string(v) + " is not an interior vertex");
    loop.push_back(g);
    if (g == start) break;
    if (loop.size() > faces.size() + 1) break;
    f = g;
  }
  if (loop.size() != faces.size() + 1)
    throw Error(ErrorKind::NonManifold, "faces around vertex " + std::to_string(v) + " do not form a single fan");
  return loop;
}

DualTree dual_spanning_tree(const OrientedNet& net) {
  const auto comps = net.face_components();
  if (comps.size() > 1) {
    std::ostringstream msg;
    msg << "net has " << comps.size() << " components:";
    for (const auto& c : comps) {
      msg << " {";
      for (std::size_t k = 0; k < c.size(); ++k) msg << (k ? "," : "") << c[k];
      msg << "}";
    }
    throw Error(ErrorKind::Disconnected, msg.str());
  }
  DualTree t;
  const int n = net.face_count();
  t.parent.assign(n, -1);
  t.parent_edge.assign(n, -1);
  t.depth.assign(n, -1);
  if (n == 0) return t;
  std::vector<bool> is_tree(net.edge_count(), false);
  std::deque<int> queue{0};
  t.depth[0] = 0;
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop_front();
    t.order.push_back(f);
    for (const auto& s : net.sides(f)) {
      if (s.neighbor < 0 || t.depth[s.neighbor] >= 0) continue;
      t.depth[s.neighbor] = t.depth[f] + 1;
      t.parent[s.neighbor] = f;
      t.parent_edge[s.neighbor] = s.edge;
      is_tree[s.edge] = true;
      queue.push_back(s.neighbor);
    }
  }
  for (int e = 0; e < net.edge_count(); ++e) {
    if (!net.edge(e).interior()) continue;
    (is_tree[e] ? t.tree_edges : t.cotree_edges).push_back(e);
  }
  return t;
}

DualPath tree_path(const DualTree& tree, int a, int b) {
  std::vector<int> up_a{a};
  std::vector<int> up_b{b};
  int x = a;
  int y = b;
  while (tree.depth[x] > tree.depth[y]) up_a.push_back(x = tree.parent[x]);
  while (tree.depth[y] > tree.depth[x]) up_b.push_back(y = tree.parent[y]);
  while (x != y) {
    up_a.push_back(x = tree.parent[x]);
    up_b.push_back(y = tree.parent[y]);
  }
  up_b.pop_back();
  up_a.insert(up_a.end(), up_b.rbegin(), up_b.rend());
  return up_a;
}

DualPath fundamental_cycle(const OrientedNet& net, const DualTree& tree, int e) {
  const PrimalEdge& pe = net.edge(e);
  if (!pe.interior()) throw Error(ErrorKind::InvalidArgument, "boundary edge has no dual edge");
  const int a = std::min(pe.face_ab, pe.face_ba);
  const int b = std::max(pe.face_ab, pe.face_ba);
  // path b -> ... -> a through the tree, closed by crossing e from a to b.
  DualPath loop = tree_path(tree, b, a);
  loop.push_back(b);
  return loop;
}

std::vector<DualPath> homology_basis(const OrientedNet& net) {
  if (!net.is_closed()) throw Error(ErrorKind::UnsupportedTopology, "homology basis requires a closed net");
  const DualTree tree = dual_spanning_tree(net);
  const int m = net.edge_count();
  Gf2Basis basis(m);
  for (int v = 0; v < net.vertex_count(); ++v) {
    Gf2Row star(m);
    for (int e : net.vertex_edges(v)) star.flip(e);
    if (star.any()) basis.insert(star);
  }
  std::vector<DualPath> out;
  for (int e : tree.cotree_edges) {
    const DualPath loop = fundamental_cycle(net, tree, e);
    Gf2Row row(m);
    for (int pe : path_edges(net, loop)) row.flip(pe);
    if (basis.insert(row)) out.push_back(loop);
  }
  const int expected = 2 - net.euler_characteristic();
  if (static_cast<int>(out.size()) != expected)
    throw Error(ErrorKind::UnsupportedTopology,
                "homology rank " + std::to_string(out.size()) + " differs from 2 - chi = " + std::to_string(expected));
  return out;
}

}  // namespace spinnet
