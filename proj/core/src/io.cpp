#include "spinnet/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spinnet/error.hpp"

namespace spinnet::io {

namespace {

std::string pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return std::to_string(a) + "-" + std::to_string(b);
}

std::pair<int, int> parse_key(const std::string& s) {
  const auto dash = s.find('-');
  if (dash == std::string::npos || dash == 0) throw Error(ErrorKind::Io, "bad pair key '" + s + "'");
  try {
    std::size_t used = 0;
    const int a = std::stoi(s.substr(0, dash), &used);
    const int b = std::stoi(s.substr(dash + 1));
    return {a, b};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Io, "bad pair key '" + s + "'");
  }
}

Vec2 vec2_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Io, "expected a 2-vector");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json2(const Vec2& v) { return json::array({v.x(), v.y()}); }

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, std::string("malformed input: ") + e.what());
  }
}

}  // namespace

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

Vec3 vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::Io, "expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Quaternion quat_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorKind::Io, "expected a quaternion [w, x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

FecNet fecnet_from_json(const json& j) {
  return guarded([&] {
    std::vector<Vec3> pos;
    for (const auto& v : j.at("vertices")) pos.push_back(vec3_from_json(v));
    const auto faces = j.at("faces").get<std::vector<std::vector<int>>>();
    std::vector<Vec3> normals;
    for (const auto& n : j.at("normals")) normals.push_back(vec3_from_json(n));
    OrientedNet net = OrientedNet::build(faces, static_cast<int>(pos.size()));
    std::map<int, Vec3> ghost;
    if (j.contains("boundary_normals"))
      for (const auto& [k, v] : j.at("boundary_normals").items()) {
        const auto [a, b] = parse_key(k);
        const int e = net.edge_id(a, b);
        if (e < 0) throw Error(ErrorKind::Io, "boundary normal for missing edge " + k);
        ghost[e] = vec3_from_json(v);
      }
    return make_fec(std::move(net), std::move(pos), std::move(normals), std::move(ghost));
  });
}

json fecnet_to_json(const FecNet& fec) {
  json j;
  j["vertices"] = json::array();
  for (const auto& p : fec.positions) j["vertices"].push_back(to_json(p));
  j["faces"] = fec.topology().faces();
  j["normals"] = json::array();
  for (const auto& n : fec.normals) j["normals"].push_back(to_json(n));
  if (!fec.boundary_normals.empty()) {
    json g = json::object();
    for (const auto& [e, n] : fec.boundary_normals) {
      const PrimalEdge& pe = fec.topology().edge(e);
      g[pair_key(pe.a, pe.b)] = to_json(n);
    }
    j["boundary_normals"] = g;
  }
  return j;
}

IntrinsicInput intrinsic_from_json(const json& j) {
  return guarded([&] {
    const auto polygons = j.at("polygons").get<std::vector<std::vector<int>>>();
    if (j.contains("faces") && j.at("faces").get<int>() != static_cast<int>(polygons.size()))
      throw Error(ErrorKind::Io, "face count does not match the polygon list");
    auto net = std::make_shared<OrientedNet>(OrientedNet::build(polygons));
    std::vector<std::vector<Vec2>> vecs(net->face_count());
    std::vector<std::vector<bool>> seen(net->face_count());
    for (int f = 0; f < net->face_count(); ++f) {
      vecs[f].assign(net->sides(f).size(), Vec2::Zero());
      seen[f].assign(net->sides(f).size(), false);
    }
    auto put = [&](int f, int e, const Vec2& v) {
      const int k = net->side_index(f, e);
      if (k < 0) throw Error(ErrorKind::Io, "edge not on face " + std::to_string(f));
      vecs[f][k] = v;
      seen[f][k] = true;
    };
    std::map<int, Quaternion> boundary_k;
    for (const auto& ed : j.at("edges")) {
      const int i = ed.at("i").get<int>();
      if (i < 0 || i >= net->face_count()) throw Error(ErrorKind::Io, "face id out of range");
      if (ed.contains("j")) {
        const int jf = ed.at("j").get<int>();
        if (jf < 0 || jf >= net->face_count()) throw Error(ErrorKind::Io, "face id out of range");
        const int e = net->edge_between(i, jf);
        if (e < 0) throw Error(ErrorKind::Io, "faces " + std::to_string(i) + " and " + std::to_string(jf) + " are not adjacent");
        put(i, e, vec2_from_json(ed.at("vec_i")));
        put(jf, e, vec2_from_json(ed.at("vec_j")));
      } else {
        const auto verts = ed.at("verts").get<std::vector<int>>();
        if (verts.size() != 2) throw Error(ErrorKind::Io, "boundary edge needs two vertices");
        const int e = net->edge_id(verts[0], verts[1]);
        if (e < 0 || net->edge(e).interior()) throw Error(ErrorKind::Io, "not a boundary edge");
        put(i, e, vec2_from_json(ed.at("vec_i")));
        if (ed.contains("k")) boundary_k[e] = quat_from_json(ed.at("k"));
      }
    }
    for (int f = 0; f < net->face_count(); ++f)
      for (std::size_t k = 0; k < seen[f].size(); ++k)
        if (!seen[f][k]) throw Error(ErrorKind::Io, "face " + std::to_string(f) + " side " + std::to_string(k) + " has no vector");
    IntrinsicInput in;
    in.inet = build_intrinsic(net, std::move(vecs), std::move(boundary_k));
    if (j.contains("signs")) {
      in.signs.assign(net->edge_count(), 1);
      for (const auto& [k, v] : j.at("signs").items()) {
        const auto [a, b] = parse_key(k);
        const int e = net->edge_between(a, b);
        if (e < 0) throw Error(ErrorKind::Io, "sign for non-adjacent faces " + k);
        in.signs[e] = v.get<int>() < 0 ? -1 : 1;
      }
    }
    return in;
  });
}

json intrinsic_to_json(const IntrinsicNet& inet, const SpinConnection* conn) {
  const OrientedNet& net = inet.topology();
  json j;
  j["faces"] = net.face_count();
  j["polygons"] = net.faces();
  j["edges"] = json::array();
  for (int e = 0; e < net.edge_count(); ++e) {
    const PrimalEdge& pe = net.edge(e);
    const int c = pe.canonical_face();
    json ed;
    ed["i"] = c;
    ed["vec_i"] = to_json2(inet.own(c, e));
    if (pe.interior()) {
      ed["j"] = pe.other_face(c);
      ed["vec_j"] = to_json2(inet.own(pe.other_face(c), e));
    } else {
      const auto [a, b] = net.canonical_direction(e);
      ed["verts"] = {a, b};
      if (inet.boundary_k.count(e)) ed["k"] = to_json(inet.boundary_k.at(e));
    }
    j["edges"].push_back(ed);
  }
  if (conn) {
    json s = json::object();
    for (int e = 0; e < net.edge_count(); ++e) {
      const PrimalEdge& pe = net.edge(e);
      if (pe.interior()) s[pair_key(pe.face_ab, pe.face_ba)] = conn->sign[e];
    }
    j["signs"] = s;
  }
  return j;
}

HqdInput hqd_from_json(const json& j) {
  return guarded([&] {
    HqdInput in;
    for (const auto& z : j.at("z")) {
      const Vec2 v = vec2_from_json(z);
      in.mesh.z.emplace_back(v.x(), v.y());
    }
    for (const auto& t : j.at("faces")) {
      const auto tri = t.get<std::vector<int>>();
      if (tri.size() != 3) throw Error(ErrorKind::Io, "planar faces must be triangles");
      in.mesh.triangles.push_back({tri[0], tri[1], tri[2]});
    }
    if (j.contains("q"))
      for (const auto& [k, v] : j.at("q").items()) {
        const auto [a, b] = parse_key(k);
        const Vec2 c = vec2_from_json(v);
        in.q.q[a < b ? VertexPair{a, b} : VertexPair{b, a}] = Complex(c.x(), c.y());
      }
    return in;
  });
}

json hqd_to_json(const PlanarMesh& pm, const QuadDiff& q) {
  json j;
  j["z"] = json::array();
  for (const auto& z : pm.z) j["z"].push_back({z.real(), z.imag()});
  j["faces"] = json::array();
  for (const auto& t : pm.triangles) j["faces"].push_back({t[0], t[1], t[2]});
  j["q"] = json::object();
  for (const auto& [e, v] : q.q) j["q"][pair_key(e.first, e.second)] = {v.real(), v.imag()};
  return j;
}

FecNet read_obj(std::istream& in, double tol) {
  std::vector<Vec3> pos;
  std::vector<std::vector<int>> faces;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      double x = 0, y = 0, z = 0;
      if (!(ls >> x >> y >> z)) throw Error(ErrorKind::Io, "bad vertex on line " + std::to_string(lineno));
      pos.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<int> face;
      std::string tok;
      while (ls >> tok) {
        int idx = 0;
        try {
          idx = std::stoi(tok.substr(0, tok.find('/')));
        } catch (const std::logic_error&) {
          throw Error(ErrorKind::Io, "bad face index on line " + std::to_string(lineno));
        }
        face.push_back(idx < 0 ? static_cast<int>(pos.size()) + idx : idx - 1);
      }
      if (face.size() < 3) throw Error(ErrorKind::Io, "face with fewer than 3 vertices on line " + std::to_string(lineno));
      faces.push_back(face);
    }
  }
  OrientedNet net = OrientedNet::build(faces, static_cast<int>(pos.size()));
  std::vector<Vec3> normals = polygon_normals(net, pos);
  for (int f = 0; f < net.face_count(); ++f) {
    const auto& face = net.face(f);
    double size = 0.0;
    for (int v : face) size = std::max(size, (pos[v] - pos[face[0]]).norm());
    for (int v : face) {
      const double off = std::abs((pos[v] - pos[face[0]]).dot(normals[f]));
      if (off > tol * std::max(size, 1.0))
        throw Error(ErrorKind::ClassicalOnly, "face " + std::to_string(f) + " is not planar", off);
    }
  }
  return make_fec(std::move(net), std::move(pos), std::move(normals));
}

void write_obj(std::ostream& out, const FecNet& fec) {
  out.precision(17);
  for (const auto& p : fec.positions) out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  for (const auto& f : fec.topology().faces()) {
    out << 'f';
    for (int v : f) out << ' ' << v + 1;
    out << '\n';
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Io, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace spinnet::io
