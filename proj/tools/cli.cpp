#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "spinnet/bridge.hpp"
#include "spinnet/error.hpp"
#include "spinnet/extrinsic.hpp"
#include "spinnet/intrinsic.hpp"
#include "spinnet/io.hpp"
#include "spinnet/minimal.hpp"
#include "spinnet/multiratio.hpp"

namespace spinnet::cli {

namespace {

using io::json;

struct Config {
  std::string command;
  std::string input;
  std::string output;
  double tol = 1e-9;
  int max_iters = 500;
  int seed_face = 0;
  std::string rho;
  std::string lambdas;
  std::string loop;
  bool solve = false;
  bool imaginary = false;
  std::uint64_t seed = 1;
  std::string intrinsic_out;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json config_json(const Config& c) {
  json j;
  j["command"] = c.command;
  j["input"] = c.input;
  j["tol"] = c.tol;
  j["maxIters"] = c.max_iters;
  j["seedFace"] = c.seed_face;
  if (!c.rho.empty()) j["rho"] = c.rho;
  if (!c.lambdas.empty()) j["lambdas"] = c.lambdas;
  if (!c.loop.empty()) j["loop"] = c.loop;
  if (c.solve) j["solve"] = true;
  if (c.imaginary) j["imaginary"] = true;
  if (c.command == "weierstrass") j["seed"] = c.seed;
  return j;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

KernelOptions kernel_options(const Config& c) {
  KernelOptions o;
  o.tol = c.tol;
  o.max_iters = c.max_iters;
  return o;
}

json quat_list(const std::vector<Quaternion>& phi) {
  json a = json::array();
  for (const auto& q : phi) a.push_back(io::to_json(q));
  return a;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidArgument, "bad integer '" + tok + "' in list");
    }
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidArgument, "bad number '" + tok + "' in list");
    }
  }
  return out;
}

// A number, or a JSON file holding an array of per-face values.
std::vector<double> parse_rho(const std::string& spec, int faces) {
  try {
    std::size_t used = 0;
    const double v = std::stod(spec, &used);
    if (used == spec.size()) return std::vector<double>(faces, v);
  } catch (const std::logic_error&) {
  }
  const json j = io::read_json_file(spec);
  std::vector<double> rho;
  try {
    rho = j.get<std::vector<double>>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::Io, spec + ": expected an array of numbers");
  }
  if (static_cast<int>(rho.size()) != faces) throw Error(ErrorKind::InvalidArgument, "rho has the wrong number of entries");
  return rho;
}

enum class InputKind { Fec, Intrinsic, Hqd };

struct Input {
  InputKind kind = InputKind::Fec;
  json raw;
  std::optional<FecNet> fec;
  std::optional<io::IntrinsicInput> intrinsic;
  std::optional<io::HqdInput> hqd;
};

Input load(const std::string& path) {
  Input in;
  if (std::filesystem::path(path).extension() == ".obj") {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Io, "cannot open " + path);
    in.fec = io::read_obj(f);
    return in;
  }
  in.raw = io::read_json_file(path);
  if (!in.raw.is_object()) throw Error(ErrorKind::Io, path + ": expected a JSON object");
  if (in.raw.contains("normals")) {
    in.fec = io::fecnet_from_json(in.raw);
  } else if (in.raw.contains("polygons") && in.raw.contains("edges")) {
    in.kind = InputKind::Intrinsic;
    in.intrinsic = io::intrinsic_from_json(in.raw);
  } else if (in.raw.contains("z")) {
    in.kind = InputKind::Hqd;
    in.hqd = io::hqd_from_json(in.raw);
  } else {
    throw Error(ErrorKind::Io, path + ": unrecognized input (no normals, polygons or z)");
  }
  return in;
}

const FecNet& need_fec(const Input& in, const std::string& command) {
  if (!in.fec) throw Error(ErrorKind::InvalidArgument, command + " expects a face edge-constraint net");
  return *in.fec;
}

json vertex_pair(const OrientedNet& net, int e) { return {net.edge(e).a, net.edge(e).b}; }

json signs_json(const OrientedNet& net, const SpinConnection& conn) {
  json s = json::object();
  for (int e = 0; e < net.edge_count(); ++e) {
    const PrimalEdge& pe = net.edge(e);
    if (pe.interior())
      s[std::to_string(std::min(pe.face_ab, pe.face_ba)) + "-" + std::to_string(std::max(pe.face_ab, pe.face_ba))] =
          conn.sign[e];
  }
  return s;
}

// Intrinsic data from either input kind.
IntrinsicNet intrinsic_input(const Input& in, std::vector<int>* signs) {
  if (in.intrinsic) {
    if (signs) *signs = in.intrinsic->signs;
    return in.intrinsic->inet;
  }
  if (in.fec) {
    const BridgeData bd = induced_connection(*in.fec);
    if (signs) *signs = bd.conn.sign;
    return bd.inet;
  }
  throw Error(ErrorKind::InvalidArgument, "expected an intrinsic net or a face edge-constraint net");
}

json realize_report(const HyperedgeField& field, double tol, std::optional<FecNet>* fec_out = nullptr) {
  json r;
  try {
    const FecNet fec = realize_field(field, std::max(tol, 1e-8));
    const Diagnostics d = validate(fec, std::max(tol, 1e-8));
    r["net"] = io::fecnet_to_json(fec);
    r["netValid"] = d.pass;
    if (fec_out) *fec_out = fec;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Integration && e.kind() != ErrorKind::Monodromy) throw;
    r["net"] = nullptr;
    r["integrationError"] = e.what();
  }
  return r;
}

int cmd_validate(const Config& c, const Input& in, json& r) {
  if (in.kind == InputKind::Intrinsic) {
    const auto& inet = in.intrinsic->inet;
    r["pass"] = true;
    r["faces"] = inet.topology().face_count();
    r["edges"] = inet.topology().edge_count();
    return kOk;
  }
  if (in.kind == InputKind::Hqd) {
    const HqdDiagnostics d = hqd_validate(in.hqd->mesh, in.hqd->q, c.tol);
    r["pass"] = d.valid;
    r["maxSum"] = d.max_sum;
    r["maxSumDz"] = d.max_sum_dz;
    json v = json::array();
    for (const auto& x : d.vertices) v.push_back({{"vertex", x.vertex}, {"sum", x.sum}, {"sumDz", x.sum_dz}});
    r["vertices"] = v;
    return d.valid ? kOk : kValidation;
  }
  const FecNet& fec = *in.fec;
  const Diagnostics d = validate(fec, c.tol);
  r["pass"] = d.pass;
  r["maxResidual"] = d.max_residual;
  r["maxNormalError"] = d.max_normal_error;
  json edges = json::array();
  for (const auto& e : d.edges)
    edges.push_back({{"verts", vertex_pair(fec.topology(), e.edge)}, {"faces", {e.face_i, e.face_j}}, {"residual", e.residual}});
  r["edges"] = edges;
  return d.pass ? kOk : kValidation;
}

int cmd_curvature(const Config& c, const Input& in, json& r) {
  const FecNet& fec = need_fec(in, c.command);
  const OrientedNet& net = fec.topology();
  json edges = json::array();
  for (int e = 0; e < net.edge_count(); ++e) {
    const PrimalEdge& pe = net.edge(e);
    const int i = pe.canonical_face();
    const HyperEdge h = pe.interior() ? hyperedge(fec, i, pe.other_face(i)) : boundary_hyperedge(fec, e);
    edges.push_back({{"verts", vertex_pair(net, e)}, {"faces", {h.i, h.j}}, {"theta", h.theta}, {"H", h.H}});
  }
  const auto H = face_mean_curvatures(hyperedges(fec));
  json faces = json::array();
  double total = 0.0;
  for (int f = 0; f < net.face_count(); ++f) {
    faces.push_back({{"face", f}, {"H", H[f]}});
    total += H[f];
  }
  r["edges"] = edges;
  r["faces"] = faces;
  r["totalH"] = total;
  return kOk;
}

int cmd_spin_transform(const Config& c, const Input& in, json& r) {
  const FecNet& fec = need_fec(in, c.command);
  if (c.rho.empty()) throw Error(ErrorKind::InvalidArgument, "spin-transform needs --rho");
  const HyperedgeField field = hyperedges(fec);
  const auto rho = parse_rho(c.rho, fec.topology().face_count());
  KernelResult kr;
  try {
    kr = solve_spinor(field, rho, kernel_options(c));
  } catch (const ConvergenceError& e) {
    kr = e.best();
  }
  auto phi = unpack(kr.vector);
  normalize_spinor(phi, c.seed_face);
  const SpinTransformResult st = spin_transform(field, phi);
  r["residual"] = kr.residual;
  r["iterations"] = kr.iterations;
  r["converged"] = kr.converged;
  r["rho"] = rho;
  r["spinor"] = quat_list(phi);
  r["closureDefect"] = st.closure_defect;
  r["maxClosureDefect"] = st.max_closure_defect;
  r["boundaryExtended"] = st.boundary_extended;
  r["meanCurvature"] = face_mean_curvatures(st.field);
  r.update(realize_report(st.field, c.tol));
  return kr.converged ? kOk : kSolver;
}

int cmd_minimalize(const Config& c, const Input& in, json& r) {
  const FecNet& fec = need_fec(in, c.command);
  const MinimalResult m = minimalize(fec, kernel_options(c), c.seed_face);
  r["residual"] = m.residual;
  r["iterations"] = m.iterations;
  r["converged"] = m.converged;
  r["spinor"] = quat_list(m.phi);
  r["maxFaceCurvature"] = m.max_face_curvature;
  r["maxClosureDefect"] = m.transformed.max_closure_defect;
  r["meanCurvature"] = face_mean_curvatures(m.transformed.field);
  if (m.fec) {
    r["net"] = io::fecnet_to_json(*m.fec);
  } else {
    r["net"] = nullptr;
    r["integrationError"] = m.integration_error;
  }
  return m.converged ? kOk : kSolver;
}

int cmd_family(const Config& c, const Input& in, json& r) {
  const FecNet& fec = need_fec(in, c.command);
  std::vector<double> lambdas;
  if (c.lambdas.empty())
    for (int k = 0; k < 8; ++k) lambdas.push_back(std::numbers::pi * k / 8.0);
  else
    lambdas = parse_doubles(c.lambdas);
  const MinimalResult m = minimalize(fec, kernel_options(c), c.seed_face);
  const HyperedgeField field = hyperedges(fec);
  const HyperedgeField base = associated_family(field, m.phi, 0.0);
  json members = json::array();
  for (double lambda : lambdas) {
    const HyperedgeField af = associated_family(field, m.phi, lambda);
    double length_change = 0.0;
    for (std::size_t e = 0; e < af.E.size(); ++e)
      length_change = std::max(length_change, std::abs(af.E[e].norm() - base.E[e].norm()));
    json member;
    member["lambda"] = lambda;
    member["maxFaceCurvature"] = max_abs(face_mean_curvatures(af));
    member["maxClosureDefect"] = max_abs(closure_defects(af));
    member["maxLengthChange"] = length_change;
    member.update(realize_report(af, c.tol));
    members.push_back(member);
  }
  r["residual"] = m.residual;
  r["converged"] = m.converged;
  r["spinor"] = quat_list(m.phi);
  r["members"] = members;
  return m.converged ? kOk : kSolver;
}

int cmd_weierstrass(const Config& c, const Input& in, json& r) {
  if (!in.hqd) throw Error(ErrorKind::InvalidArgument, "weierstrass expects a planar mesh with z");
  const PlanarMesh& pm = in.hqd->mesh;
  QuadDiff q = in.hqd->q;
  const bool solved = c.solve || q.q.empty();
  if (solved) q = hqd_solve(pm, {c.imaginary, c.seed});
  const HqdDiagnostics d = hqd_validate(pm, q, std::max(c.tol, 1e-10));
  r["hqd"] = {{"valid", d.valid}, {"maxSum", d.max_sum}, {"maxSumDz", d.max_sum_dz}, {"solved", solved}};
  if (solved) r["hqd"]["q"] = io::hqd_to_json(pm, q)["q"];
  if (!d.valid) return kValidation;
  const WeierstrassNet w = weierstrass(pm, q, std::max(c.tol, 1e-9));
  r["maxConstraint"] = w.max_constraint;
  r["maxClosure"] = w.max_closure;
  r["maxFaceCurvature"] = w.max_face_curvature;
  r["maxEdgeCurvature"] = w.max_edge_curvature;
  r["maxCurvatureMismatch"] = w.max_curvature_mismatch;
  r["aMinimal"] = is_a_minimal(w.field, 1e-10);
  r["cMinimal"] = is_c_minimal(w.fec, 1e-10);
  r["faceVertex"] = w.face_vertex;
  r["vertexTriangle"] = w.vertex_triangle;
  r["net"] = io::fecnet_to_json(w.fec);
  return kOk;
}

int cmd_multiratio(const Config& c, const Input& in, json& r) {
  const FecNet& fec = need_fec(in, c.command);
  if (c.loop.empty()) throw Error(ErrorKind::InvalidArgument, "multiratio needs --loop");
  const HyperedgeField field = hyperedges(fec);
  const MultiRatio mr = multi_ratio(field, parse_ints(c.loop));
  r["value"] = io::to_json(mr.value);
  r["modified"] = io::to_json(mr.modified);
  r["even"] = mr.even;
  r["base"] = mr.base;
  r["length"] = mr.length;
  r["path"] = mr.path;
  r["norm"] = mr.value.norm();
  const Vec3 axis = mr.value.im();
  const Vec3& n = field.normals[mr.base];
  if (axis.norm() > 0.0) {
    r["axis"] = io::to_json(axis.normalized());
    r["axisNormalCross"] = axis.normalized().cross(n).norm();
    r["axisNormalDot"] = axis.normalized().dot(n);
  }
  return kOk;
}

int cmd_vertex_report(const Config& c, const Input& in, json& r) {
  const FecNet& fec = need_fec(in, c.command);
  const HyperedgeField field = hyperedges(fec);
  const OrientedNet& net = fec.topology();
  json vs = json::array();
  for (int v = 0; v < net.vertex_count(); ++v) {
    if (net.vertex_faces(v).empty() || net.is_boundary_vertex(v)) continue;
    json e;
    e["vertex"] = v;
    try {
      const VertexCurvature vc = vertex_curvature(field, v);
      e["kappa"] = vc.kappa;
      e["regular"] = vc.regular;
      e["degree"] = static_cast<int>(vc.loop.size()) - 1;
      const MultiRatio mr = multi_ratio(field, vc.loop);
      e["crNorm"] = mr.value.norm();
      if (mr.value.im().norm() > 0.0) e["axis"] = io::to_json(mr.value.im().normalized());
      if (!vc.regular) {
        e["failingFace"] = vc.failing_face;
      } else {
        e["curvaturePartDeviation"] = curvature_part(field, v).deviation;
        if (mr.even) {
          const VertexArgument va = vertex_argument(field, v);
          e["phi"] = va.phi;
          e["sign"] = va.sign;
          e["argumentDeviation"] = va.deviation;
        }
      }
    } catch (const Error& err) {
      e["error"] = err.what();
    }
    vs.push_back(e);
  }
  r["vertices"] = vs;
  (void)c;
  return kOk;
}

int cmd_preferred_lifting(const Config& c, const Input& in, json& r) {
  const IntrinsicNet inet = intrinsic_input(in, nullptr);
  const PreferredLifting pl = preferred_lifting(inet, std::max(c.tol, 1e-9));
  const OrientedNet& net = inet.topology();
  json flipped = json::array();
  for (int e : pl.report.flipped) flipped.push_back(vertex_pair(net, e));
  double dev = 0.0;
  for (int v = 0; v < net.vertex_count(); ++v) {
    if (net.vertex_faces(v).empty()) continue;
    dev = std::max(dev, distance(holonomy(pl.conn, v), angle_map(Vec3::UnitZ(), intrinsic_curvature(inet, v).kappa)));
  }
  r["sigmaBefore"] = pl.report.sigma_before;
  r["sigma"] = pl.report.sigma;
  r["flipped"] = flipped;
  r["signs"] = signs_json(net, pl.conn);
  r["holonomyDeviation"] = dev;
  return kOk;
}

int cmd_spin_structures(const Config& c, const Input& in, json& r) {
  const IntrinsicNet inet = intrinsic_input(in, nullptr);
  const PreferredLifting pl = preferred_lifting(inet, std::max(c.tol, 1e-9));
  const SpinClasses sc = spin_classes(inet, pl.conn, std::max(c.tol, 1e-9));
  const OrientedNet& net = inet.topology();
  json classes = json::array();
  for (std::size_t k = 0; k < sc.representatives.size(); ++k) {
    json flipped = json::array();
    for (int e = 0; e < net.edge_count(); ++e)
      if (sc.representatives[k].sign[e] != pl.conn.sign[e]) flipped.push_back(vertex_pair(net, e));
    classes.push_back({{"classVector", sc.class_vectors[k]}, {"flipped", flipped}});
  }
  r["b"] = static_cast<int>(sc.generators.size());
  r["count"] = static_cast<int>(sc.representatives.size());
  r["generators"] = sc.generators;
  r["classes"] = classes;
  r["referenceSigns"] = signs_json(net, pl.conn);
  return kOk;
}

int cmd_realize(const Config& c, const Input& in, json& r) {
  std::vector<int> signs;
  const IntrinsicNet inet = intrinsic_input(in, &signs);
  const OrientedNet& net = inet.topology();
  SpinConnection conn;
  if (!signs.empty())
    conn = lift(inet, signs);
  else if (net.is_closed())
    conn = preferred_lifting(inet, std::max(c.tol, 1e-9)).conn;
  else
    conn = lift(inet);

  std::vector<double> rho;
  if (!c.rho.empty())
    rho = parse_rho(c.rho, net.face_count());
  else if (in.raw.contains("rho"))
    rho = in.raw.at("rho").get<std::vector<double>>();

  std::vector<Quaternion> phi;
  bool converged = true;
  double residual = 0.0;
  if (in.raw.contains("spinor")) {
    for (const auto& q : in.raw.at("spinor")) phi.push_back(io::quat_from_json(q));
    if (static_cast<int>(phi.size()) != net.face_count()) throw Error(ErrorKind::InvalidArgument, "spinor has the wrong size");
  } else {
    if (rho.empty()) rho.assign(net.face_count(), 0.0);
    QuatSparseOperator op = intrinsic_dirac(inet, conn);
    for (int i = 0; i < net.face_count(); ++i) op.add(i, i, Quaternion(-rho[i]));
    KernelOptions o = kernel_options(c);
    o.require_symmetric = false;
    KernelResult kr;
    try {
      kr = near_kernel(op.real_matrix(), o);
    } catch (const ConvergenceError& e) {
      kr = e.best();
    }
    converged = kr.converged;
    residual = kr.residual;
    phi = unpack(kr.vector);
    normalize_spinor(phi, c.seed_face);
  }
  const Realization real = realize(inet, conn, phi, rho, std::max(c.tol, 1e-8));
  r["converged"] = converged;
  r["residual"] = residual;
  r["rho"] = real.rho;
  r["maxDiracResidual"] = real.max_dirac_residual;
  r["maxClosureDefect"] = real.max_closure_defect;
  r["netValid"] = validate(real.fec, std::max(c.tol, 1e-8)).pass;
  r["net"] = io::fecnet_to_json(real.fec);
  return converged ? kOk : kSolver;
}

int cmd_bridge_check(const Config& c, const Input& in, json& r) {
  const FecNet& fec = need_fec(in, c.command);
  const RelationReport rel = relation_check(fec);
  const Roundtrip rt = roundtrip(fec, std::max(c.tol, 1e-8));
  r["maxDeviation"] = rel.max_deviation;
  r["diracResidual"] = rel.dirac_residual;
  r["roundtripError"] = rt.alignment.max_deviation;
  r["rawRoundtripError"] = rt.alignment.raw_deviation;
  r["normalDeviation"] = rt.normal_deviation;
  r["maxAxisError"] = rel.max_axis_error;
  r["maxLiftError"] = rel.max_lift_error;
  r["entries"] = rel.entries;
  if (!c.intrinsic_out.empty()) {
    const BridgeData bd = induced_connection(fec);
    json j = io::intrinsic_to_json(bd.inet, &bd.conn);
    j["spinor"] = quat_list(bd.phi_c);
    j["rho"] = face_mean_curvatures(hyperedges(fec));
    io::write_text_file(c.intrinsic_out, j.dump(2) + "\n");
  }
  const bool pass = rel.max_deviation <= c.tol && rel.dirac_residual <= c.tol;
  r["pass"] = pass;
  return pass ? kOk : kValidation;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Io: return kIo;
    case ErrorKind::Convergence:
    case ErrorKind::Integration:
    case ErrorKind::Monodromy: return kSolver;
    default: return kValidation;
  }
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message, double residual, int code) {
  json e;
  e["error"] = kind;
  e["message"] = message;
  e["exitCode"] = code;
  if (residual != 0.0) e["residual"] = residual;
  err << e.dump() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  if (const char* env = std::getenv("SPINNET_TOL")) {
    try {
      cfg.tol = std::stod(env);
    } catch (const std::logic_error&) {
      report_error(err, "invalid-argument", std::string("SPINNET_TOL is not a number: ") + env, 0.0, kValidation);
      return kValidation;
    }
  }

  CLI::App app{"Spin transformations and Dirac operators on face edge-constraint nets", "spinnet"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "Input file (fecnet JSON, intrinsic JSON, planar mesh JSON or OBJ)")->required();
    sub->add_option("--tol", cfg.tol, "Tolerance (default 1e-9 or SPINNET_TOL)");
    sub->add_option("--max-iters", cfg.max_iters, "Solver iteration limit");
    sub->add_option("--seed-face", cfg.seed_face, "Face whose spinor is made real and positive");
    sub->add_option("-o,--output", cfg.output, "Write the report here instead of stdout");
  };
  struct Command {
    const char* name;
    const char* help;
    int (*fn)(const Config&, const Input&, json&);
  };
  const Command commands[] = {
      {"validate", "Check edge constraints and unit normals", cmd_validate},
      {"curvature", "Bending angles and integrated mean curvature", cmd_curvature},
      {"spin-transform", "Solve D_f phi = rho phi and transform", cmd_spin_transform},
      {"minimalize", "Spin transform towards a minimal net", cmd_minimalize},
      {"family", "Associated family of the minimalized net", cmd_family},
      {"weierstrass", "Minimal net from a holomorphic quadratic differential", cmd_weierstrass},
      {"multiratio", "Spin multi-ratio along a dual loop", cmd_multiratio},
      {"vertex-report", "Angular defect and multi-ratio argument per vertex", cmd_vertex_report},
      {"spin-structures", "Enumerate spin structures of a closed net", cmd_spin_structures},
      {"preferred-lifting", "Repair lifting signs so every holonomy matches its defect", cmd_preferred_lifting},
      {"realize", "Face edge-constraint net from intrinsic data and a spinor", cmd_realize},
      {"bridge-check", "Compare the induced intrinsic operator with D_f", cmd_bridge_check},
  };
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    common(sub);
    subs.push_back({sub, &cmd});
    const std::string name = cmd.name;
    if (name == "spin-transform" || name == "realize")
      sub->add_option("--rho", cfg.rho, "Constant or JSON file with per-face values");
    if (name == "family") sub->add_option("--lambdas", cfg.lambdas, "Comma-separated lambda values");
    if (name == "multiratio") sub->add_option("--loop", cfg.loop, "Comma-separated face ids");
    if (name == "weierstrass") {
      sub->add_flag("--solve", cfg.solve, "Ignore q in the input and solve for one");
      sub->add_flag("--imaginary", cfg.imaginary, "Solve for a purely imaginary q");
      sub->add_option("--seed", cfg.seed, "Seed for the solved q");
    }
    if (name == "bridge-check") sub->add_option("--intrinsic-out", cfg.intrinsic_out, "Also write the induced intrinsic net");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    report_error(err, "usage", e.what(), 0.0, kValidation);
    return kValidation;
  }

  const Command* chosen = nullptr;
  for (const auto& [sub, cmd] : subs)
    if (sub->parsed()) chosen = cmd;
  cfg.command = chosen->name;
  if (!(cfg.tol > 0.0) || cfg.max_iters <= 0) {
    report_error(err, "invalid-argument", "tolerance and iteration limit must be positive", 0.0, kValidation);
    return kValidation;
  }

  try {
    const Input in = load(cfg.input);
    json report;
    const int code = chosen->fn(cfg, in, report);
    const json conf = config_json(cfg);
    report["command"] = cfg.command;
    report["version"] = kVersion;
    report["config"] = conf;
    report["configHash"] = hex(fnv1a(conf.dump()));
    const std::string text = report.dump(2) + "\n";
    if (cfg.output.empty())
      out << text;
    else
      io::write_text_file(cfg.output, text);
    return code;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    report_error(err, to_string(e.kind()), e.what(), e.residual(), code);
    return code;
  } catch (const io::json::exception& e) {
    report_error(err, "io", e.what(), 0.0, kIo);
    return kIo;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what(), 0.0, kValidation);
    return kValidation;
  }
}

}  // namespace spinnet::cli
