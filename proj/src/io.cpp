#include "wlp/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace wlp {

namespace {

[[noreturn]] void fail(const std::string& path, int line,
                       const std::string& msg) {
  throw Error(path + ":" + std::to_string(line) + ": " + msg);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  return in;
}

int parse_int(const std::string& path, int line, const std::string& tok) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &pos);
  } catch (...) {
    fail(path, line, "expected an integer, got '" + tok + "'");
  }
  if (pos != tok.size())
    fail(path, line, "expected an integer, got '" + tok + "'");
  return v;
}

long parse_long(const std::string& path, int line, const std::string& tok) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (...) {
    fail(path, line, "expected an integer, got '" + tok + "'");
  }
  if (pos != tok.size())
    fail(path, line, "expected an integer, got '" + tok + "'");
  return v;
}

double parse_double(const std::string& path, int line,
                    const std::string& tok) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(tok, &pos);
  } catch (...) {
    fail(path, line, "expected a number, got '" + tok + "'");
  }
  if (pos != tok.size())
    fail(path, line, "expected a number, got '" + tok + "'");
  return v;
}

Vec3i parse_vec3i(const std::string& path, int line,
                  const std::vector<std::string>& toks, std::size_t at) {
  return Vec3i(parse_int(path, line, toks[at]),
               parse_int(path, line, toks[at + 1]),
               parse_int(path, line, toks[at + 2]));
}

std::array<Vec3i, 3> parse_triple(const std::string& path, int line,
                                  const std::vector<std::string>& toks,
                                  std::size_t at) {
  return {parse_vec3i(path, line, toks, at),
          parse_vec3i(path, line, toks, at + 3),
          parse_vec3i(path, line, toks, at + 6)};
}

void need_args(const std::string& path, int line,
               const std::vector<std::string>& toks, std::size_t n) {
  if (toks.size() != n + 1)
    fail(path, line,
         "key '" + toks[0] + "' takes " + std::to_string(n) + " value(s), got " +
             std::to_string(toks.size() - 1));
}

}  // namespace

Instance read_instance(const std::string& path) {
  auto in = open_in(path);
  Instance inst;
  std::string section;
  std::string raw;
  int line = 0;
  bool have_lattice = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto toks = split(raw);
    if (toks.empty()) continue;
    if (toks[0].front() == '[') {
      if (toks.size() != 1 || toks[0].back() != ']')
        fail(path, line, "malformed section header");
      section = toks[0].substr(1, toks[0].size() - 2);
      if (section != "lattice" && section != "boundary" &&
          section != "integrand" && section != "solver")
        fail(path, line, "unknown section [" + section + "]");
      if (section == "lattice") have_lattice = true;
      continue;
    }
    const std::string& key = toks[0];
    if (section == "lattice") {
      if (key == "resolution") {
        need_args(path, line, toks, 1);
        inst.lattice.resolution_n = parse_int(path, line, toks[1]);
      } else if (key == "box") {
        need_args(path, line, toks, 3);
        inst.lattice.box = parse_vec3i(path, line, toks, 1);
      } else if (key == "max-edge") {
        need_args(path, line, toks, 1);
        inst.lattice.max_edge_len = parse_double(path, line, toks[1]);
      } else {
        fail(path, line, "unknown key '" + key + "' in [lattice]");
      }
    } else if (section == "boundary") {
      if (key == "label") {
        inst.label = raw.substr(raw.find("label") + 6);
        while (!inst.label.empty() && inst.label.back() == ' ')
          inst.label.pop_back();
      } else if (key == "edge") {
        need_args(path, line, toks, 6);
        inst.boundary_edges.push_back({parse_vec3i(path, line, toks, 1),
                                       parse_vec3i(path, line, toks, 4)});
      } else if (key == "fix") {
        need_args(path, line, toks, 9);
        inst.fixed_triangles.push_back(parse_triple(path, line, toks, 1));
      } else {
        fail(path, line, "unknown key '" + key + "' in [boundary]");
      }
    } else if (section == "integrand") {
      if (key == "phi") {
        need_args(path, line, toks, 1);
        if (toks[1] == "willmore") inst.phi = Instance::Phi::Willmore;
        else if (toks[1] == "area") inst.phi = Instance::Phi::Area;
        else if (toks[1] == "custom-table") inst.phi = Instance::Phi::CustomTable;
        else fail(path, line, "unknown integrand '" + toks[1] + "'");
      } else if (key == "triangle-term") {
        need_args(path, line, toks, 10);
        inst.triangle_terms.push_back({parse_triple(path, line, toks, 1),
                                       parse_double(path, line, toks[10])});
      } else if (key == "pair-term") {
        need_args(path, line, toks, 19);
        inst.pair_terms.push_back({parse_triple(path, line, toks, 1),
                                   parse_triple(path, line, toks, 10),
                                   parse_double(path, line, toks[19])});
      } else {
        fail(path, line, "unknown key '" + key + "' in [integrand]");
      }
    } else if (section == "solver") {
      if (key == "tol-int") {
        need_args(path, line, toks, 1);
        inst.tol_int = parse_double(path, line, toks[1]);
      } else if (key == "node-limit") {
        need_args(path, line, toks, 1);
        inst.node_limit = parse_long(path, line, toks[1]);
      } else if (key == "seed") {
        need_args(path, line, toks, 1);
        inst.seed = static_cast<unsigned>(parse_long(path, line, toks[1]));
      } else {
        fail(path, line, "unknown key '" + key + "' in [solver]");
      }
    } else {
      fail(path, line, "content before the first [section] header");
    }
  }
  if (!have_lattice) throw Error(path + ": missing [lattice] section");
  inst.lattice.validate();
  return inst;
}

void write_instance(const std::string& path, const Instance& inst) {
  auto out = open_out(path);
  out << "[lattice]\n";
  out << "resolution " << inst.lattice.resolution_n << "\n";
  out << "box " << inst.lattice.box.x() << " " << inst.lattice.box.y() << " "
      << inst.lattice.box.z() << "\n";
  out << "max-edge " << fmt(inst.lattice.max_edge_len) << "\n\n";
  out << "[boundary]\n";
  if (!inst.label.empty()) out << "label " << inst.label << "\n";
  auto coords = [](std::ostream& os, const Vec3i& p) {
    os << p.x() << " " << p.y() << " " << p.z();
  };
  for (const auto& [a, b] : inst.boundary_edges) {
    out << "edge ";
    coords(out, a);
    out << " ";
    coords(out, b);
    out << "\n";
  }
  for (const auto& t : inst.fixed_triangles) {
    out << "fix ";
    for (int i = 0; i < 3; ++i) {
      coords(out, t[i]);
      out << (i < 2 ? " " : "\n");
    }
  }
  out << "\n[integrand]\n";
  out << "phi "
      << (inst.phi == Instance::Phi::Willmore
              ? "willmore"
              : inst.phi == Instance::Phi::Area ? "area" : "custom-table")
      << "\n";
  for (const auto& [t, v] : inst.triangle_terms) {
    out << "triangle-term ";
    for (int i = 0; i < 3; ++i) {
      coords(out, t[i]);
      out << " ";
    }
    out << fmt(v) << "\n";
  }
  for (const auto& [t1, t2, v] : inst.pair_terms) {
    out << "pair-term ";
    for (int i = 0; i < 3; ++i) {
      coords(out, t1[i]);
      out << " ";
    }
    for (int i = 0; i < 3; ++i) {
      coords(out, t2[i]);
      out << " ";
    }
    out << fmt(v) << "\n";
  }
  out << "\n[solver]\n";
  out << "tol-int " << fmt(inst.tol_int) << "\n";
  out << "node-limit " << inst.node_limit << "\n";
  out << "seed " << inst.seed << "\n";
}

namespace {

Index resolve_vertex(const TriangleDictionary& dict, const Vec3i& p) {
  auto v = dict.find_vertex(p);
  if (!v)
    throw Error("lattice point (" + std::to_string(p.x()) + " " +
                std::to_string(p.y()) + " " + std::to_string(p.z()) +
                ") is not a dictionary vertex");
  return *v;
}

Index resolve_triangle(const TriangleDictionary& dict,
                       const std::array<Vec3i, 3>& t) {
  const Index a = resolve_vertex(dict, t[0]);
  const Index b = resolve_vertex(dict, t[1]);
  const Index c = resolve_vertex(dict, t[2]);
  auto id = dict.find_triangle(a, b, c);
  if (!id) throw Error("oriented triangle not in the dictionary");
  return *id;
}

}  // namespace

BoundaryProblem resolve_boundary(const Instance& inst,
                                 const TriangleDictionary& dict) {
  BoundaryProblem problem;
  problem.label = inst.label;
  for (const auto& [a, b] : inst.boundary_edges) {
    auto eid = dict.find_edge(resolve_vertex(dict, a), resolve_vertex(dict, b));
    if (!eid) throw Error("boundary edge not in the dictionary");
    problem.boundary_edges.push_back({*eid, 1});
  }
  for (const auto& t : inst.fixed_triangles)
    problem.conormal_triangles.push_back(resolve_triangle(dict, t));
  return problem;
}

Eigen::VectorXd custom_objective(const Instance& inst,
                                 const TriangleDictionary& dict,
                                 const ConstraintSystem& pair_system) {
  std::map<Index, double> tri_w;
  for (const auto& [t, v] : inst.triangle_terms)
    tri_w[resolve_triangle(dict, t)] = v;
  std::map<std::pair<Index, Index>, double> pair_w;
  for (const auto& [t1, t2, v] : inst.pair_terms) {
    Index i = resolve_triangle(dict, t1), j = resolve_triangle(dict, t2);
    pair_w[{std::min(i, j), std::max(i, j)}] = v;
  }
  std::set<std::pair<Index, Index>> known;
  Eigen::VectorXd obj = Eigen::VectorXd::Zero(pair_system.ncols);
  for (Index c = 0; c < pair_system.ncols; ++c) {
    const VarDesc& v = pair_system.vars[c];
    if (v.kind == VarDesc::Kind::Triangle) {
      auto it = tri_w.find(v.tri_i);
      if (it != tri_w.end()) obj[c] = it->second;
    } else {
      const auto key = std::make_pair(std::min(v.tri_i, v.tri_j),
                                      std::max(v.tri_i, v.tri_j));
      known.insert(key);
      auto it = pair_w.find(key);
      if (it != pair_w.end()) obj[c] = it->second;
    }
  }
  for (const auto& [key, v] : pair_w)
    if (!known.count(key))
      throw Error("pair-term does not match any quadrangle variable");
  return obj;
}

void write_dictionary(const std::string& path, const TriangleDictionary& dict) {
  auto out = open_out(path);
  out << "S " << dict.spec.resolution_n << " " << dict.spec.box.x() << " "
      << dict.spec.box.y() << " " << dict.spec.box.z() << " "
      << fmt(dict.spec.max_edge_len) << "\n";
  for (std::size_t i = 0; i < dict.vertices.size(); ++i) {
    const Vec3i& p = dict.vertices[i];
    out << "V " << i << " " << p.x() << " " << p.y() << " " << p.z() << "\n";
  }
  for (const auto& t : dict.triangles)
    out << "T " << t.id << " " << t.v[0] << " " << t.v[1] << " " << t.v[2]
        << "\n";
  for (const auto& e : dict.edges)
    out << "E " << e.id << " " << e.v[0] << " " << e.v[1] << "\n";
}

TriangleDictionary read_dictionary(const std::string& path) {
  auto in = open_in(path);
  LatticeSpec spec;
  std::vector<Vec3i> vertices;
  std::vector<OrientedTriangle> triangles;
  std::vector<OrientedEdge> edges;
  bool have_spec = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto toks = split(raw);
    if (toks.empty()) continue;
    if (toks[0] == "S") {
      if (toks.size() != 6) fail(path, line, "S record takes 5 values");
      spec.resolution_n = parse_int(path, line, toks[1]);
      spec.box = parse_vec3i(path, line, toks, 2);
      spec.max_edge_len = parse_double(path, line, toks[5]);
      have_spec = true;
    } else if (toks[0] == "V") {
      if (toks.size() != 5) fail(path, line, "V record takes 4 values");
      if (parse_int(path, line, toks[1]) !=
          static_cast<int>(vertices.size()))
        fail(path, line, "vertex ids must be dense and in order");
      vertices.push_back(parse_vec3i(path, line, toks, 2));
    } else if (toks[0] == "T") {
      if (toks.size() != 5) fail(path, line, "T record takes 4 values");
      OrientedTriangle t;
      t.id = parse_int(path, line, toks[1]);
      if (t.id != static_cast<Index>(triangles.size()))
        fail(path, line, "triangle ids must be dense and in order");
      t.v = {parse_int(path, line, toks[2]), parse_int(path, line, toks[3]),
             parse_int(path, line, toks[4])};
      triangles.push_back(t);
    } else if (toks[0] == "E") {
      if (toks.size() != 4) fail(path, line, "E record takes 3 values");
      OrientedEdge e;
      e.id = parse_int(path, line, toks[1]);
      e.v = {parse_int(path, line, toks[2]), parse_int(path, line, toks[3])};
      edges.push_back(e);
    } else {
      fail(path, line, "unknown record '" + toks[0] + "'");
    }
  }
  if (!have_spec) throw Error(path + ": missing S record");
  TriangleDictionary dict =
      assemble_dictionary(spec, std::move(vertices), std::move(triangles));
  if (edges.size() != dict.edges.size())
    throw Error(path + ": edge records do not match the triangle set");
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id != dict.edges[i].id || edges[i].v != dict.edges[i].v)
      throw Error(path + ": edge records do not match the triangle set");
  return dict;
}

void write_mesh(const std::string& path, const MeshData& mesh) {
  if (!mesh.values.empty() && mesh.values.size() != mesh.faces.size())
    throw Error("write_mesh: value channel must cover every face");
  auto out = open_out(path);
  for (const Vec3d& p : mesh.vertices)
    out << "v " << fmt(p.x()) << " " << fmt(p.y()) << " " << fmt(p.z()) << "\n";
  for (std::size_t i = 0; i < mesh.faces.size(); ++i) {
    const auto& f = mesh.faces[i];
    out << "f " << f[0] << " " << f[1] << " " << f[2];
    if (!mesh.values.empty()) out << " " << fmt(mesh.values[i]);
    out << "\n";
  }
}

MeshData read_mesh(const std::string& path) {
  auto in = open_in(path);
  MeshData mesh;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    auto toks = split(raw);
    if (toks.empty()) continue;
    if (toks[0] == "v") {
      if (toks.size() != 4) fail(path, line, "v record takes 3 coordinates");
      mesh.vertices.push_back(Vec3d(parse_double(path, line, toks[1]),
                                    parse_double(path, line, toks[2]),
                                    parse_double(path, line, toks[3])));
    } else if (toks[0] == "f") {
      if (toks.size() != 4 && toks.size() != 5)
        fail(path, line, "f record takes 3 indices and an optional value");
      std::array<Index, 3> f;
      for (int i = 0; i < 3; ++i) {
        f[i] = parse_int(path, line, toks[1 + i]);
        if (f[i] < 0 || f[i] >= static_cast<Index>(mesh.vertices.size()))
          fail(path, line, "face index out of range");
      }
      if (toks.size() == 5) {
        if (mesh.values.size() != mesh.faces.size())
          fail(path, line, "either all faces carry a value or none");
        const double v = parse_double(path, line, toks[4]);
        if (v < -1e-9 || v > 1 + 1e-9)
          fail(path, line, "face value outside [0, 1]");
        mesh.values.push_back(v);
      } else if (!mesh.values.empty()) {
        fail(path, line, "either all faces carry a value or none");
      }
      mesh.faces.push_back(f);
    } else {
      fail(path, line, "unknown record '" + toks[0] + "'");
    }
  }
  return mesh;
}

void write_obj(const std::string& path, const MeshData& mesh) {
  auto out = open_out(path);
  for (const Vec3d& p : mesh.vertices)
    out << "v " << fmt(p.x()) << " " << fmt(p.y()) << " " << fmt(p.z()) << "\n";
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

MeshData support_mesh(const TriangleDictionary& dict,
                      const Eigen::VectorXd& triangle_values, double tol) {
  if (triangle_values.size() != dict.num_triangles())
    throw Error("support_mesh: dimension mismatch");
  MeshData mesh;
  std::map<Index, Index> vmap;
  for (Index t = 0; t < dict.num_triangles(); ++t) {
    if (triangle_values[t] <= tol) continue;
    std::array<Index, 3> f;
    for (int i = 0; i < 3; ++i) {
      const Index v = dict.triangles[t].v[i];
      auto [it, fresh] = vmap.insert({v, static_cast<Index>(mesh.vertices.size())});
      if (fresh) mesh.vertices.push_back(dict.vertex_pos(v));
      f[i] = it->second;
    }
    mesh.faces.push_back(f);
    mesh.values.push_back(std::min(1.0, std::max(0.0, triangle_values[t])));
  }
  return mesh;
}

TripletMatrix to_triplets(const ConstraintSystem& system) {
  TripletMatrix m;
  m.nrows = system.nrows;
  m.ncols = system.ncols;
  for (Index c = 0; c < system.ncols; ++c)
    for (const auto& [row, val] : system.cols[c])
      m.entries.push_back({row, c, val});
  return m;
}

void write_triplets(const std::string& path, const TripletMatrix& m) {
  auto out = open_out(path);
  out << m.nrows << " " << m.ncols << " " << m.entries.size() << "\n";
  for (const auto& [r, c, v] : m.entries)
    out << r << " " << c << " " << v << "\n";
}

TripletMatrix read_triplets(const std::string& path) {
  auto in = open_in(path);
  std::string raw;
  int line = 0;
  TripletMatrix m;
  long nnz = -1;
  while (std::getline(in, raw)) {
    ++line;
    auto toks = split(raw);
    if (toks.empty()) continue;
    if (toks.size() != 3) fail(path, line, "expected three fields");
    if (nnz < 0) {
      m.nrows = parse_int(path, line, toks[0]);
      m.ncols = parse_int(path, line, toks[1]);
      nnz = parse_long(path, line, toks[2]);
      continue;
    }
    const Index r = parse_int(path, line, toks[0]);
    const Index c = parse_int(path, line, toks[1]);
    const int v = parse_int(path, line, toks[2]);
    if (r < 0 || r >= m.nrows || c < 0 || c >= m.ncols)
      fail(path, line, "entry out of range");
    m.entries.push_back({r, c, v});
  }
  if (nnz < 0) throw Error(path + ": missing header");
  if (nnz != static_cast<long>(m.entries.size()))
    throw Error(path + ": header nnz does not match entry count");
  return m;
}

namespace {

void write_terms(std::ostream& out,
                 const std::vector<std::pair<std::string, double>>& terms) {
  int on_line = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& [name, coef] = terms[i];
    if (i == 0) {
      if (coef < 0)
        out << "- " << fmt(-coef);
      else
        out << fmt(coef);
    } else {
      out << (coef < 0 ? " - " : " + ") << fmt(std::abs(coef));
    }
    out << " " << name;
    if (++on_line == 8 && i + 1 < terms.size()) {
      out << "\n   ";
      on_line = 0;
    }
  }
}

}  // namespace

void write_lp_file(const std::string& path, const LinearProgram& lp,
                   const std::vector<std::string>& names, bool binary) {
  if (static_cast<Index>(names.size()) != lp.ncols)
    throw Error("write_lp_file: one name per column required");
  auto out = open_out(path);
  if (lp.objective_offset != 0.0)
    out << "\\ offset " << fmt(lp.objective_offset) << "\n";
  out << "Minimize\n obj: ";
  std::vector<std::pair<std::string, double>> terms;
  for (Index j = 0; j < lp.ncols; ++j)
    terms.push_back({names[j], lp.objective[j]});
  write_terms(out, terms);
  out << "\nSubject To\n";
  std::vector<std::vector<std::pair<std::string, double>>> rows(lp.nrows);
  for (Index j = 0; j < lp.ncols; ++j)
    for (const auto& [row, v] : lp.cols[j]) rows[row].push_back({names[j], v});
  for (Index r = 0; r < lp.nrows; ++r) {
    out << " c" << r << ": ";
    write_terms(out, rows[r]);  // an empty row prints as " cK: = rhs"
    out << " = " << fmt(lp.rhs[r]) << "\n";
  }
  out << "Bounds\n";
  for (Index j = 0; j < lp.ncols; ++j)
    out << " " << fmt(lp.lower[j]) << " <= " << names[j]
        << " <= " << fmt(lp.upper[j]) << "\n";
  if (binary) {
    out << "Binary\n";
    for (Index j = 0; j < lp.ncols; ++j) out << " " << names[j] << "\n";
  }
  out << "End\n";
}

LpFile read_lp_file(const std::string& path) {
  auto in = open_in(path);
  double offset = 0.0;
  std::vector<std::string> toks;
  {
    std::string raw;
    while (std::getline(in, raw)) {
      if (!raw.empty() && raw[0] == '\\') {
        auto ctoks = split(raw.substr(1));
        if (ctoks.size() == 2 && ctoks[0] == "offset")
          offset = parse_double(path, 0, ctoks[1]);
        continue;
      }
      for (auto& t : split(raw)) toks.push_back(std::move(t));
    }
  }
  std::size_t pos = 0;
  auto expect = [&](const std::string& kw) {
    if (pos >= toks.size() || toks[pos] != kw)
      throw Error(path + ": expected '" + kw + "'");
    ++pos;
  };
  auto is_number = [](const std::string& t) {
    char* end = nullptr;
    std::strtod(t.c_str(), &end);
    return end == t.c_str() + t.size() && !t.empty();
  };
  auto at_keyword = [&]() {
    return pos < toks.size() &&
           (toks[pos] == "Subject" || toks[pos] == "Bounds" ||
            toks[pos] == "Binary" || toks[pos] == "End");
  };
  // term list: ([+|-] coef name)*
  auto parse_terms = [&](auto stop) {
    std::vector<std::pair<std::string, double>> terms;
    while (pos < toks.size() && !stop()) {
      double sign = 1.0;
      if (toks[pos] == "+" || toks[pos] == "-") {
        sign = toks[pos] == "-" ? -1.0 : 1.0;
        ++pos;
      }
      if (pos >= toks.size() || !is_number(toks[pos]))
        throw Error(path + ": expected a coefficient");
      const double coef = sign * parse_double(path, 0, toks[pos++]);
      if (pos >= toks.size()) throw Error(path + ": expected a variable name");
      terms.push_back({toks[pos++], coef});
    }
    return terms;
  };

  expect("Minimize");
  expect("obj:");
  LpFile out;
  std::map<std::string, Index> index_of;
  auto objective = parse_terms(at_keyword);
  for (auto& [name, coef] : objective) {
    if (index_of.count(name)) throw Error(path + ": duplicate objective term");
    index_of[name] = static_cast<Index>(out.names.size());
    out.names.push_back(name);
  }
  LinearProgram& lp = out.lp;
  lp.ncols = static_cast<Index>(out.names.size());
  lp.cols.resize(lp.ncols);
  lp.objective.resize(lp.ncols);
  for (Index j = 0; j < lp.ncols; ++j) lp.objective[j] = objective[j].second;
  lp.lower = Eigen::VectorXd::Zero(lp.ncols);
  lp.upper = Eigen::VectorXd::Ones(lp.ncols);
  lp.objective_offset = offset;

  expect("Subject");
  expect("To");
  std::vector<double> rhs;
  while (pos < toks.size() && !at_keyword()) {
    const std::string label = toks[pos];
    if (label.empty() || label.back() != ':')
      throw Error(path + ": expected a row label");
    ++pos;
    auto terms = parse_terms([&] {
      return at_keyword() || (pos < toks.size() && toks[pos] == "=");
    });
    expect("=");
    if (pos >= toks.size()) throw Error(path + ": expected a right-hand side");
    rhs.push_back(parse_double(path, 0, toks[pos++]));
    const Index r = static_cast<Index>(rhs.size()) - 1;
    for (const auto& [name, coef] : terms) {
      auto it = index_of.find(name);
      if (it == index_of.end())
        throw Error(path + ": unknown variable '" + name + "'");
      lp.cols[it->second].push_back({r, coef});
    }
  }
  lp.nrows = static_cast<Index>(rhs.size());
  lp.rhs.resize(lp.nrows);
  for (Index r = 0; r < lp.nrows; ++r) lp.rhs[r] = rhs[r];

  if (pos < toks.size() && toks[pos] == "Bounds") {
    ++pos;
    while (pos < toks.size() && !at_keyword()) {
      const double lo = parse_double(path, 0, toks[pos++]);
      expect("<=");
      auto it = index_of.find(toks[pos]);
      if (it == index_of.end())
        throw Error(path + ": unknown variable '" + toks[pos] + "'");
      ++pos;
      expect("<=");
      const double hi = parse_double(path, 0, toks[pos++]);
      lp.lower[it->second] = lo;
      lp.upper[it->second] = hi;
    }
  }
  if (pos < toks.size() && toks[pos] == "Binary") {
    ++pos;
    out.binary = true;
    while (pos < toks.size() && toks[pos] != "End") {
      if (!index_of.count(toks[pos]))
        throw Error(path + ": unknown variable '" + toks[pos] + "'");
      ++pos;
    }
  }
  expect("End");
  return out;
}

std::vector<std::string> variable_names(const ConstraintSystem& system) {
  std::vector<std::string> names;
  names.reserve(system.ncols);
  for (const VarDesc& v : system.vars) {
    if (v.kind == VarDesc::Kind::Triangle) {
      names.push_back("t" + std::to_string(v.tri_i));
    } else {
      names.push_back("q" + std::to_string(v.tri_i) + "_" +
                      std::to_string(v.tri_j));
    }
  }
  return names;
}

void write_report(std::ostream& os, const SolveReport& report) {
  os << "status: " << to_string(report.status) << "\n";
  if (report.status == SolveStatus::Optimal ||
      report.status == SolveStatus::NodeLimit) {
    os << "objective: " << fmt(report.objective) << "\n";
    os << "lp_bound: " << fmt(report.lp_bound) << "\n";
    os << "duality_gap: " << fmt(report.duality_gap) << "\n";
  }
  os << "iterations: " << report.iterations << "\n";
  os << "nodes: " << report.nodes << "\n";
  os << "wall_time: " << fmt(report.wall_time) << "\n";
  os << "fractional_count: " << report.fractional.size() << "\n";
  if (!report.fractional.empty()) {
    os << "fractional:";
    for (Index j : report.fractional) os << " " << j;
    os << "\n";
  }
  if (report.farkas.size() > 0) {
    os << "farkas:";
    for (Index i = 0; i < report.farkas.size(); ++i)
      os << " " << fmt(report.farkas[i]);
    os << "\n";
  }
}

}  // namespace wlp
