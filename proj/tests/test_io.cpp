#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "wlp/io.hpp"
#include "wlp/tu_check.hpp"

using namespace wlp;
using doctest::Approx;

namespace {

// Scratch file helper; ctest runs every binary in its own directory.
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("io_scratch_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }

  void fill(const std::string& content) const {
    std::ofstream out(path);
    out << content;
  }
  std::string slurp() const {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
};

Instance square_instance() {
  Instance inst;
  inst.lattice = {1, Vec3i(1, 1, 0), std::sqrt(2.0)};
  inst.label = "unit square";
  inst.boundary_edges = {{Vec3i(0, 0, 0), Vec3i(1, 0, 0)},
                         {Vec3i(1, 0, 0), Vec3i(1, 1, 0)},
                         {Vec3i(1, 1, 0), Vec3i(0, 1, 0)},
                         {Vec3i(0, 1, 0), Vec3i(0, 0, 0)}};
  inst.fixed_triangles = {
      {Vec3i(0, 0, 0), Vec3i(1, 0, 0), Vec3i(1, 1, 0)},
      {Vec3i(0, 0, 0), Vec3i(1, 1, 0), Vec3i(0, 1, 0)}};
  inst.phi = Instance::Phi::Willmore;
  inst.tol_int = 1e-6;
  inst.node_limit = 1234;
  inst.seed = 9;
  return inst;
}

}  // namespace

TEST_CASE("instances survive a write/read round trip") {
  const Instance a = square_instance();
  TempFile f("instance.inst");
  write_instance(f.path, a);
  const Instance b = read_instance(f.path);

  CHECK(b.lattice.resolution_n == a.lattice.resolution_n);
  CHECK(b.lattice.box == a.lattice.box);
  CHECK(b.lattice.max_edge_len == a.lattice.max_edge_len);
  CHECK(b.label == a.label);
  CHECK(b.phi == a.phi);
  REQUIRE(b.boundary_edges.size() == a.boundary_edges.size());
  for (std::size_t i = 0; i < a.boundary_edges.size(); ++i) {
    CHECK(b.boundary_edges[i].first == a.boundary_edges[i].first);
    CHECK(b.boundary_edges[i].second == a.boundary_edges[i].second);
  }
  REQUIRE(b.fixed_triangles.size() == a.fixed_triangles.size());
  CHECK(b.tol_int == a.tol_int);
  CHECK(b.node_limit == a.node_limit);
  CHECK(b.seed == a.seed);
}

TEST_CASE("instance parser reports file, line, and offending key") {
  TempFile f("bad.inst");
  f.fill("[lattice]\nresolution 1\nfrobnicate 3\n");
  CHECK_THROWS_WITH_AS(read_instance(f.path),
                       doctest::Contains((f.path + ":3: unknown key "
                                          "'frobnicate' in [lattice]")
                                             .c_str()),
                       Error);

  f.fill("[lattice]\nbox 1 1\n");
  CHECK_THROWS_WITH_AS(read_instance(f.path), doctest::Contains(":2:"), Error);

  f.fill("resolution 1\n");
  CHECK_THROWS_WITH_AS(read_instance(f.path),
                       doctest::Contains("before the first [section]"), Error);

  f.fill("[conveyor]\n");
  CHECK_THROWS_WITH_AS(read_instance(f.path),
                       doctest::Contains("unknown section"), Error);

  f.fill("[boundary]\nlabel x\n");
  CHECK_THROWS_WITH_AS(read_instance(f.path),
                       doctest::Contains("missing [lattice]"), Error);

  f.fill("[lattice]\nresolution zero\n");
  CHECK_THROWS_WITH_AS(read_instance(f.path),
                       doctest::Contains("expected an integer"), Error);

  // Comments and blank lines are ignored.
  f.fill("# header\n[lattice]\nresolution 1 # inline\n\nbox 1 1 0\n"
         "max-edge 1.5\n");
  CHECK(read_instance(f.path).lattice.max_edge_len == 1.5);
}

TEST_CASE("boundary data resolves against the dictionary") {
  const Instance inst = square_instance();
  const TriangleDictionary dict = generate_dictionary(inst.lattice);
  const BoundaryProblem problem = resolve_boundary(inst, dict);
  CHECK_NOTHROW(validate_problem(dict, problem));
  CHECK(problem.boundary_edges.size() == 4);
  CHECK(problem.conormal_triangles.size() == 2);
  CHECK(problem.label == "unit square");

  Instance off = inst;
  off.boundary_edges[0].first = Vec3i(7, 7, 7);
  CHECK_THROWS_WITH_AS(resolve_boundary(off, dict),
                       doctest::Contains("not a dictionary vertex"), Error);

  off = inst;
  off.boundary_edges[0] = {Vec3i(0, 0, 0), Vec3i(0, 0, 0)};
  CHECK_THROWS_WITH_AS(resolve_boundary(off, dict),
                       doctest::Contains("edge not in the dictionary"), Error);

  off = inst;
  off.fixed_triangles[0] = {Vec3i(0, 0, 0), Vec3i(1, 0, 0), Vec3i(0, 1, 0)};
  // Collinear with no diagonal? This triple is a valid triangle but check
  // a genuinely missing one: three corners spanning too-long edges.
  CHECK_NOTHROW(resolve_boundary(off, dict));
}

TEST_CASE("custom objective tables address variables by coordinates") {
  Instance inst = square_instance();
  inst.phi = Instance::Phi::CustomTable;
  inst.triangle_terms = {
      {{Vec3i(0, 0, 0), Vec3i(1, 0, 0), Vec3i(1, 1, 0)}, 2.5}};
  inst.pair_terms = {{{Vec3i(0, 0, 0), Vec3i(1, 0, 0), Vec3i(1, 1, 0)},
                      {Vec3i(0, 0, 0), Vec3i(1, 1, 0), Vec3i(0, 1, 0)},
                      -1.25}};
  const TriangleDictionary dict = generate_dictionary(inst.lattice);
  const ConstraintSystem sys =
      build_pair_system(dict, {}, admissible_quadrangles(dict));
  const Eigen::VectorXd obj = custom_objective(inst, dict, sys);

  const Index t1 = *dict.find_triangle(0, 2, 3);
  const Index t2 = *dict.find_triangle(0, 3, 1);
  double sum = 0.0;
  for (Index c = 0; c < sys.ncols; ++c) {
    const VarDesc& v = sys.vars[c];
    if (v.kind == VarDesc::Kind::Triangle && v.tri_i == t1)
      CHECK(obj[c] == 2.5);
    else if (v.kind == VarDesc::Kind::Quadrangle &&
             std::min(v.tri_i, v.tri_j) == std::min(t1, t2) &&
             std::max(v.tri_i, v.tri_j) == std::max(t1, t2))
      CHECK(obj[c] == -1.25);
    else
      CHECK(obj[c] == 0.0);
    sum += obj[c];
  }
  CHECK(sum == Approx(1.25));

  // A pair term between opposite orientations matches no quadrangle.
  inst.pair_terms = {{{Vec3i(0, 0, 0), Vec3i(1, 0, 0), Vec3i(1, 1, 0)},
                      {Vec3i(0, 0, 0), Vec3i(1, 1, 0), Vec3i(1, 0, 0)},
                      1.0}};
  CHECK_THROWS_WITH_AS(custom_objective(inst, dict, sys),
                       doctest::Contains("does not match any quadrangle"),
                       Error);
}

TEST_CASE("dictionary dumps round-trip") {
  const TriangleDictionary dict =
      generate_dictionary({1, Vec3i(1, 1, 1), std::sqrt(2.0)});
  TempFile f("dict.txt");
  write_dictionary(f.path, dict);
  const TriangleDictionary back = read_dictionary(f.path);
  REQUIRE(back.num_triangles() == dict.num_triangles());
  REQUIRE(back.num_edges() == dict.num_edges());
  for (Index t = 0; t < dict.num_triangles(); ++t)
    CHECK(back.triangles[t].v == dict.triangles[t].v);
  for (Index e = 0; e < dict.num_edges(); ++e)
    CHECK(back.edges[e].v == dict.edges[e].v);
  CHECK(back.spec.max_edge_len == dict.spec.max_edge_len);

  // Tampered edge records are detected against the rebuilt tables.
  const std::string original = f.slurp();
  std::string text = original;
  text.replace(text.rfind("E "), 2, "X ");
  f.fill(text);
  CHECK_THROWS_WITH_AS(read_dictionary(f.path),
                       doctest::Contains("unknown record"), Error);

  // Drop the last edge record entirely.
  text = original;
  text.erase(text.rfind("E "));
  f.fill(text);
  CHECK_THROWS_WITH_AS(read_dictionary(f.path),
                       doctest::Contains("edge records"), Error);

  TempFile g("nospec.txt");
  g.fill("V 0 0 0 0\n");
  CHECK_THROWS_WITH_AS(read_dictionary(g.path),
                       doctest::Contains("missing S record"), Error);
}

TEST_CASE("meshes round-trip with and without a value channel") {
  MeshData mesh;
  mesh.vertices = {Vec3d(0, 0, 0), Vec3d(1, 0, 0), Vec3d(0, 1, 0),
                   Vec3d(0, 0, 1)};
  mesh.faces = {{0, 1, 2}, {0, 1, 3}};
  TempFile f("mesh.txt");

  write_mesh(f.path, mesh);
  MeshData back = read_mesh(f.path);
  REQUIRE(back.vertices.size() == 4);
  REQUIRE(back.faces.size() == 2);
  CHECK(back.values.empty());
  CHECK((back.vertices[3] - mesh.vertices[3]).norm() == 0.0);
  CHECK(back.faces[1] == mesh.faces[1]);

  mesh.values = {0.25, 1.0};
  write_mesh(f.path, mesh);
  back = read_mesh(f.path);
  REQUIRE(back.values.size() == 2);
  CHECK(back.values[0] == 0.25);

  mesh.values = {0.25};  // one value missing
  CHECK_THROWS_WITH_AS(write_mesh(f.path, mesh),
                       doctest::Contains("every face"), Error);

  f.fill("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2 0.5\nf 0 1 2\n");
  CHECK_THROWS_WITH_AS(read_mesh(f.path),
                       doctest::Contains("all faces carry a value or none"),
                       Error);
  f.fill("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2 1.5\n");
  CHECK_THROWS_WITH_AS(read_mesh(f.path),
                       doctest::Contains("outside [0, 1]"), Error);
  f.fill("v 0 0 0\nv 1 0 0\nf 0 1 2\n");
  CHECK_THROWS_WITH_AS(read_mesh(f.path), doctest::Contains("out of range"),
                       Error);
}

TEST_CASE("viewer export uses one-based face indices") {
  MeshData mesh;
  mesh.vertices = {Vec3d(0, 0, 0), Vec3d(1, 0, 0), Vec3d(0, 1, 0)};
  mesh.faces = {{0, 1, 2}};
  TempFile f("mesh.obj");
  write_obj(f.path, mesh);
  CHECK(f.slurp().find("f 1 2 3") != std::string::npos);
}

TEST_CASE("support meshes keep faces above the threshold") {
  const TriangleDictionary dict =
      generate_dictionary({1, Vec3i(1, 1, 0), std::sqrt(2.0)});
  Eigen::VectorXd values = Eigen::VectorXd::Zero(dict.num_triangles());
  values[0] = 1.0;
  values[2] = 0.5;
  values[4] = 1e-12;  // below threshold
  const MeshData mesh = support_mesh(dict, values, 1e-9);
  REQUIRE(mesh.faces.size() == 2);
  REQUIRE(mesh.values.size() == 2);
  CHECK(mesh.values[0] == 1.0);
  CHECK(mesh.values[1] == 0.5);
  CHECK(mesh.vertices.size() <= 4);
  CHECK_THROWS_AS(support_mesh(dict, Eigen::VectorXd::Zero(3), 1e-9), Error);
}

TEST_CASE("triplet matrices round-trip with a consistent header") {
  const TriangleDictionary dict =
      generate_dictionary({1, Vec3i(1, 1, 0), std::sqrt(2.0)});
  const ConstraintSystem sys =
      build_pair_system(dict, {}, admissible_quadrangles(dict));
  const TripletMatrix m = to_triplets(sys);
  TempFile f("triplets.txt");
  write_triplets(f.path, m);
  const TripletMatrix back = read_triplets(f.path);
  CHECK(back.nrows == m.nrows);
  CHECK(back.ncols == m.ncols);
  REQUIRE(back.entries.size() == m.entries.size());
  CHECK(back.entries == m.entries);

  // The dense reconstructions agree entry by entry.
  Eigen::MatrixXi dense = Eigen::MatrixXi::Zero(back.nrows, back.ncols);
  for (const auto& [r, c, v] : back.entries) dense(r, c) = v;
  CHECK(dense == to_dense(sys));

  std::string text = f.slurp();
  f.fill(text + "0 0 1\n");  // one more entry than the header promises
  CHECK_THROWS_WITH_AS(read_triplets(f.path),
                       doctest::Contains("does not match"), Error);
  f.fill("2 2 1\n5 0 1\n");
  CHECK_THROWS_WITH_AS(read_triplets(f.path),
                       doctest::Contains("out of range"), Error);
  f.fill("");
  CHECK_THROWS_WITH_AS(read_triplets(f.path),
                       doctest::Contains("missing header"), Error);
}

TEST_CASE("LP files round-trip dimensions, coefficients, and flags") {
  const TriangleDictionary dict =
      generate_dictionary({1, Vec3i(1, 1, 0), std::sqrt(2.0)});
  const ConstraintSystem sys =
      build_pair_system(dict, {}, admissible_quadrangles(dict));
  Eigen::VectorXd obj(sys.ncols);
  for (Index j = 0; j < sys.ncols; ++j) obj[j] = 0.125 * j - 1.0 / 3.0;
  LinearProgram lp = make_lp(sys, obj, /*objective_offset=*/2.75);

  TempFile f("prog.lp");
  for (bool binary : {false, true}) {
    write_lp_file(f.path, lp, variable_names(sys), binary);
    const LpFile back = read_lp_file(f.path);
    CHECK(back.binary == binary);
    CHECK(back.lp.nrows == lp.nrows);
    CHECK(back.lp.ncols == lp.ncols);
    CHECK(back.lp.objective_offset == lp.objective_offset);
    CHECK(back.lp.objective == lp.objective);
    CHECK(back.lp.rhs == lp.rhs);
    CHECK(back.lp.lower == lp.lower);
    CHECK(back.lp.upper == lp.upper);
    CHECK(back.names == variable_names(sys));
    for (Index j = 0; j < lp.ncols; ++j) {
      auto a = lp.cols[j], b = back.lp.cols[j];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
    }
  }

  // An LP with an all-zero row still round-trips.
  LinearProgram zrow = lp;
  ++zrow.nrows;
  zrow.rhs.conservativeResize(zrow.nrows);
  zrow.rhs[zrow.nrows - 1] = 0.0;
  write_lp_file(f.path, zrow, variable_names(sys), false);
  CHECK(read_lp_file(f.path).lp.nrows == zrow.nrows);

  CHECK_THROWS_AS(write_lp_file(f.path, lp, {"x"}, false), Error);
  TempFile g("broken.lp");
  g.fill("Maximize\n obj: 1 x\nEnd\n");
  CHECK_THROWS_WITH_AS(read_lp_file(g.path),
                       doctest::Contains("expected 'Minimize'"), Error);
  g.fill("Minimize\n obj: 1 x\nSubject To\n c0: 1 y = 0\nEnd\n");
  CHECK_THROWS_WITH_AS(read_lp_file(g.path),
                       doctest::Contains("unknown variable 'y'"), Error);
}

TEST_CASE("variable names distinguish triangles from quadrangles") {
  const TriangleDictionary dict =
      generate_dictionary({1, Vec3i(1, 1, 0), std::sqrt(2.0)});
  const ConstraintSystem sys =
      build_pair_system(dict, {}, admissible_quadrangles(dict));
  const auto names = variable_names(sys);
  REQUIRE(static_cast<Index>(names.size()) == sys.ncols);
  for (Index c = 0; c < sys.ncols; ++c) {
    if (sys.vars[c].kind == VarDesc::Kind::Triangle) {
      CHECK(names[c] == "t" + std::to_string(sys.vars[c].tri_i));
    } else {
      CHECK(names[c][0] == 'q');
      CHECK(names[c].find('_') != std::string::npos);
    }
  }
}

TEST_CASE("reports are emitted as key/value lines") {
  SolveReport rep;
  rep.status = SolveStatus::Optimal;
  rep.objective = 1.5;
  rep.lp_bound = 1.25;
  rep.duality_gap = 0.0;
  rep.iterations = 12;
  rep.nodes = 3;
  rep.fractional = {4, 7};
  std::ostringstream os;
  write_report(os, rep);
  const std::string text = os.str();
  CHECK(text.find("status: optimal") != std::string::npos);
  CHECK(text.find("objective: 1.5") != std::string::npos);
  CHECK(text.find("fractional_count: 2") != std::string::npos);
  CHECK(text.find("fractional: 4 7") != std::string::npos);

  SolveReport bad;
  bad.status = SolveStatus::Infeasible;
  bad.farkas = Eigen::VectorXd::Ones(2);
  os.str("");
  write_report(os, bad);
  CHECK(os.str().find("status: infeasible") != std::string::npos);
  CHECK(os.str().find("farkas: 1 1") != std::string::npos);
}
