// Command-line front end: dictionary generation, constraint assembly, LP/ILP
// solving, TU diagnostics, and energy evaluation.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>

#include "wlp/io.hpp"
#include "wlp/qp_oracle.hpp"
#include "wlp/tu_check.hpp"

namespace {

using namespace wlp;

struct BuiltProblem {
  TriangleDictionary dict;
  ConstraintSystem pair_system;  // full, with fixed_ones
  ReducedSystem reduced;
  LinearProgram lp;
};

IntegrandSpec integrand_for(Instance::Phi phi) {
  switch (phi) {
    case Instance::Phi::Willmore: return IntegrandSpec::willmore();
    case Instance::Phi::Area: return IntegrandSpec::area();
    default: throw Error("custom-table has no closed-form integrand");
  }
}

BuiltProblem build_problem(const Instance& inst) {
  BuiltProblem b;
  b.dict = generate_dictionary(inst.lattice);
  const BoundaryProblem problem = resolve_boundary(inst, b.dict);
  const auto quads = admissible_quadrangles(b.dict);
  b.pair_system = build_pair_system(b.dict, problem, quads);
  Eigen::VectorXd obj =
      inst.phi == Instance::Phi::CustomTable
          ? custom_objective(inst, b.dict, b.pair_system)
          : pair_objective(b.dict, b.pair_system, integrand_for(inst.phi));
  b.reduced = reduce_fixed(b.pair_system);
  Eigen::VectorXd red_obj(b.reduced.system.ncols);
  double offset = 0.0;
  {
    std::vector<bool> kept(b.pair_system.ncols, false);
    for (Index i = 0; i < b.reduced.system.ncols; ++i) {
      red_obj[i] = obj[b.reduced.col_map[i]];
      kept[b.reduced.col_map[i]] = true;
    }
    for (Index c = 0; c < b.pair_system.ncols; ++c)
      if (!kept[c]) offset += obj[c];  // fixed columns contribute at value 1
  }
  b.lp = make_lp(b.reduced.system, red_obj, offset);
  return b;
}

Eigen::VectorXd triangle_values(const BuiltProblem& b,
                                const Eigen::VectorXd& reduced_x) {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(b.pair_system.ncols);
  for (Index t : b.pair_system.fixed_ones) full[t] = 1.0;
  for (Index i = 0; i < reduced_x.size(); ++i)
    full[b.reduced.col_map[i]] = reduced_x[i];
  Eigen::VectorXd tri = Eigen::VectorXd::Zero(b.dict.num_triangles());
  for (Index c = 0; c < b.pair_system.ncols; ++c)
    if (b.pair_system.vars[c].kind == VarDesc::Kind::Triangle)
      tri[b.pair_system.vars[c].tri_i] = full[c];
  return tri;
}

void emit_solution(const BuiltProblem& b, const SolveReport& rep,
                   const std::string& export_lp_path, bool binary,
                   const std::string& mesh_out) {
  if (!export_lp_path.empty()) {
    std::vector<std::string> names;
    auto all = variable_names(b.pair_system);
    for (Index c : b.reduced.col_map) names.push_back(all[c]);
    write_lp_file(export_lp_path, b.lp, names, binary);
  }
  write_report(std::cout, rep);
  if (!mesh_out.empty() && rep.status == SolveStatus::Optimal)
    write_mesh(mesh_out, support_mesh(b.dict, triangle_values(b, rep.x), 1e-9));
}

int run(int argc, char** argv) {
  CLI::App app{"Curvature-energy surface optimization over lattice triangle "
               "dictionaries"};
  app.require_subcommand(1);

  // gen-dict
  auto* gen = app.add_subcommand("gen-dict", "generate a triangle dictionary");
  int resolution = 1;
  std::vector<int> box{1, 1, 1};
  double max_edge = std::sqrt(2.0);
  std::string out_path;
  gen->add_option("--resolution", resolution, "lattice resolution n (eps=1/n)");
  gen->add_option("--box", box, "lattice extents bx by bz")->expected(3);
  gen->add_option("--max-edge", max_edge, "max edge length (lattice units)");
  gen->add_option("--out", out_path, "dictionary dump path")->required();

  // shared solve flags
  std::string instance_path, export_lp_path, mesh_out;
  std::string phi_override;
  double tol_int = -1;
  long node_limit = -1;
  unsigned seed = 0;
  auto add_common = [&](CLI::App* cmd, bool needs_instance = true) {
    if (needs_instance)
      cmd->add_option("instance", instance_path, "instance file")->required();
    cmd->add_option("--phi", phi_override, "willmore | area | custom-table");
    cmd->add_option("--tol-int", tol_int, "integrality tolerance");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_option("--node-limit", node_limit, "branch-and-bound node limit");
    cmd->add_option("--export-lp", export_lp_path, "write an LP file");
    cmd->add_option("--mesh-out", mesh_out, "write the solution support mesh");
  };

  auto* build = app.add_subcommand("build", "assemble the constraint system");
  add_common(build);
  std::string triplets_out;
  build->add_option("--out", triplets_out, "triplet matrix output path");

  auto* solve_lp = app.add_subcommand("solve-lp", "solve the LP relaxation");
  add_common(solve_lp);
  auto* solve_ilp = app.add_subcommand("solve-ilp", "solve the integer program");
  add_common(solve_ilp);

  auto* check_tu = app.add_subcommand("check-tu",
                                      "search for a Camion violation");
  add_common(check_tu);
  int tu_max_size = 8;
  long tu_budget = 2'000'000;
  check_tu->add_option("--max-size", tu_max_size, "max submatrix order");
  check_tu->add_option("--budget", tu_budget, "search budget");

  auto* energy = app.add_subcommand("energy", "evaluate the energy of a mesh");
  std::string mesh_path, energy_phi = "willmore";
  energy->add_option("mesh", mesh_path, "mesh file")->required();
  energy->add_option("--phi", energy_phi, "willmore | area");

  auto* export_lp = app.add_subcommand("export-lp", "write the LP file only");
  add_common(export_lp);
  bool export_binary = false;
  export_lp->add_flag("--binary", export_binary, "mark variables binary");

  auto* table1 = app.add_subcommand(
      "repro-table1", "verify the fan counterexample certificate");

  CLI11_PARSE(app, argc, argv);

  auto load = [&]() {
    Instance inst = read_instance(instance_path);
    if (!phi_override.empty()) {
      if (phi_override == "willmore") inst.phi = Instance::Phi::Willmore;
      else if (phi_override == "area") inst.phi = Instance::Phi::Area;
      else if (phi_override == "custom-table")
        inst.phi = Instance::Phi::CustomTable;
      else throw Error("unknown --phi value: " + phi_override);
    }
    if (tol_int > 0) inst.tol_int = tol_int;
    if (node_limit > 0) inst.node_limit = node_limit;
    if (seed > 0) inst.seed = seed;
    return inst;
  };

  if (gen->parsed()) {
    LatticeSpec spec{resolution, Vec3i(box[0], box[1], box[2]), max_edge};
    TriangleDictionary dict = generate_dictionary(spec);
    write_dictionary(out_path, dict);
    std::cout << "triangles: " << dict.num_triangles() << "\n"
              << "edges: " << dict.num_edges() << "\n";
  } else if (build->parsed()) {
    BuiltProblem b = build_problem(load());
    std::cout << "rows: " << b.reduced.system.nrows << "\n"
              << "cols: " << b.reduced.system.ncols << "\n"
              << "fixed: " << b.pair_system.fixed_ones.size() << "\n";
    if (!triplets_out.empty())
      write_triplets(triplets_out, to_triplets(b.reduced.system));
    if (!export_lp_path.empty()) {
      std::vector<std::string> names;
      auto all = variable_names(b.pair_system);
      for (Index c : b.reduced.col_map) names.push_back(all[c]);
      write_lp_file(export_lp_path, b.lp, names, false);
    }
  } else if (solve_lp->parsed()) {
    BuiltProblem b = build_problem(load());
    SolveReport rep = lp_solve(b.lp);
    emit_solution(b, rep, export_lp_path, false, mesh_out);
    return rep.status == SolveStatus::Optimal ? 0 : 2;
  } else if (solve_ilp->parsed()) {
    Instance inst = load();
    BuiltProblem b = build_problem(inst);
    BranchOptions opt;
    opt.tol_int = inst.tol_int;
    opt.node_limit = inst.node_limit;
    SolveReport rep = ilp_solve(b.lp, opt);
    emit_solution(b, rep, export_lp_path, true, mesh_out);
    return rep.status == SolveStatus::Optimal ? 0 : 2;
  } else if (check_tu->parsed()) {
    Instance inst = load();
    BuiltProblem b = build_problem(inst);
    auto cert = search_eulerian_violation(b.dict, b.pair_system, tu_max_size,
                                          tu_budget, inst.seed);
    if (!cert) {
      std::cout << "verdict: no violation found (not a TU proof)\n";
      return 3;
    }
    auto check = verify_certificate(b.pair_system, *cert);
    std::cout << "order: " << cert->rows.size() << "\n"
              << "eulerian: " << (check.eulerian ? "true" : "false") << "\n"
              << "sum: " << check.sum << "\n"
              << "divisible_by_four: "
              << (check.divisible_by_four ? "true" : "false") << "\n"
              << "verdict: NOT totally unimodular\n";
  } else if (energy->parsed()) {
    MeshData mesh = read_mesh(mesh_path);
    IntegrandSpec integrand = energy_phi == "area" ? IntegrandSpec::area()
                                                   : IntegrandSpec::willmore();
    if (energy_phi != "area" && energy_phi != "willmore")
      throw Error("unknown --phi value: " + energy_phi);
    std::cout << "energy: " << mesh_energy(mesh.vertices, mesh.faces, integrand)
              << "\n";
  } else if (export_lp->parsed()) {
    BuiltProblem b = build_problem(load());
    if (export_lp_path.empty())
      throw Error("export-lp needs --export-lp <path>");
    std::vector<std::string> names;
    auto all = variable_names(b.pair_system);
    for (Index c : b.reduced.col_map) names.push_back(all[c]);
    write_lp_file(export_lp_path, b.lp, names, export_binary);
  } else if (table1->parsed()) {
    const Eigen::MatrixXi m = fan_counterexample_matrix();
    const auto check = verify_certificate(m, full_certificate(m));
    std::cout << "rows: " << m.rows() << "\n"
              << "cols: " << m.cols() << "\n"
              << "eulerian: " << (check.eulerian ? "true" : "false") << "\n"
              << "sum: " << check.sum << "\n"
              << "divisible_by_four: "
              << (check.divisible_by_four ? "true" : "false") << "\n"
              << "verdict: "
              << (check.refutes_tu() ? "NOT totally unimodular"
                                     : "inconclusive")
              << "\n";
    return check.refutes_tu() ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
