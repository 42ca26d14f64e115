#pragma once

#include <iosfwd>
#include <string>

#include "wlp/constraints.hpp"
#include "wlp/solver.hpp"

namespace wlp {

// A problem instance as stored on disk: lattice, boundary datum in lattice
// coordinates, integrand selection, and solver options. Line-oriented text
// with [section] headers; unknown keys are rejected with file:line errors.
struct Instance {
  enum class Phi { Willmore, Area, CustomTable };

  LatticeSpec lattice;
  Phi phi = Phi::Willmore;
  std::string label;
  std::vector<std::pair<Vec3i, Vec3i>> boundary_edges;  // directed a -> b
  std::vector<std::array<Vec3i, 3>> fixed_triangles;    // oriented triples
  // custom-table objective terms, by lattice coordinates
  std::vector<std::pair<std::array<Vec3i, 3>, double>> triangle_terms;
  std::vector<std::tuple<std::array<Vec3i, 3>, std::array<Vec3i, 3>, double>>
      pair_terms;
  double tol_int = 1e-7;
  long node_limit = 200000;
  unsigned seed = 1;
};

Instance read_instance(const std::string& path);
void write_instance(const std::string& path, const Instance& inst);

// Resolve the coordinate-level boundary datum against a dictionary.
BoundaryProblem resolve_boundary(const Instance& inst,
                                 const TriangleDictionary& dict);

// Objective vector for a pair-form system from the instance's custom table;
// unmatched terms are an error, unlisted variables get weight 0.
Eigen::VectorXd custom_objective(const Instance& inst,
                                 const TriangleDictionary& dict,
                                 const ConstraintSystem& pair_system);

// Dictionary dump: `S n bx by bz max_edge`, then `V id i j k`,
// `T id v1 v2 v3`, `E id a b` records.
void write_dictionary(const std::string& path, const TriangleDictionary& dict);
TriangleDictionary read_dictionary(const std::string& path);

// Indexed triangle mesh with an optional per-face value channel (used to
// carry fractional variable values).
struct MeshData {
  std::vector<Vec3d> vertices;
  std::vector<std::array<Index, 3>> faces;
  std::vector<double> values;  // empty, or one value per face in [0, 1]
};

void write_mesh(const std::string& path, const MeshData& mesh);
MeshData read_mesh(const std::string& path);
void write_obj(const std::string& path, const MeshData& mesh);  // viewer export

// Mesh of all dictionary triangles with value > tol, values carried through.
MeshData support_mesh(const TriangleDictionary& dict,
                      const Eigen::VectorXd& triangle_values, double tol);

// Sparse matrix as `rows cols nnz` header plus `row col value` lines.
struct TripletMatrix {
  Index nrows = 0;
  Index ncols = 0;
  std::vector<std::tuple<Index, Index, int>> entries;
};

TripletMatrix to_triplets(const ConstraintSystem& system);
void write_triplets(const std::string& path, const TripletMatrix& m);
TripletMatrix read_triplets(const std::string& path);

// LP interchange text (CPLEX LP subset: Minimize / Subject To / Bounds /
// Binary / End). The parser accepts exactly what the writer emits and
// round-trips dimensions, nonzeros, and coefficients bit-exactly.
void write_lp_file(const std::string& path, const LinearProgram& lp,
                   const std::vector<std::string>& names, bool binary);

struct LpFile {
  LinearProgram lp;
  std::vector<std::string> names;
  bool binary = false;
};

LpFile read_lp_file(const std::string& path);

// Canonical variable names: t<i> for triangles, q<i>_<j> for quadrangles.
std::vector<std::string> variable_names(const ConstraintSystem& system);

// SolveReport as key: value lines.
void write_report(std::ostream& os, const SolveReport& report);

}  // namespace wlp
