#pragma once

#include <string>
#include <vector>

#include "wlp/lattice_dict.hpp"

namespace wlp {

// Discrete boundary datum: an oriented closed edge chain plus the triangles
// fixed to 1 that pin the conormal direction along it.
struct BoundaryProblem {
  std::vector<std::pair<Index, int>> boundary_edges;  // (oriented edge id, +-1)
  std::vector<Index> conormal_triangles;
  std::string label;
};

// Throws unless: the chain is closed (balanced in/out degree at every
// vertex), no geometric edge repeats, every conormal triangle shares an edge
// with the chain with agreeing orientation, and every chain edge is an edge
// of exactly one conormal triangle.
void validate_problem(const TriangleDictionary& dict,
                      const BoundaryProblem& problem);

struct VarDesc {
  enum class Kind { Triangle, Quadrangle };
  Kind kind = Kind::Triangle;
  Index tri_i = -1;  // triangle id; for quadrangles the smaller one
  Index tri_j = -1;  // quadrangles only
  EdgeKey edge;      // quadrangles only: the shared edge
};

struct RowDesc {
  Index triangle = -1;  // PairForm only
  EdgeKey edge;         // unoriented edge (both forms)
};

// Sparse {-1,0,1} equality system over triangle (and quadrangle) indicators.
struct ConstraintSystem {
  enum class Kind { OrientedEdgeForm, PairForm };
  Kind kind = Kind::OrientedEdgeForm;
  Index nrows = 0;
  Index ncols = 0;
  std::vector<std::vector<std::pair<Index, int>>> cols;  // (row, value)
  Eigen::VectorXi rhs;
  std::vector<Index> fixed_ones;  // columns forced to 1
  std::vector<VarDesc> vars;
  std::vector<RowDesc> rows;

  Eigen::VectorXi residual(const Eigen::VectorXi& x) const;  // A x - rhs
};

// Eq-per-edge incidence system B x = r. One row per geometric edge, in its
// canonical orientation (smaller vertex id first); +1 where the triangle
// induces that orientation, -1 where it induces the reverse.
ConstraintSystem build_oriented_system(const TriangleDictionary& dict,
                                       const BoundaryProblem& problem);

// Pair-incidence system D x^ = r'. One row per (triangle, edge-of-triangle);
// triangle columns carry three +1, quadrangle columns two -1. The right-hand
// side is 1 exactly on rows (k, e) with k fixed and e on the boundary chain.
ConstraintSystem build_pair_system(const TriangleDictionary& dict,
                                   const BoundaryProblem& problem,
                                   const std::vector<AdjacentPair>& quadrangles);

struct ConsistencyReport {
  bool feasible = false;
  std::vector<Index> violated_rows;
  // Quadrangle columns whose value differs from the product of their two
  // triangle values. Expected to be non-empty only for self-intersecting
  // solutions, where quadrangles encode a pairing rather than a product.
  std::vector<Index> pairing_mismatches;
};

ConsistencyReport check_consistency(const Eigen::VectorXi& x,
                                    const ConstraintSystem& system);

// System with the fixed columns substituted into the right-hand side.
struct ReducedSystem {
  ConstraintSystem system;           // fixed_ones empty
  std::vector<Index> col_map;        // reduced column -> original column
};

ReducedSystem reduce_fixed(const ConstraintSystem& system);

}  // namespace wlp
