#pragma once

#include "wlp/constraints.hpp"
#include "wlp/geometry.hpp"

namespace wlp {

// min c^T x  s.t.  A x = b,  lower <= x <= upper.  Columns are sparse with
// integer {-1,+1} entries stored as doubles; bounds are finite.
struct LinearProgram {
  Index nrows = 0;
  Index ncols = 0;
  std::vector<std::vector<std::pair<Index, double>>> cols;  // (row, value)
  Eigen::VectorXd rhs;
  Eigen::VectorXd objective;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  double objective_offset = 0.0;
};

// LP over a constraint system with unit box bounds. `objective` must have
// one entry per system column.
LinearProgram make_lp(const ConstraintSystem& system,
                      const Eigen::VectorXd& objective,
                      double objective_offset = 0.0);

// Objective for the pair form: triangle variables carry the per-triangle
// term, quadrangle variables the full hinge term of their shared edge.
Eigen::VectorXd pair_objective(const TriangleDictionary& dict,
                               const ConstraintSystem& system,
                               const IntegrandSpec& integrand);

enum class SolveStatus {
  Optimal,
  Infeasible,
  Unbounded,
  IterationLimit,
  NodeLimit,
};

const char* to_string(SolveStatus s);

struct SimplexOptions {
  int max_iterations = 200000;
  double tol_feas = 1e-8;   // primal feasibility / phase-1 acceptance
  double tol_cost = 1e-9;   // reduced-cost optimality
  double tol_pivot = 1e-9;  // smallest usable pivot magnitude
  int refactor_every = 64;  // rebuild the basis inverse this often
};

struct BranchOptions {
  SimplexOptions lp;
  double tol_int = 1e-7;  // integrality tolerance
  long node_limit = 200000;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Infeasible;
  Eigen::VectorXd x;             // primal solution (problem columns)
  Eigen::VectorXi x_int;         // rounded solution (ILP, when integral)
  double objective = 0.0;        // includes objective_offset
  int iterations = 0;            // simplex pivots (total over all nodes)
  long nodes = 0;                // branch-and-bound nodes processed
  double wall_time = 0.0;        // seconds
  double lp_bound = 0.0;         // root relaxation value
  double duality_gap = 0.0;      // incumbent minus best open bound
  std::vector<Index> fractional; // columns away from both bounds by > tol_int
  Eigen::VectorXd farkas;        // row certificate when infeasible
};

SolveReport lp_solve(const LinearProgram& lp, const SimplexOptions& opt = {});
SolveReport ilp_solve(const LinearProgram& lp, const BranchOptions& opt = {});

// y proves infeasibility when y^T b exceeds max_{l<=x<=u} y^T A x.
// Returns that margin (positive = valid certificate).
double farkas_margin(const LinearProgram& lp, const Eigen::VectorXd& y);

// Round x to integers and check it satisfies A x = b and the bounds exactly.
std::optional<Eigen::VectorXi> round_check(const LinearProgram& lp,
                                           const Eigen::VectorXd& x,
                                           double tol_int);

// Re-insert fixed columns: result has `total_cols` entries, 1 on fixed_ones,
// reduced[i] at col_map[i].
Eigen::VectorXi expand_solution(const Eigen::VectorXi& reduced,
                                const std::vector<Index>& col_map,
                                const std::vector<Index>& fixed_ones,
                                Index total_cols);

}  // namespace wlp
