#include <chrono>
#include <cmath>
#include <queue>

#include "wlp/solver.hpp"

namespace wlp {

LinearProgram make_lp(const ConstraintSystem& system,
                      const Eigen::VectorXd& objective,
                      double objective_offset) {
  if (objective.size() != system.ncols)
    throw Error("make_lp: objective size does not match the system");
  if (!system.fixed_ones.empty())
    throw Error("make_lp: reduce fixed columns first (reduce_fixed)");
  LinearProgram lp;
  lp.nrows = system.nrows;
  lp.ncols = system.ncols;
  lp.cols.resize(lp.ncols);
  for (Index c = 0; c < lp.ncols; ++c)
    for (const auto& [row, val] : system.cols[c])
      lp.cols[c].push_back({row, static_cast<double>(val)});
  lp.rhs = system.rhs.cast<double>();
  lp.objective = objective;
  lp.lower = Eigen::VectorXd::Zero(lp.ncols);
  lp.upper = Eigen::VectorXd::Ones(lp.ncols);
  lp.objective_offset = objective_offset;
  return lp;
}

Eigen::VectorXd pair_objective(const TriangleDictionary& dict,
                               const ConstraintSystem& system,
                               const IntegrandSpec& integrand) {
  if (system.kind != ConstraintSystem::Kind::PairForm)
    throw Error("pair_objective: needs a pair-form system");
  Eigen::VectorXd obj(system.ncols);
  for (Index c = 0; c < system.ncols; ++c) {
    const VarDesc& v = system.vars[c];
    if (v.kind == VarDesc::Kind::Triangle) {
      const auto tri = triangle_coords(dict, v.tri_i);
      obj[c] = integrand.phi_tilde(tri, triangle_unit_normal(tri));
    } else {
      obj[c] =
          energy_edge_term(hinge(dict, v.tri_i, v.tri_j, v.edge), integrand);
    }
  }
  return obj;
}

std::optional<Eigen::VectorXi> round_check(const LinearProgram& lp,
                                           const Eigen::VectorXd& x,
                                           double tol_int) {
  Eigen::VectorXi xi(lp.ncols);
  for (Index j = 0; j < lp.ncols; ++j) {
    const double r = std::round(x[j]);
    if (std::abs(x[j] - r) > tol_int) return std::nullopt;
    xi[j] = static_cast<int>(r);
    if (xi[j] < std::ceil(lp.lower[j] - 0.5) ||
        xi[j] > std::floor(lp.upper[j] + 0.5))
      return std::nullopt;
  }
  // Integer coefficients throughout, so the residual check is exact.
  Eigen::VectorXd res = -lp.rhs;
  for (Index j = 0; j < lp.ncols; ++j) {
    if (xi[j] == 0) continue;
    for (const auto& [row, v] : lp.cols[j]) res[row] += v * xi[j];
  }
  if (res.cwiseAbs().maxCoeff() > 1e-9) return std::nullopt;
  return xi;
}

Eigen::VectorXi expand_solution(const Eigen::VectorXi& reduced,
                                const std::vector<Index>& col_map,
                                const std::vector<Index>& fixed_ones,
                                Index total_cols) {
  if (static_cast<std::size_t>(reduced.size()) != col_map.size())
    throw Error("expand_solution: dimension mismatch");
  Eigen::VectorXi full = Eigen::VectorXi::Zero(total_cols);
  for (Index t : fixed_ones) full[t] = 1;
  for (Index i = 0; i < reduced.size(); ++i) full[col_map[i]] = reduced[i];
  return full;
}

namespace {

struct Node {
  double bound;  // parent LP value, lower bound on this subtree
  std::vector<std::pair<Index, int>> fixings;  // (column, 0 or 1)

  bool operator<(const Node& o) const { return bound > o.bound; }  // best-first
};

}  // namespace

SolveReport ilp_solve(const LinearProgram& lp, const BranchOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport best;
  best.status = SolveStatus::Infeasible;
  double incumbent = std::numeric_limits<double>::infinity();
  bool root = true;
  double root_bound = -std::numeric_limits<double>::infinity();

  std::priority_queue<Node> open;
  open.push({-std::numeric_limits<double>::infinity(), {}});

  LinearProgram node_lp = lp;
  SolveReport rep;
  rep.status = SolveStatus::Optimal;

  while (!open.empty()) {
    if (best.nodes >= opt.node_limit) {
      best.status = SolveStatus::NodeLimit;
      break;
    }
    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent - 1e-12 && !root) continue;  // pruned late
    ++best.nodes;

    node_lp.lower = lp.lower;
    node_lp.upper = lp.upper;
    for (const auto& [col, v] : node.fixings) {
      node_lp.lower[col] = v;
      node_lp.upper[col] = v;
    }
    SolveReport lpr = lp_solve(node_lp, opt.lp);
    best.iterations += lpr.iterations;
    if (root) {
      root = false;
      if (lpr.status == SolveStatus::Infeasible) {
        best.status = SolveStatus::Infeasible;
        best.farkas = lpr.farkas;
        break;
      }
      if (lpr.status != SolveStatus::Optimal) {
        best.status = lpr.status;
        break;
      }
      root_bound = lpr.objective;
    }
    if (lpr.status != SolveStatus::Optimal) continue;  // infeasible subtree
    if (lpr.objective >= incumbent - 1e-12) continue;

    // Integral?
    Index branch_col = -1;
    double worst_frac = opt.tol_int;
    for (Index j = 0; j < lp.ncols; ++j) {
      const double f = std::abs(lpr.x[j] - std::round(lpr.x[j]));
      if (f > worst_frac) {
        // Most fractional: largest distance from the nearest integer.
        worst_frac = f;
        branch_col = j;
      }
    }
    if (branch_col < 0) {
      auto xi = round_check(node_lp, lpr.x, opt.tol_int);
      if (!xi) continue;  // numerically integral but inconsistent; drop
      if (lpr.objective < incumbent) {
        incumbent = lpr.objective;
        best.status = SolveStatus::Optimal;
        best.x = xi->cast<double>();
        best.x_int = *xi;
        best.objective = lpr.objective;
      }
      continue;
    }
    for (int v : {0, 1}) {
      Node child = node;
      child.bound = lpr.objective;
      child.fixings.push_back({branch_col, v});
      open.push(std::move(child));
    }
  }

  best.lp_bound = root_bound;
  double open_bound = incumbent;
  if (!open.empty()) open_bound = std::min(open_bound, open.top().bound);
  best.duality_gap =
      incumbent < std::numeric_limits<double>::infinity() &&
              open_bound > -std::numeric_limits<double>::infinity()
          ? incumbent - open_bound
          : 0.0;
  best.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return best;
}

}  // namespace wlp
