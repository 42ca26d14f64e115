#include "wlp/constraints.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wlp {

Eigen::VectorXi ConstraintSystem::residual(const Eigen::VectorXi& x) const {
  Eigen::VectorXi r = -rhs;
  for (Index c = 0; c < ncols; ++c) {
    if (x[c] == 0) continue;
    for (const auto& [row, val] : cols[c]) r[row] += val * x[c];
  }
  return r;
}

void validate_problem(const TriangleDictionary& dict,
                      const BoundaryProblem& problem) {
  std::map<Index, int> degree;  // vertex -> out minus in
  std::set<EdgeKey> chain_keys;
  std::map<EdgeKey, std::pair<Index, Index>> chain_dir;  // key -> directed a->b

  for (const auto& [eid, sign] : problem.boundary_edges) {
    if (eid < 0 || eid >= dict.num_edges())
      throw Error("boundary problem: edge id out of range");
    if (sign != 1 && sign != -1)
      throw Error("boundary problem: edge sign must be +1 or -1");
    const auto& e = dict.edges[eid].v;
    Index from = sign > 0 ? e[0] : e[1];
    Index to = sign > 0 ? e[1] : e[0];
    EdgeKey key(from, to);
    if (!chain_keys.insert(key).second)
      throw Error("boundary problem: geometric edge appears twice in chain");
    chain_dir[key] = {from, to};
    degree[from] += 1;
    degree[to] -= 1;
  }
  for (const auto& [v, d] : degree) {
    if (d != 0)
      throw Error("boundary problem: chain is not closed at vertex " +
                  std::to_string(v));
  }

  std::set<Index> fixed(problem.conormal_triangles.begin(),
                        problem.conormal_triangles.end());
  if (fixed.size() != problem.conormal_triangles.size())
    throw Error("boundary problem: duplicate conormal triangle");
  if (!chain_keys.empty() && fixed.empty())
    throw Error("boundary problem: boundary chain needs conormal triangles");
  if (chain_keys.empty() && !fixed.empty())
    throw Error("boundary problem: conormal triangles without a boundary chain");

  // Each chain edge must belong to exactly one conormal triangle, with
  // agreeing orientation; each conormal triangle must touch the chain.
  std::map<EdgeKey, Index> cover;
  for (Index t : fixed) {
    if (t < 0 || t >= dict.num_triangles())
      throw Error("boundary problem: conormal triangle id out of range");
    bool touches = false;
    const auto& v = dict.triangles[t].v;
    for (int r = 0; r < 3; ++r) {
      EdgeKey key(v[r], v[(r + 1) % 3]);
      if (!chain_keys.count(key)) continue;
      touches = true;
      if (cover.count(key))
        throw Error("boundary problem: chain edge covered by two conormal "
                    "triangles");
      cover[key] = t;
      const auto [from, to] = chain_dir.at(key);
      if (!dict.triangle_has_directed_edge(t, from, to))
        throw Error("boundary problem: conormal triangle opposes the chain "
                    "orientation");
    }
    if (!touches)
      throw Error("boundary problem: conormal triangle " + std::to_string(t) +
                  " does not touch the boundary chain");
  }
  if (cover.size() != chain_keys.size())
    throw Error("boundary problem: some chain edge has no conormal triangle");
}

ConstraintSystem build_oriented_system(const TriangleDictionary& dict,
                                       const BoundaryProblem& problem) {
  validate_problem(dict, problem);

  ConstraintSystem sys;
  sys.kind = ConstraintSystem::Kind::OrientedEdgeForm;
  sys.nrows = dict.num_edges() / 2;  // canonical (even-id) oriented edges
  sys.ncols = dict.num_triangles();
  sys.cols.resize(sys.ncols);
  sys.rhs = Eigen::VectorXi::Zero(sys.nrows);
  sys.rows.resize(sys.nrows);
  for (Index r = 0; r < sys.nrows; ++r)
    sys.rows[r].edge = EdgeKey(dict.edges[2 * r].v[0], dict.edges[2 * r].v[1]);

  for (Index t = 0; t < sys.ncols; ++t) {
    const auto& v = dict.triangles[t].v;
    for (int r = 0; r < 3; ++r) {
      Index a = v[r], b = v[(r + 1) % 3];
      Index eid = *dict.find_edge(std::min(a, b), std::max(a, b));
      sys.cols[t].push_back({eid / 2, a < b ? 1 : -1});
    }
    std::sort(sys.cols[t].begin(), sys.cols[t].end());
    sys.vars.push_back({VarDesc::Kind::Triangle, t, -1, {}});
  }

  for (const auto& [eid, sign] : problem.boundary_edges) {
    const auto& e = dict.edges[eid].v;
    // +1 if the traversal agrees with the canonical orientation.
    int dir = e[0] < e[1] ? 1 : -1;
    Index canonical = eid / 2;
    sys.rhs[canonical] += sign * dir;
  }

  sys.fixed_ones = problem.conormal_triangles;
  std::sort(sys.fixed_ones.begin(), sys.fixed_ones.end());
  return sys;
}

ConstraintSystem build_pair_system(const TriangleDictionary& dict,
                                   const BoundaryProblem& problem,
                                   const std::vector<AdjacentPair>& quadrangles) {
  validate_problem(dict, problem);

  const Index n_tri = dict.num_triangles();
  ConstraintSystem sys;
  sys.kind = ConstraintSystem::Kind::PairForm;
  sys.nrows = 3 * n_tri;
  sys.ncols = n_tri + static_cast<Index>(quadrangles.size());
  sys.cols.resize(sys.ncols);
  sys.rhs = Eigen::VectorXi::Zero(sys.nrows);
  sys.rows.resize(sys.nrows);

  // Row of (triangle k, edge) = 3k + position of the edge in k's traversal.
  auto row_of = [&](Index k, const EdgeKey& key) -> Index {
    const auto& v = dict.triangles[k].v;
    for (int r = 0; r < 3; ++r)
      if (EdgeKey(v[r], v[(r + 1) % 3]) == key) return 3 * k + r;
    throw Error("build_pair_system: pair edge not on triangle");
  };

  for (Index k = 0; k < n_tri; ++k) {
    const auto& v = dict.triangles[k].v;
    for (int r = 0; r < 3; ++r) {
      sys.rows[3 * k + r] = {k, EdgeKey(v[r], v[(r + 1) % 3])};
      sys.cols[k].push_back({3 * k + r, 1});
    }
    sys.vars.push_back({VarDesc::Kind::Triangle, k, -1, {}});
  }
  for (std::size_t q = 0; q < quadrangles.size(); ++q) {
    const AdjacentPair& p = quadrangles[q];
    Index c = n_tri + static_cast<Index>(q);
    sys.cols[c].push_back({row_of(p.tri_i, p.edge), -1});
    sys.cols[c].push_back({row_of(p.tri_j, p.edge), -1});
    std::sort(sys.cols[c].begin(), sys.cols[c].end());
    sys.vars.push_back({VarDesc::Kind::Quadrangle, p.tri_i, p.tri_j, p.edge});
  }

  // r' = 1 on rows (k, e) with k conormal-fixed and e on the boundary chain.
  std::set<EdgeKey> chain_keys;
  for (const auto& [eid, sign] : problem.boundary_edges) {
    const auto& e = dict.edges[eid].v;
    chain_keys.insert(EdgeKey(e[0], e[1]));
  }
  for (Index k : problem.conormal_triangles) {
    const auto& v = dict.triangles[k].v;
    for (int r = 0; r < 3; ++r) {
      EdgeKey key(v[r], v[(r + 1) % 3]);
      if (chain_keys.count(key)) sys.rhs[3 * k + r] = 1;
    }
  }

  sys.fixed_ones = problem.conormal_triangles;
  std::sort(sys.fixed_ones.begin(), sys.fixed_ones.end());
  return sys;
}

ConsistencyReport check_consistency(const Eigen::VectorXi& x,
                                    const ConstraintSystem& system) {
  if (x.size() != system.ncols)
    throw Error("check_consistency: dimension mismatch");
  ConsistencyReport report;
  Eigen::VectorXi res = system.residual(x);
  for (Index r = 0; r < system.nrows; ++r)
    if (res[r] != 0) report.violated_rows.push_back(r);
  report.feasible = report.violated_rows.empty();
  for (Index c = 0; c < system.ncols; ++c) {
    const VarDesc& v = system.vars[c];
    if (v.kind != VarDesc::Kind::Quadrangle) continue;
    if (x[c] != x[v.tri_i] * x[v.tri_j]) report.pairing_mismatches.push_back(c);
  }
  return report;
}

ReducedSystem reduce_fixed(const ConstraintSystem& system) {
  std::set<Index> fixed(system.fixed_ones.begin(), system.fixed_ones.end());
  ReducedSystem out;
  out.system.kind = system.kind;
  out.system.nrows = system.nrows;
  out.system.rows = system.rows;
  out.system.rhs = system.rhs;
  for (Index c = 0; c < system.ncols; ++c) {
    if (fixed.count(c)) {
      for (const auto& [row, val] : system.cols[c]) out.system.rhs[row] -= val;
      continue;
    }
    out.system.cols.push_back(system.cols[c]);
    out.system.vars.push_back(system.vars[c]);
    out.col_map.push_back(c);
  }
  out.system.ncols = static_cast<Index>(out.system.cols.size());
  return out;
}

}  // namespace wlp
