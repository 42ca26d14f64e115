#pragma once

#include "wlp/geometry.hpp"

namespace wlp {

// Quadratic form of the curvature energy over triangle indicators:
//   E(x) = sum_i q_diag[i] x_i + 2 sum_{i<j} q_off[{i,j}] x_i x_j.
// Off-diagonal entries exist exactly for admissible adjacent pairs; the two
// halves of a hinge term are split evenly, so q_off[{i,j}] is half the full
// hinge contribution (A_e/3) phi.
struct QuadraticEnergy {
  Eigen::VectorXd q_diag;
  std::unordered_map<std::uint64_t, double> q_off;  // packed (i << 32) | j, i < j
  std::vector<AdjacentPair> pairs;                  // the admissible pairs

  static std::uint64_t key(Index i, Index j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint32_t>(j);
  }
  double off(Index i, Index j) const {
    auto it = q_off.find(key(i, j));
    return it == q_off.end() ? 0.0 : it->second;
  }
};

QuadraticEnergy build_q(const TriangleDictionary& dict,
                        const IntegrandSpec& integrand);

// Evaluate E(x) for a 0/1 indicator vector.
double quadratic_energy(const Eigen::VectorXi& x, const QuadraticEnergy& q);

}  // namespace wlp
