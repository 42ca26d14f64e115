#pragma once

#include <optional>
#include <string>

#include "wlp/constraints.hpp"

namespace wlp {

// Row/column subset selecting a square submatrix. When the submatrix is
// Eulerian (all row and column sums even) and its entry sum is not divisible
// by four, the host matrix is not totally unimodular (Camion's criterion).
struct EulerianCertificate {
  std::vector<Index> rows;
  std::vector<Index> cols;
};

struct CertificateCheck {
  bool square = false;
  bool eulerian = false;
  long sum = 0;
  bool divisible_by_four = true;

  // True when the certificate proves the matrix non-TU.
  bool refutes_tu() const { return square && eulerian && !divisible_by_four; }
};

Eigen::MatrixXi to_dense(const ConstraintSystem& system);

CertificateCheck verify_certificate(const Eigen::MatrixXi& m,
                                    const EulerianCertificate& cert);
CertificateCheck verify_certificate(const ConstraintSystem& system,
                                    const EulerianCertificate& cert);

// Search for a violating Eulerian submatrix of order <= max_size.
// Exhaustive when the subset count fits the budget, otherwise randomized
// minor probing followed by shrinking to a minimal violation (which is
// always Eulerian with sum = 2 mod 4). Absence of a result is NOT a proof
// of total unimodularity.
std::optional<EulerianCertificate> search_eulerian_violation(
    const Eigen::MatrixXi& m, int max_size, long budget, unsigned seed = 1);

// Same, for a pair-form system: tries the explicit fan construction first,
// then falls back to the generic matrix search.
std::optional<EulerianCertificate> search_eulerian_violation(
    const TriangleDictionary& dict, const ConstraintSystem& pair_system,
    int max_size, long budget, unsigned seed = 1);

struct MinorScanResult {
  long max_abs_det = 0;
  int witness_order = 0;              // order of the largest |det| found
  EulerianCertificate witness;        // submatrix achieving max_abs_det
  bool tu_up_to_order = true;         // all scanned minors in {-1,0,1}
  bool budget_exhausted = false;
};

// Exact determinants (fraction-free elimination, 64-bit) of all square
// submatrices up to max_order, stopping after `budget` determinants.
MinorScanResult minor_determinant_scan(const Eigen::MatrixXi& m, int max_order,
                                       long budget = 20'000'000);

// The 27x27 incidence submatrix of the three-edge fan configuration: one
// central triangle per edge pair of a tripod, fans of neighbors around each
// edge, padded with zero rows to be square. Row sums -2/-4, column sums
// +2/-2, total -42.
struct FanTable {
  Eigen::MatrixXi matrix;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
};

FanTable fan_counterexample_table();
Eigen::MatrixXi fan_counterexample_matrix();

// Certificate selecting all rows and columns of a matrix.
EulerianCertificate full_certificate(const Eigen::MatrixXi& m);

// Locate the fan configuration inside a real pair-form system: a tripod of
// three edges at a common vertex, the three central triangles spanning the
// edge pairs, and fans chosen by backtracking so all required pair columns
// exist. Returns row/column indices into `pair_system`.
std::optional<EulerianCertificate> find_fan_certificate(
    const TriangleDictionary& dict, const ConstraintSystem& pair_system);

}  // namespace wlp
