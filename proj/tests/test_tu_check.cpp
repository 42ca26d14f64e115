#include <doctest.h>

#include <cmath>
#include <set>

#include "wlp/geometry.hpp"
#include "wlp/tu_check.hpp"

using namespace wlp;

namespace {

// 4x4 Eulerian block with entry sum 10 = 2 (mod 4).
Eigen::MatrixXi violating_block() {
  Eigen::MatrixXi b(4, 4);
  b << 1, 1, 0, 0,
       1, 1, 1, 1,
       0, 1, 1, 0,
       0, 1, 0, 1;
  return b;
}

}  // namespace

TEST_CASE("fan incidence table has the printed row and column sums") {
  const FanTable table = fan_counterexample_table();
  REQUIRE(table.matrix.rows() == 27);
  REQUIRE(table.matrix.cols() == 27);
  REQUIRE(table.row_labels.size() == 27);
  REQUIRE(table.col_labels.size() == 27);
  CHECK(table.col_labels[0] == "T1");
  CHECK(table.col_labels[3] == "T1,2");
  CHECK(table.row_labels[0] == "(T1,e1)");

  int zero_rows = 0;
  for (int r = 0; r < 27; ++r) {
    const int s = table.matrix.row(r).sum();
    if (table.matrix.row(r).isZero()) {
      ++zero_rows;
      continue;
    }
    if (table.row_labels[r] == "(T2,e1)")
      CHECK(s == -4);  // T2 sits in three pair columns of its fan
    else
      CHECK(s == -2);
  }
  CHECK(zero_rows == 7);

  for (int c = 0; c < 27; ++c)
    CHECK(table.matrix.col(c).sum() == (c < 3 ? 2 : -2));
  CHECK(table.matrix.sum() == -42);

  // Entry ranges: centrals are incidence (+1), pairs are couplings (-1).
  CHECK(table.matrix.leftCols(3).minCoeff() == 0);
  CHECK(table.matrix.leftCols(3).maxCoeff() == 1);
  CHECK(table.matrix.rightCols(24).maxCoeff() == 0);
  CHECK(table.matrix.rightCols(24).minCoeff() == -1);
  for (int c = 3; c < 27; ++c) CHECK(table.matrix.col(c).cwiseAbs().sum() == 2);
}

TEST_CASE("the full fan table is an Eulerian violation") {
  const Eigen::MatrixXi m = fan_counterexample_matrix();
  const CertificateCheck check = verify_certificate(m, full_certificate(m));
  CHECK(check.square);
  CHECK(check.eulerian);
  CHECK(check.sum == -42);
  CHECK_FALSE(check.divisible_by_four);
  CHECK(check.refutes_tu());
}

TEST_CASE("certificate verification applies Camion's criterion") {
  const Eigen::MatrixXi id = Eigen::MatrixXi::Identity(2, 2);
  CHECK_FALSE(verify_certificate(id, full_certificate(id)).eulerian);
  CHECK_FALSE(verify_certificate(id, full_certificate(id)).refutes_tu());

  // The zero matrix is Eulerian but proves nothing.
  const Eigen::MatrixXi z = Eigen::MatrixXi::Zero(3, 3);
  const auto zc = verify_certificate(z, full_certificate(z));
  CHECK(zc.eulerian);
  CHECK(zc.divisible_by_four);
  CHECK_FALSE(zc.refutes_tu());

  // Determinant 2: Eulerian, sum 2, refutes.
  Eigen::MatrixXi d(2, 2);
  d << 1, 1, -1, 1;
  const auto dc = verify_certificate(d, full_certificate(d));
  CHECK(dc.eulerian);
  CHECK(dc.sum == 2);
  CHECK(dc.refutes_tu());

  // Non-square and out-of-range certificates.
  CHECK_FALSE(verify_certificate(d, {{0, 1}, {0}}).square);
  CHECK_FALSE(verify_certificate(d, {{}, {}}).square);
  CHECK_THROWS_AS(verify_certificate(d, {{0, 5}, {0, 1}}), Error);
}

TEST_CASE("minor scan computes exact determinants") {
  const Eigen::MatrixXi id = Eigen::MatrixXi::Identity(4, 4);
  const MinorScanResult r = minor_determinant_scan(id, 4);
  CHECK(r.max_abs_det == 1);
  CHECK(r.tu_up_to_order);
  CHECK_FALSE(r.budget_exhausted);

  Eigen::MatrixXi d(2, 2);
  d << 1, 1, -1, 1;
  const MinorScanResult rd = minor_determinant_scan(d, 2);
  CHECK(rd.max_abs_det == 2);
  CHECK(rd.witness_order == 2);
  CHECK_FALSE(rd.tu_up_to_order);

  // The violating block has a minor of determinant magnitude 2.
  const MinorScanResult rb = minor_determinant_scan(violating_block(), 4);
  CHECK(rb.max_abs_det >= 2);
  CHECK_FALSE(rb.tu_up_to_order);

  MinorScanResult tiny = minor_determinant_scan(id, 4, /*budget=*/3);
  CHECK(tiny.budget_exhausted);
}

TEST_CASE("exhaustive search finds a planted violation") {
  Eigen::MatrixXi m = Eigen::MatrixXi::Identity(8, 8);
  m.block(3, 3, 4, 4) = violating_block();
  const auto cert = search_eulerian_violation(m, 4, 1'000'000);
  REQUIRE(cert.has_value());
  CHECK(verify_certificate(m, *cert).refutes_tu());
}

TEST_CASE("exhaustive search stays silent on unimodular incidence systems") {
  // The oriented-edge system of a tiny dictionary is a network matrix.
  const TriangleDictionary dict = generate_dictionary(
      {1, Vec3i(1, 1, 0), std::sqrt(2.0)});
  const TriangleDictionary two = restrict_dictionary(dict, std::vector<Index>{0});
  const Eigen::MatrixXi b = to_dense(build_oriented_system(two, {}));
  CHECK_FALSE(search_eulerian_violation(b, 6, 1'000'000).has_value());
  const MinorScanResult scan = minor_determinant_scan(b, 6);
  CHECK(scan.max_abs_det <= 1);
  CHECK(scan.tu_up_to_order);
}

TEST_CASE("randomized probing shrinks a large instance to a violation") {
  Eigen::MatrixXi m = Eigen::MatrixXi::Identity(14, 14);
  m.block(5, 5, 4, 4) = violating_block();
  // Subset counts up to order 6 far exceed this budget, forcing the
  // randomized path.
  const auto cert = search_eulerian_violation(m, 6, 5000, /*seed=*/3);
  REQUIRE(cert.has_value());
  CHECK(verify_certificate(m, *cert).refutes_tu());

  // An interval matrix (consecutive ones) never yields a certificate.
  Eigen::MatrixXi iv = Eigen::MatrixXi::Zero(14, 14);
  for (int c = 0; c < 14; ++c)
    for (int r = c; r < std::min(14, c + 4); ++r) iv(r, c) = 1;
  CHECK_FALSE(search_eulerian_violation(iv, 6, 3000, /*seed=*/3).has_value());
}

TEST_CASE("the fan configuration exists in a real pair system") {
  // A (2,2,2) box at unit resolution contains an interior vertex whose edge
  // tripod carries fans large enough for the full configuration.
  const TriangleDictionary dict =
      generate_dictionary({1, Vec3i(2, 2, 2), std::sqrt(2.0)});
  const ConstraintSystem sys =
      build_pair_system(dict, {}, admissible_quadrangles(dict));

  const auto cert = find_fan_certificate(dict, sys);
  REQUIRE(cert.has_value());
  REQUIRE(cert->rows.size() == 27);
  REQUIRE(cert->cols.size() == 27);
  const CertificateCheck check = verify_certificate(sys, *cert);
  CHECK(check.eulerian);
  CHECK_FALSE(check.divisible_by_four);
  CHECK(check.refutes_tu());

  // The combined entry point returns a refuting certificate as well.
  const auto combined = search_eulerian_violation(dict, sys, 6, 1000);
  REQUIRE(combined.has_value());
  CHECK(verify_certificate(sys, *combined).refutes_tu());

  CHECK_THROWS_AS(find_fan_certificate(dict, build_oriented_system(dict, {})),
                  Error);
}

TEST_CASE("small dictionaries carry no fan configuration") {
  const TriangleDictionary dict =
      generate_dictionary({1, Vec3i(1, 1, 0), std::sqrt(2.0)});
  const ConstraintSystem sys =
      build_pair_system(dict, {}, admissible_quadrangles(dict));
  CHECK_FALSE(find_fan_certificate(dict, sys).has_value());
}
