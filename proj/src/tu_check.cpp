#include "wlp/tu_check.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace wlp {

Eigen::MatrixXi to_dense(const ConstraintSystem& system) {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(system.nrows, system.ncols);
  for (Index c = 0; c < system.ncols; ++c)
    for (const auto& [row, val] : system.cols[c]) m(row, c) = val;
  return m;
}

CertificateCheck verify_certificate(const Eigen::MatrixXi& m,
                                    const EulerianCertificate& cert) {
  CertificateCheck out;
  out.square = cert.rows.size() == cert.cols.size() && !cert.rows.empty();
  if (!out.square) return out;
  for (Index r : cert.rows)
    if (r < 0 || r >= m.rows()) throw Error("certificate row out of range");
  for (Index c : cert.cols)
    if (c < 0 || c >= m.cols()) throw Error("certificate column out of range");

  out.eulerian = true;
  long total = 0;
  for (Index r : cert.rows) {
    long s = 0;
    for (Index c : cert.cols) s += m(r, c);
    if (s % 2 != 0) out.eulerian = false;
    total += s;
  }
  for (Index c : cert.cols) {
    long s = 0;
    for (Index r : cert.rows) s += m(r, c);
    if (s % 2 != 0) out.eulerian = false;
  }
  out.sum = total;
  out.divisible_by_four = ((total % 4) + 4) % 4 == 0;
  return out;
}

CertificateCheck verify_certificate(const ConstraintSystem& system,
                                    const EulerianCertificate& cert) {
  return verify_certificate(to_dense(system), cert);
}

EulerianCertificate full_certificate(const Eigen::MatrixXi& m) {
  EulerianCertificate cert;
  for (Index r = 0; r < m.rows(); ++r) cert.rows.push_back(r);
  for (Index c = 0; c < m.cols(); ++c) cert.cols.push_back(c);
  return cert;
}

namespace {

// Exact determinant of the selected submatrix (Bareiss fraction-free
// elimination over int64; submatrix orders here stay small).
long sub_determinant(const Eigen::MatrixXi& m, const std::vector<Index>& rows,
                     const std::vector<Index>& cols) {
  const int n = static_cast<int>(rows.size());
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m(rows[i], cols[j]);

  std::int64_t sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a[i][k] != 0) { piv = i; break; }
    if (piv < 0) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

bool next_combination(std::vector<Index>& idx, Index n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<Index> first_combination(int k) {
  std::vector<Index> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

double binomial(Index n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b *= static_cast<double>(n - i) / (i + 1);
  return b;
}

bool is_eulerian_violation(const Eigen::MatrixXi& m,
                           const std::vector<Index>& rows,
                           const std::vector<Index>& cols) {
  long total = 0;
  for (Index r : rows) {
    long s = 0;
    for (Index c : cols) s += m(r, c);
    if (s % 2 != 0) return false;
    total += s;
  }
  for (Index c : cols) {
    long s = 0;
    for (Index r : rows) s += m(r, c);
    if (s % 2 != 0) return false;
  }
  return ((total % 4) + 4) % 4 != 0;
}

// Shrink a submatrix with |det| >= 2 to a minimal violation: repeatedly
// descend into the smallest proper square submatrix whose determinant lies
// outside {-1,0,1}. A minimal violation is Eulerian with sum = 2 mod 4.
EulerianCertificate shrink_to_minimal(const Eigen::MatrixXi& m,
                                      std::vector<Index> rows,
                                      std::vector<Index> cols) {
  for (;;) {
    const int n = static_cast<int>(rows.size());
    bool found = false;
    for (int s = 2; s < n && !found; ++s) {
      auto ri = first_combination(s);
      do {
        auto ci = first_combination(s);
        do {
          std::vector<Index> sr(s), sc(s);
          for (int i = 0; i < s; ++i) sr[i] = rows[ri[i]];
          for (int i = 0; i < s; ++i) sc[i] = cols[ci[i]];
          if (std::abs(sub_determinant(m, sr, sc)) >= 2) {
            rows = sr;
            cols = sc;
            found = true;
          }
        } while (!found && next_combination(ci, n));
      } while (!found && next_combination(ri, n));
    }
    if (!found) return {rows, cols};
  }
}

}  // namespace

MinorScanResult minor_determinant_scan(const Eigen::MatrixXi& m, int max_order,
                                       long budget) {
  MinorScanResult out;
  const Index nr = static_cast<Index>(m.rows());
  const Index nc = static_cast<Index>(m.cols());
  long used = 0;
  for (int s = 1; s <= std::min<Index>({max_order, nr, nc}); ++s) {
    auto ri = first_combination(s);
    do {
      auto ci = first_combination(s);
      do {
        if (++used > budget) {
          out.budget_exhausted = true;
          return out;
        }
        std::vector<Index> sr(ri.begin(), ri.end());
        std::vector<Index> sc(ci.begin(), ci.end());
        const long d = std::abs(sub_determinant(m, sr, sc));
        if (d > out.max_abs_det) {
          out.max_abs_det = d;
          out.witness_order = s;
          out.witness = {sr, sc};
        }
        if (d >= 2) out.tu_up_to_order = false;
      } while (next_combination(ci, nc));
    } while (next_combination(ri, nr));
  }
  return out;
}

std::optional<EulerianCertificate> search_eulerian_violation(
    const Eigen::MatrixXi& m, int max_size, long budget, unsigned seed) {
  const Index nr = static_cast<Index>(m.rows());
  const Index nc = static_cast<Index>(m.cols());
  const int smax = std::min<Index>({max_size, nr, nc});

  // Exhaustive Camion scan when the subset count is affordable.
  double pairs = 0.0;
  for (int s = 1; s <= smax; ++s) pairs += binomial(nr, s) * binomial(nc, s);
  if (pairs <= static_cast<double>(budget)) {
    for (int s = 1; s <= smax; ++s) {
      auto ri = first_combination(s);
      do {
        auto ci = first_combination(s);
        do {
          std::vector<Index> sr(ri.begin(), ri.end());
          std::vector<Index> sc(ci.begin(), ci.end());
          if (is_eulerian_violation(m, sr, sc))
            return EulerianCertificate{sr, sc};
        } while (next_combination(ci, nc));
      } while (next_combination(ri, nr));
    }
    return std::nullopt;
  }

  // Randomized minor probing on connected supports, then shrink any
  // violation to a minimal (hence Eulerian, sum = 2 mod 4) one.
  std::mt19937 rng(seed);
  std::vector<std::vector<Index>> rows_of_col(nc), cols_of_row(nr);
  for (Index r = 0; r < nr; ++r)
    for (Index c = 0; c < nc; ++c)
      if (m(r, c) != 0) {
        rows_of_col[c].push_back(r);
        cols_of_row[r].push_back(c);
      }

  for (long used = 0; used < budget;) {
    const int s = std::uniform_int_distribution<int>(2, smax)(rng);
    // Grow a connected support around a random nonzero column.
    std::set<Index> rset, cset;
    Index c0 = std::uniform_int_distribution<Index>(0, nc - 1)(rng);
    if (rows_of_col[c0].empty()) { ++used; continue; }
    cset.insert(c0);
    while (static_cast<int>(rset.size()) < 2 * s ||
           static_cast<int>(cset.size()) < 2 * s) {
      bool grew = false;
      for (Index c : std::vector<Index>(cset.begin(), cset.end()))
        for (Index r : rows_of_col[c])
          if (rset.insert(r).second) grew = true;
      for (Index r : std::vector<Index>(rset.begin(), rset.end()))
        for (Index c : cols_of_row[r])
          if (cset.insert(c).second) grew = true;
      if (!grew) break;
    }
    if (static_cast<int>(rset.size()) < s || static_cast<int>(cset.size()) < s) {
      ++used;
      continue;
    }
    std::vector<Index> rpool(rset.begin(), rset.end());
    std::vector<Index> cpool(cset.begin(), cset.end());
    for (int trial = 0; trial < 16 && used < budget; ++trial, ++used) {
      std::shuffle(rpool.begin(), rpool.end(), rng);
      std::shuffle(cpool.begin(), cpool.end(), rng);
      std::vector<Index> sr(rpool.begin(), rpool.begin() + s);
      std::vector<Index> sc(cpool.begin(), cpool.begin() + s);
      if (is_eulerian_violation(m, sr, sc)) return EulerianCertificate{sr, sc};
      if (std::abs(sub_determinant(m, sr, sc)) >= 2) {
        EulerianCertificate cert = shrink_to_minimal(m, sr, sc);
        if (verify_certificate(m, cert).refutes_tu()) return cert;
      }
    }
  }
  return std::nullopt;
}

std::optional<EulerianCertificate> search_eulerian_violation(
    const TriangleDictionary& dict, const ConstraintSystem& pair_system,
    int max_size, long budget, unsigned seed) {
  if (auto cert = find_fan_certificate(dict, pair_system)) return cert;
  return search_eulerian_violation(to_dense(pair_system), max_size, budget,
                                   seed);
}

namespace {

// Column order of the printed fan table: the three centrals, then the pair
// columns grouped by edge.
constexpr int kCentralT1 = 1, kCentralT5 = 5, kCentralT9 = 9;
constexpr std::pair<int, int> kFanPairs[24] = {
    {1, 2},   {2, 3},   {3, 4},   {4, 5},   {2, 5},   {5, 6},
    {1, 6},   {1, 7},   {7, 8},   {2, 8},   {1, 9},   {9, 10},
    {10, 11}, {1, 11},  {1, 12},  {12, 13}, {9, 13},  {9, 5},
    {5, 14},  {14, 15}, {9, 15},  {9, 16},  {16, 17}, {5, 17}};
// Edge of each pair column: 1 for the first ten, 2 for the next seven,
// 3 for the last seven.
int fan_pair_edge(int k) { return k < 10 ? 1 : (k < 17 ? 2 : 3); }

// Row order: (T1..T8, e1), (T1,T9..T13, e2), (T9,T5,T14..T17, e3), then
// seven zero rows (T18..T24, e3).
constexpr std::pair<int, int> kFanRows[27] = {
    {1, 1},  {2, 1},  {3, 1},  {4, 1},  {5, 1},  {6, 1},  {7, 1},
    {8, 1},  {1, 2},  {9, 2},  {10, 2}, {11, 2}, {12, 2}, {13, 2},
    {9, 3},  {5, 3},  {14, 3}, {15, 3}, {16, 3}, {17, 3}, {18, 3},
    {19, 3}, {20, 3}, {21, 3}, {22, 3}, {23, 3}, {24, 3}};

// Edges of the central triangles: T1 spans e1,e2; T5 spans e1,e3; T9 e2,e3.
bool central_has_edge(int t, int e) {
  if (t == kCentralT1) return e == 1 || e == 2;
  if (t == kCentralT5) return e == 1 || e == 3;
  if (t == kCentralT9) return e == 2 || e == 3;
  return false;
}

}  // namespace

FanTable fan_counterexample_table() {
  FanTable table;
  table.matrix = Eigen::MatrixXi::Zero(27, 27);
  table.col_labels = {"T1", "T5", "T9"};
  for (const auto& [i, j] : kFanPairs)
    table.col_labels.push_back("T" + std::to_string(i) + "," +
                               std::to_string(j));
  for (const auto& [t, e] : kFanRows)
    table.row_labels.push_back("(T" + std::to_string(t) + ",e" +
                               std::to_string(e) + ")");

  const int centrals[3] = {kCentralT1, kCentralT5, kCentralT9};
  for (int r = 0; r < 27; ++r) {
    const auto [t, e] = kFanRows[r];
    for (int c = 0; c < 3; ++c)
      if (t == centrals[c] && central_has_edge(t, e))
        table.matrix(r, c) = 1;
    for (int k = 0; k < 24; ++k) {
      const auto [i, j] = kFanPairs[k];
      if ((t == i || t == j) && fan_pair_edge(k) == e)
        table.matrix(r, 3 + k) = -1;
    }
  }
  return table;
}

Eigen::MatrixXi fan_counterexample_matrix() {
  return fan_counterexample_table().matrix;
}

namespace {

// Backtracking fan selection: assign abstract triangle labels 2..24 to
// oriented triangle ids so that every pair column required by the printed
// table exists in the system.
struct FanSearch {
  const TriangleDictionary& dict;
  std::map<std::pair<Index, Index>, Index> pair_col;  // (min,max) -> column
  std::vector<Index> tri_col;                         // triangle id -> column
  std::map<std::pair<Index, EdgeKey>, Index> row_of;  // (triangle, edge) -> row

  bool has_pair(Index i, Index j) const {
    return pair_col.count({std::min(i, j), std::max(i, j)}) > 0;
  }

  // Assign `labels` (abstract) to distinct candidates so that for every
  // required (a, b) with both sides assigned the pair column exists.
  bool assign(const std::vector<int>& labels,
              const std::vector<std::pair<int, int>>& required,
              const std::vector<Index>& candidates, std::size_t pos,
              std::map<int, Index>& chosen, std::set<Index>& used) const {
    if (pos == labels.size()) return true;
    const int lbl = labels[pos];
    for (Index cand : candidates) {
      if (used.count(cand)) continue;
      chosen[lbl] = cand;
      bool ok = true;
      for (const auto& [a, b] : required) {
        if (a != lbl && b != lbl) continue;
        const int other = a == lbl ? b : a;
        auto it = chosen.find(other);
        if (it == chosen.end()) continue;
        if (!has_pair(cand, it->second)) { ok = false; break; }
      }
      if (ok) {
        used.insert(cand);
        if (assign(labels, required, candidates, pos + 1, chosen, used))
          return true;
        used.erase(cand);
      }
      chosen.erase(lbl);
    }
    return false;
  }
};

}  // namespace

std::optional<EulerianCertificate> find_fan_certificate(
    const TriangleDictionary& dict, const ConstraintSystem& pair_system) {
  if (pair_system.kind != ConstraintSystem::Kind::PairForm)
    throw Error("find_fan_certificate: needs a pair-form system");

  FanSearch fs{dict};
  fs.tri_col.assign(dict.num_triangles(), -1);
  for (Index c = 0; c < pair_system.ncols; ++c) {
    const VarDesc& v = pair_system.vars[c];
    if (v.kind == VarDesc::Kind::Triangle) {
      fs.tri_col[v.tri_i] = c;
    } else {
      fs.pair_col[{std::min(v.tri_i, v.tri_j), std::max(v.tri_i, v.tri_j)}] = c;
    }
  }
  for (Index r = 0; r < pair_system.nrows; ++r)
    fs.row_of[{pair_system.rows[r].triangle, pair_system.rows[r].edge}] = r;

  // Vertex neighborhoods from the dictionary's geometric edges.
  std::map<Index, std::vector<Index>> nbrs;
  for (const auto& [key, _] : dict.adjacency) {
    nbrs[key.a].push_back(key.b);
    nbrs[key.b].push_back(key.a);
  }

  auto canon_tri = [&](Index u, Index v, Index w) -> std::optional<Index> {
    std::array<Index, 3> t{u, v, w};
    std::sort(t.begin(), t.end());
    return dict.find_triangle(t[0], t[1], t[2]);
  };

  // Required pair lists per edge in abstract labels (see the printed table).
  const std::vector<std::pair<int, int>> req1 = {
      {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 5},
      {5, 6}, {1, 6}, {1, 7}, {7, 8}, {2, 8}};
  const std::vector<std::pair<int, int>> req2 = {
      {9, 10}, {10, 11}, {1, 11}, {1, 12}, {12, 13}, {9, 13}};
  const std::vector<std::pair<int, int>> req3 = {
      {5, 14}, {14, 15}, {9, 15}, {9, 16}, {16, 17}, {5, 17}};

  for (const auto& [b, bn] : nbrs) {
    for (Index a : bn) {
      for (Index c : bn) {
        if (c == a) continue;
        for (Index d : bn) {
          if (d == a || d == c) continue;
          auto t1 = canon_tri(a, b, c);
          auto t5 = canon_tri(a, b, d);
          auto t9 = canon_tri(b, c, d);
          if (!t1 || !t5 || !t9) continue;
          if (fs.tri_col[*t1] < 0 || fs.tri_col[*t5] < 0 ||
              fs.tri_col[*t9] < 0)
            continue;
          if (!fs.has_pair(*t1, *t9) || !fs.has_pair(*t9, *t5)) continue;

          const EdgeKey e1(b, a), e2(b, c), e3(b, d);
          auto inc = [&](const EdgeKey& e) {
            auto it = dict.adjacency.find(e);
            return it == dict.adjacency.end() ? std::vector<Index>{}
                                              : it->second;
          };
          std::map<int, Index> chosen = {{1, *t1}, {5, *t5}, {9, *t9}};
          std::set<Index> used = {*t1, *t5, *t9};

          if (!fs.assign({2, 3, 4, 6, 7, 8}, req1, inc(e1), 0, chosen, used))
            continue;
          if (!fs.assign({10, 11, 12, 13}, req2, inc(e2), 0, chosen, used))
            continue;
          if (!fs.assign({14, 15, 16, 17}, req3, inc(e3), 0, chosen, used))
            continue;

          // Seven further triangles at e3 supply the zero-padding rows.
          std::vector<Index> pads;
          for (Index t : inc(e3)) {
            if (used.count(t)) continue;
            pads.push_back(t);
            if (pads.size() == 7) break;
          }
          if (pads.size() < 7) continue;
          for (int k = 0; k < 7; ++k) chosen[18 + k] = pads[k];

          const EdgeKey edges[4] = {EdgeKey(), e1, e2, e3};
          EulerianCertificate cert;
          for (const auto& [t, e] : kFanRows)
            cert.rows.push_back(fs.row_of.at({chosen.at(t), edges[e]}));
          cert.cols = {fs.tri_col[*t1], fs.tri_col[*t5], fs.tri_col[*t9]};
          for (const auto& [i, j] : kFanPairs) {
            const Index u = chosen.at(i), v = chosen.at(j);
            cert.cols.push_back(fs.pair_col.at({std::min(u, v), std::max(u, v)}));
          }
          if (verify_certificate(pair_system, cert).refutes_tu()) return cert;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace wlp
