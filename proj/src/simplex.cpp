// Bounded-variable two-phase revised simplex with a dense basis inverse.
// Problem sizes here stay in the low thousands of rows, so dense B^-1 with
// eta updates and periodic refactorization is both simple and fast enough.

#include <algorithm>
#include <chrono>
#include <cmath>

#include "wlp/solver.hpp"

namespace wlp {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::IterationLimit: return "iteration-limit";
    case SolveStatus::NodeLimit: return "node-limit";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarState : std::uint8_t { Basic, AtLower, AtUpper };

class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& opt)
      : lp_(lp), opt_(opt), m_(lp.nrows), n_(lp.ncols) {
    lower_.resize(n_ + m_);
    upper_.resize(n_ + m_);
    for (Index j = 0; j < n_; ++j) {
      lower_[j] = lp.lower[j];
      upper_[j] = lp.upper[j];
    }
    for (Index i = 0; i < m_; ++i) {
      lower_[n_ + i] = 0.0;
      upper_[n_ + i] = kInf;
    }
    art_sign_.assign(m_, 1.0);
    state_.assign(n_ + m_, VarState::AtLower);
    value_.assign(n_ + m_, 0.0);
    basis_.resize(m_);
    binv_ = Eigen::MatrixXd::Identity(m_, m_);
  }

  SolveStatus solve() {
    init_artificial_basis();

    // Phase 1: drive the artificials to zero.
    cost_.assign(n_ + m_, 0.0);
    for (Index i = 0; i < m_; ++i) cost_[n_ + i] = 1.0;
    SolveStatus st = iterate();
    if (st != SolveStatus::Optimal) return st;
    if (current_objective() > opt_.tol_feas) {
      farkas_ = dual_y();
      return SolveStatus::Infeasible;
    }

    // Phase 2: pin artificials at zero and optimize the real objective.
    for (Index i = 0; i < m_; ++i) {
      upper_[n_ + i] = 0.0;
      if (state_[n_ + i] != VarState::Basic) value_[n_ + i] = 0.0;
    }
    for (Index i = 0; i < m_; ++i)
      if (basis_[i] >= n_ && std::abs(value_[basis_[i]]) < opt_.tol_feas)
        value_[basis_[i]] = std::max(0.0, value_[basis_[i]]);
    cost_.assign(n_ + m_, 0.0);
    for (Index j = 0; j < n_; ++j) cost_[j] = lp_.objective[j];
    return iterate();
  }

  Eigen::VectorXd x() const {
    Eigen::VectorXd out(n_);
    for (Index j = 0; j < n_; ++j) out[j] = value_[j];
    return out;
  }
  double objective() const {
    double z = lp_.objective_offset;
    for (Index j = 0; j < n_; ++j) z += lp_.objective[j] * value_[j];
    return z;
  }
  int iterations() const { return iterations_; }
  const Eigen::VectorXd& farkas() const { return farkas_; }

 private:
  // Sparse column of the extended matrix [A | signed identity].
  void column(Index j, std::vector<std::pair<Index, double>>& out) const {
    out.clear();
    if (j < n_) {
      out.assign(lp_.cols[j].begin(), lp_.cols[j].end());
    } else {
      out.push_back({j - n_, art_sign_[j - n_]});
    }
  }

  void init_artificial_basis() {
    Eigen::VectorXd r = lp_.rhs;
    for (Index j = 0; j < n_; ++j) {
      state_[j] = VarState::AtLower;
      value_[j] = lower_[j];
      if (value_[j] != 0.0)
        for (const auto& [row, a] : lp_.cols[j]) r[row] -= a * value_[j];
    }
    for (Index i = 0; i < m_; ++i) {
      art_sign_[i] = r[i] >= 0.0 ? 1.0 : -1.0;
      basis_[i] = n_ + i;
      state_[n_ + i] = VarState::Basic;
      value_[n_ + i] = std::abs(r[i]);
      binv_(i, i) = art_sign_[i];
    }
  }

  Eigen::VectorXd dual_y() const {
    Eigen::VectorXd cb(m_);
    for (Index i = 0; i < m_; ++i) cb[i] = cost_[basis_[i]];
    return binv_.transpose() * cb;
  }

  double current_objective() const {
    double z = 0.0;
    for (Index j = 0; j < n_ + m_; ++j)
      if (value_[j] != 0.0) z += cost_[j] * value_[j];
    return z;
  }

  double reduced_cost(Index j, const Eigen::VectorXd& y,
                      std::vector<std::pair<Index, double>>& scratch) const {
    double d = cost_[j];
    column(j, scratch);
    for (const auto& [row, a] : scratch) d -= y[row] * a;
    return d;
  }

  void refactorize() {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m_, m_);
    std::vector<std::pair<Index, double>> col;
    for (Index i = 0; i < m_; ++i) {
      column(basis_[i], col);
      for (const auto& [row, a] : col) b(row, i) = a;
    }
    binv_ = b.partialPivLu().inverse();
    // Recompute basic values from the nonbasic ones.
    Eigen::VectorXd r = lp_.rhs;
    for (Index j = 0; j < n_ + m_; ++j) {
      if (state_[j] == VarState::Basic || value_[j] == 0.0) continue;
      column(j, col);
      for (const auto& [row, a] : col) r[row] -= a * value_[j];
    }
    Eigen::VectorXd xb = binv_ * r;
    for (Index i = 0; i < m_; ++i) value_[basis_[i]] = xb[i];
  }

  SolveStatus iterate() {
    std::vector<std::pair<Index, double>> col;
    int stall = 0;
    double last_obj = current_objective();
    const int stall_limit = 2 * m_ + 32;

    for (;; ++iterations_) {
      if (iterations_ >= opt_.max_iterations)
        return SolveStatus::IterationLimit;
      const bool bland = stall > stall_limit;

      const Eigen::VectorXd y = dual_y();
      Index enter = -1;
      int dir = 0;  // +1 entering rises from lower, -1 falls from upper
      double best = opt_.tol_cost;
      for (Index j = 0; j < n_ + m_; ++j) {
        if (state_[j] == VarState::Basic) continue;
        if (upper_[j] - lower_[j] <= 0.0) continue;  // pinned
        const double d = reduced_cost(j, y, col);
        if (state_[j] == VarState::AtLower && d < -opt_.tol_cost) {
          if (bland) { enter = j; dir = 1; break; }
          if (-d > best) { best = -d; enter = j; dir = 1; }
        } else if (state_[j] == VarState::AtUpper && d > opt_.tol_cost) {
          if (bland) { enter = j; dir = -1; break; }
          if (d > best) { best = d; enter = j; dir = -1; }
        }
      }
      if (enter < 0) return SolveStatus::Optimal;

      column(enter, col);
      Eigen::VectorXd w = Eigen::VectorXd::Zero(m_);
      for (const auto& [row, a] : col) w[row] = a;
      w = binv_ * w;

      // Ratio test: basic variable i moves by -dir * t * w[i].
      double t = upper_[enter] - lower_[enter];  // bound flip
      Index leave_row = -1;
      double leave_pivot = 0.0;
      int leave_to_upper = 0;
      for (Index i = 0; i < m_; ++i) {
        const double g = dir * w[i];
        const Index bj = basis_[i];
        double limit = kInf;
        int to_upper = 0;
        if (g > opt_.tol_pivot) {
          limit = (value_[bj] - lower_[bj]) / g;
        } else if (g < -opt_.tol_pivot) {
          if (upper_[bj] == kInf) continue;
          limit = (upper_[bj] - value_[bj]) / (-g);
          to_upper = 1;
        } else {
          continue;
        }
        if (limit < t - 1e-12 ||
            (limit < t + 1e-12 &&
             (leave_row < 0 || (bland ? basis_[i] < basis_[leave_row]
                                      : std::abs(w[i]) > std::abs(leave_pivot))))) {
          t = std::min(t, std::max(limit, 0.0));
          leave_row = i;
          leave_pivot = w[i];
          leave_to_upper = to_upper;
        }
      }
      if (t == kInf) return SolveStatus::Unbounded;

      // Apply the step.
      for (Index i = 0; i < m_; ++i) value_[basis_[i]] -= dir * t * w[i];
      value_[enter] = (dir > 0 ? lower_[enter] : upper_[enter]) + dir * t;

      if (leave_row < 0) {
        // Bound flip, basis unchanged.
        state_[enter] =
            dir > 0 ? VarState::AtUpper : VarState::AtLower;
      } else {
        const Index out = basis_[leave_row];
        state_[out] = leave_to_upper ? VarState::AtUpper : VarState::AtLower;
        value_[out] = leave_to_upper ? upper_[out] : lower_[out];
        state_[enter] = VarState::Basic;
        basis_[leave_row] = enter;
        // Eta update of the inverse.
        binv_.row(leave_row) /= leave_pivot;
        for (Index i = 0; i < m_; ++i) {
          if (i == leave_row || w[i] == 0.0) continue;
          binv_.row(i) -= w[i] * binv_.row(leave_row);
        }
        if (++pivots_since_refactor_ >= opt_.refactor_every) {
          pivots_since_refactor_ = 0;
          refactorize();
        }
      }

      const double obj = current_objective();
      if (obj < last_obj - 1e-12) {
        stall = 0;
        last_obj = obj;
      } else {
        ++stall;
      }
    }
  }

  const LinearProgram& lp_;
  SimplexOptions opt_;
  Index m_, n_;
  Eigen::MatrixXd binv_;
  std::vector<Index> basis_;
  std::vector<VarState> state_;
  std::vector<double> value_;
  std::vector<double> lower_, upper_, cost_;
  std::vector<double> art_sign_;
  Eigen::VectorXd farkas_;
  int iterations_ = 0;
  int pivots_since_refactor_ = 0;
};

}  // namespace

double farkas_margin(const LinearProgram& lp, const Eigen::VectorXd& y) {
  if (y.size() != lp.nrows) throw Error("farkas_margin: dimension mismatch");
  double margin = y.dot(lp.rhs);
  for (Index j = 0; j < lp.ncols; ++j) {
    double a = 0.0;
    for (const auto& [row, v] : lp.cols[j]) a += y[row] * v;
    margin -= a > 0.0 ? a * lp.upper[j] : a * lp.lower[j];
  }
  return margin;
}

SolveReport lp_solve(const LinearProgram& lp, const SimplexOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  Simplex s(lp, opt);
  SolveReport rep;
  rep.status = s.solve();
  rep.iterations = s.iterations();
  if (rep.status == SolveStatus::Optimal) {
    rep.x = s.x();
    rep.objective = s.objective();
    rep.lp_bound = rep.objective;
    for (Index j = 0; j < lp.ncols; ++j)
      if (std::abs(rep.x[j] - std::round(rep.x[j])) > 1e-7)
        rep.fractional.push_back(j);
  } else if (rep.status == SolveStatus::Infeasible) {
    rep.farkas = s.farkas();
  }
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

}  // namespace wlp
