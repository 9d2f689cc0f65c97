#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chordsum/lp/linear_program.hpp"

namespace chordsum::lp {

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-10;
  /// 0 picks a limit proportional to the tableau size.
  std::size_t max_pivots = 0;
  /// Consecutive degenerate pivots after which entering/leaving choices fall
  /// back to Bland's smallest-index rule until the objective moves again.
  std::size_t bland_after = 20;
};

/// Two-phase primal simplex on a dense column-major tableau.
///
/// Every row carries an identity column (its slack or its artificial), so the
/// current basis inverse is always readable from the tableau. That makes it
/// cheap to append columns to a solved program and resume from the optimal
/// basis, which is what column generation needs.
class Simplex {
public:
  explicit Simplex(const LinearProgram& lp, SimplexOptions options = {})
      : options_(options), sense_(lp.sense()) {
    lp.validate();
    build(lp);
  }

  /// Runs both phases (or resumes phase 2). Returns the resulting status.
  Status run() {
    if (!phase1_done_) {
      if (has_artificial_) {
        set_phase_costs(/*phase1=*/true);
        Status s = iterate(/*phase1=*/true);
        if (s == Status::iteration_limit) return status_ = s;
        double infeas = 0.0;
        for (std::size_t r = 0; r < m_; ++r)
          if (is_artificial_[basis_[r]]) infeas += std::max(0.0, rhs_[r]);
        if (infeas > options_.feasibility_tol * (1.0 + rhs_scale_)) return status_ = Status::infeasible;
      }
      phase1_done_ = true;
      set_phase_costs(/*phase1=*/false);
    }
    return status_ = iterate(/*phase1=*/false);
  }

  /// Appends a nonnegative column and returns its user variable index.
  /// Phase 2 may then be resumed with run().
  int add_column(const Column& col) {
    if (!phase1_done_) throw std::logic_error("add_column before the first solve");
    int user = static_cast<int>(var_map_.size());
    VarMap vm;
    vm.kind = VarKind::shifted;
    vm.shift = 0.0;
    vm.pos = static_cast<int>(cols_.size());
    var_map_.push_back(vm);
    user_cost_.push_back(col.cost);
    std::vector<double> dense(m_, 0.0);
    for (auto e : col.entries) {
      if (e.row < 0 || static_cast<std::size_t>(e.row) >= user_rows_)
        throw std::invalid_argument("column references undeclared row");
      dense[e.row] += row_sign_[e.row] * e.coef;
    }
    std::vector<double> sparse_orig = dense;
    // Tableau column = B^{-1} a, with B^{-1}'s i-th column stored at init_[i].
    std::vector<double> t(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (dense[i] == 0.0) continue;
      const auto& binv_col = cols_[init_[i]];
      for (std::size_t r = 0; r < m_; ++r) t[r] += dense[i] * binv_col[r];
    }
    double c = internal_cost_sign() * col.cost;
    double d = c;
    for (std::size_t r = 0; r < m_; ++r) d -= cost_[basis_[r]] * t[r];
    cols_.push_back(std::move(t));
    orig_.push_back(std::move(sparse_orig));
    cost_.push_back(c);
    phase2_cost_.push_back(c);
    d_.push_back(d);
    is_artificial_.push_back(0);
    for (auto e : col.entries) user_rows_terms_[e.row].push_back(Term{user, e.coef});
    return user;
  }

  Status status() const { return status_; }
  std::size_t pivots() const { return pivots_; }
  std::size_t rows() const { return m_; }

  /// Extracts primal values, duals, and reduced costs in user space. With
  /// `refine`, basic values and duals are recomputed from a fresh
  /// factorization of the basis instead of the updated tableau.
  LpSolution solution(bool refine = true) const {
    LpSolution sol;
    sol.status = status_;
    sol.pivots = pivots_;
    if (status_ != Status::optimal) return sol;

    std::vector<double> xb = rhs_;
    std::vector<double> y(m_, 0.0);
    bool refined = false;
    if (refine) refined = refactor(xb, y);
    if (!refined) {
      for (std::size_t i = 0; i < m_; ++i) {
        const auto& binv_col = cols_[init_[i]];
        double s = 0.0;
        for (std::size_t r = 0; r < m_; ++r) s += phase2_cost_[basis_[r]] * binv_col[r];
        y[i] = s;
      }
    }
    std::vector<double> internal(cols_.size(), 0.0);
    for (std::size_t r = 0; r < m_; ++r) internal[basis_[r]] = std::max(0.0, xb[r]);

    const std::size_t nu = var_map_.size();
    sol.primal.assign(nu, 0.0);
    for (std::size_t j = 0; j < nu; ++j) {
      const auto& vm = var_map_[j];
      switch (vm.kind) {
        case VarKind::shifted: sol.primal[j] = vm.shift + internal[vm.pos]; break;
        case VarKind::reflected: sol.primal[j] = vm.shift - internal[vm.pos]; break;
        case VarKind::split: sol.primal[j] = internal[vm.pos] - internal[vm.neg]; break;
      }
    }
    const double flip = internal_cost_sign();
    sol.duals.assign(user_rows_, 0.0);
    for (std::size_t i = 0; i < user_rows_; ++i) sol.duals[i] = flip * row_sign_[i] * y[i];
    sol.reduced_costs = user_cost_;
    for (std::size_t i = 0; i < user_rows_; ++i)
      for (auto t : user_rows_terms_[i]) sol.reduced_costs[t.var] -= sol.duals[i] * t.coef;
    sol.objective = 0.0;
    for (std::size_t j = 0; j < nu; ++j) sol.objective += user_cost_[j] * sol.primal[j];
    return sol;
  }

private:
  enum class VarKind { shifted, reflected, split };
  struct VarMap {
    VarKind kind = VarKind::shifted;
    double shift = 0.0;
    int pos = -1;
    int neg = -1;
  };

  double internal_cost_sign() const { return sense_ == Sense::maximize ? -1.0 : 1.0; }

  void build(const LinearProgram& lp) {
    const auto& vars = lp.variables();
    const auto& rows = lp.constraints();
    user_rows_ = rows.size();
    user_rows_terms_.resize(user_rows_);
    for (std::size_t i = 0; i < user_rows_; ++i) user_rows_terms_[i] = rows[i].terms;
    for (const auto& v : vars) user_cost_.push_back(v.cost);

    std::size_t bound_rows = 0;
    for (const auto& v : vars)
      if (std::isfinite(v.lower) && std::isfinite(v.upper)) ++bound_rows;
    m_ = user_rows_ + bound_rows;

    std::vector<double> rhs(m_, 0.0);
    std::vector<double> slack_coef(m_, 0.0);
    for (std::size_t i = 0; i < user_rows_; ++i) {
      rhs[i] = rows[i].rhs;
      slack_coef[i] = rows[i].relation == Relation::less_equal      ? 1.0
                      : rows[i].relation == Relation::greater_equal ? -1.0
                                                                    : 0.0;
    }

    // Structural columns.
    const double flip = internal_cost_sign();
    std::size_t next_bound_row = user_rows_;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      const auto& v = vars[j];
      VarMap vm;
      if (std::isfinite(v.lower)) {
        vm.kind = VarKind::shifted;
        vm.shift = v.lower;
        vm.pos = new_column(flip * v.cost);
        if (std::isfinite(v.upper)) {
          std::size_t r = next_bound_row++;
          orig_[vm.pos][r] = 1.0;
          rhs[r] = v.upper - v.lower;
          slack_coef[r] = 1.0;
        }
      } else if (std::isfinite(v.upper)) {
        vm.kind = VarKind::reflected;
        vm.shift = v.upper;
        vm.pos = new_column(-flip * v.cost);
      } else {
        vm.kind = VarKind::split;
        vm.pos = new_column(flip * v.cost);
        vm.neg = new_column(-flip * v.cost);
      }
      var_map_.push_back(vm);
    }
    for (std::size_t i = 0; i < user_rows_; ++i) {
      for (auto t : rows[i].terms) {
        const auto& vm = var_map_[t.var];
        switch (vm.kind) {
          case VarKind::shifted:
            orig_[vm.pos][i] += t.coef;
            rhs[i] -= t.coef * vm.shift;
            break;
          case VarKind::reflected:
            orig_[vm.pos][i] -= t.coef;
            rhs[i] -= t.coef * vm.shift;
            break;
          case VarKind::split:
            orig_[vm.pos][i] += t.coef;
            orig_[vm.neg][i] -= t.coef;
            break;
        }
      }
    }

    // Orient each row so that its identity column has coefficient +1 and the
    // rhs is nonnegative.
    row_sign_.assign(m_, 1.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (rhs[i] < 0.0 || (rhs[i] == 0.0 && slack_coef[i] < 0.0)) {
        row_sign_[i] = -1.0;
        rhs[i] = -rhs[i];
        slack_coef[i] = -slack_coef[i];
        for (auto& col : orig_) col[i] = -col[i];
      }
    }
    init_.assign(m_, -1);
    std::vector<int> slack_col(m_, -1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (slack_coef[i] == 0.0) continue;
      slack_col[i] = new_column(0.0);
      orig_[slack_col[i]][i] = slack_coef[i];
      if (slack_coef[i] > 0.0) init_[i] = slack_col[i];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (init_[i] >= 0) continue;
      int a = new_column(0.0);
      orig_[a][i] = 1.0;
      is_artificial_[a] = 1;
      init_[i] = a;
      has_artificial_ = true;
    }
    cols_ = orig_;
    rhs_ = rhs;
    b0_ = std::move(rhs);
    basis_ = init_;
    rhs_scale_ = 0.0;
    for (double b : rhs_) rhs_scale_ = std::max(rhs_scale_, std::abs(b));
    phase2_cost_ = cost_;
  }

  int new_column(double cost) {
    orig_.emplace_back(m_, 0.0);
    cost_.push_back(cost);
    is_artificial_.push_back(0);
    return static_cast<int>(orig_.size()) - 1;
  }

  void set_phase_costs(bool phase1) {
    if (phase1) {
      for (std::size_t j = 0; j < cost_.size(); ++j) cost_[j] = is_artificial_[j] ? 1.0 : 0.0;
    } else {
      cost_ = phase2_cost_;
    }
    d_.assign(cols_.size(), 0.0);
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      double d = cost_[j];
      for (std::size_t r = 0; r < m_; ++r) d -= cost_[basis_[r]] * cols_[j][r];
      d_[j] = d;
    }
  }

  std::size_t pivot_limit() const {
    if (options_.max_pivots) return options_.max_pivots;
    return 100000 + 50 * (m_ + cols_.size());
  }

  Status iterate(bool phase1) {
    std::vector<char> in_basis(cols_.size(), 0);
    for (int b : basis_) in_basis[b] = 1;
    std::size_t degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (pivots_ >= pivot_limit()) return Status::iteration_limit;
      if (in_basis.size() < cols_.size()) in_basis.resize(cols_.size(), 0);

      int enter = -1;
      double best = -options_.optimality_tol;
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (in_basis[j] || is_artificial_[j]) continue;
        if (d_[j] < best) {
          enter = static_cast<int>(j);
          if (bland) break;
          best = d_[j];
        }
      }
      if (enter < 0) return Status::optimal;

      const auto& col = cols_[enter];
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_piv = 0.0;
      for (std::size_t r = 0; r < m_; ++r) {
        double a = col[r];
        double ratio;
        if (!phase1 && is_artificial_[basis_[r]] && std::abs(a) > options_.pivot_tol) {
          ratio = 0.0;  // keep artificials pinned at zero
        } else if (a > options_.pivot_tol) {
          ratio = std::max(0.0, rhs_[r]) / a;
        } else {
          continue;
        }
        bool take;
        if (leave < 0 || ratio < best_ratio - 1e-12 * (1.0 + best_ratio)) {
          take = true;
        } else if (ratio <= best_ratio + 1e-12 * (1.0 + best_ratio)) {
          take = bland ? basis_[r] < basis_[leave] : std::abs(a) > best_piv;
        } else {
          take = false;
        }
        if (take) {
          leave = static_cast<int>(r);
          best_ratio = ratio;
          best_piv = std::abs(a);
        }
      }
      if (leave < 0) return phase1 ? Status::infeasible : Status::unbounded;

      in_basis[basis_[leave]] = 0;
      in_basis[enter] = 1;
      pivot(static_cast<std::size_t>(leave), enter);
      ++pivots_;
      if (best_ratio <= options_.feasibility_tol) {
        if (++degenerate_run >= options_.bland_after) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  void pivot(std::size_t r, int q) {
    const std::vector<double> pcol = cols_[q];
    const double piv = pcol[r];
    const double dq = d_[q];
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      auto& cj = cols_[j];
      double f = cj[r];
      if (f == 0.0) continue;
      f /= piv;
      for (std::size_t i = 0; i < m_; ++i) cj[i] -= f * pcol[i];
      cj[r] = f;
      d_[j] -= f * dq;
    }
    double f = rhs_[r] / piv;
    for (std::size_t i = 0; i < m_; ++i) {
      rhs_[i] -= f * pcol[i];
      if (rhs_[i] < 0.0 && rhs_[i] > -options_.feasibility_tol) rhs_[i] = 0.0;
    }
    rhs_[r] = (f < 0.0 && f > -options_.feasibility_tol) ? 0.0 : f;
    d_[q] = 0.0;
    basis_[r] = q;
  }

  // Solves B x = b and B^T y = c_B from the original columns. Returns false if
  // the basis looks singular, leaving the outputs untouched.
  bool refactor(std::vector<double>& xb, std::vector<double>& y) const {
    const std::size_t m = m_;
    if (m == 0) return true;
    std::vector<double> lu(m * m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) lu[r * m + c] = orig_[basis_[c]][r];
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < m; ++i)
        if (std::abs(lu[i * m + k]) > std::abs(lu[p * m + k])) p = i;
      if (std::abs(lu[p * m + k]) < 1e-13) return false;
      if (p != k) {
        for (std::size_t c = 0; c < m; ++c) std::swap(lu[k * m + c], lu[p * m + c]);
        std::swap(perm[k], perm[p]);
      }
      const double inv = 1.0 / lu[k * m + k];
      for (std::size_t i = k + 1; i < m; ++i) {
        double f = lu[i * m + k] * inv;
        if (f == 0.0) continue;
        lu[i * m + k] = f;
        for (std::size_t c = k + 1; c < m; ++c) lu[i * m + c] -= f * lu[k * m + c];
      }
    }
    // P B = L U.  B x = b  ->  L U x = P b.
    std::vector<double> b(m);
    for (std::size_t i = 0; i < m; ++i) b[i] = b0_[perm[i]];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t c = 0; c < i; ++c) b[i] -= lu[i * m + c] * b[c];
    for (std::size_t i = m; i-- > 0;) {
      for (std::size_t c = i + 1; c < m; ++c) b[i] -= lu[i * m + c] * b[c];
      b[i] /= lu[i * m + i];
    }
    // B^T y = c_B  ->  U^T L^T P y = c_B.
    std::vector<double> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = phase2_cost_[basis_[i]];
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t c = 0; c < i; ++c) w[i] -= lu[c * m + i] * w[c];
      w[i] /= lu[i * m + i];
    }
    for (std::size_t i = m; i-- > 0;)
      for (std::size_t c = i + 1; c < m; ++c) w[i] -= lu[c * m + i] * w[c];
    for (std::size_t i = 0; i < m; ++i) y[perm[i]] = w[i];
    xb = std::move(b);
    return true;
  }

  SimplexOptions options_;
  Sense sense_;
  std::size_t m_ = 0;
  std::size_t user_rows_ = 0;
  std::vector<std::vector<Term>> user_rows_terms_;
  std::vector<double> user_cost_;
  std::vector<VarMap> var_map_;
  std::vector<std::vector<double>> orig_;
  std::vector<std::vector<double>> cols_;
  std::vector<double> cost_;
  std::vector<double> phase2_cost_;
  std::vector<double> d_;
  std::vector<char> is_artificial_;
  std::vector<double> rhs_;
  std::vector<double> b0_;
  std::vector<double> row_sign_;
  std::vector<int> init_;
  std::vector<int> basis_;
  double rhs_scale_ = 0.0;
  bool has_artificial_ = false;
  bool phase1_done_ = false;
  std::size_t pivots_ = 0;
  Status status_ = Status::infeasible;
};

inline LpSolution solve(const LinearProgram& lp, SimplexOptions options = {}) {
  Simplex s(lp, options);
  s.run();
  return s.solution();
}

}  // namespace chordsum::lp
