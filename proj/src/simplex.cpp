#include <algorithm>
#include <chrono>
#include <cmath>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "aggrenet/solve.hpp"

namespace aggrenet {

std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
    case LpStatus::IterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

LpProblem LpProblem::from_model(const Model& m) {
  LpProblem lp;
  lp.rows = m.constraint_count();
  lp.cols = m.variable_count();
  std::vector<int> count(lp.cols, 0);
  for (const Constraint& c : m.constraints()) {
    for (const Term& t : c.terms) ++count[t.var];
  }
  lp.col_start.assign(lp.cols + 1, 0);
  for (int j = 0; j < lp.cols; ++j) lp.col_start[j + 1] = lp.col_start[j] + count[j];
  lp.row_index.resize(lp.col_start.back());
  lp.value.resize(lp.col_start.back());
  std::vector<int> fill(lp.col_start.begin(), lp.col_start.end() - 1);
  for (int i = 0; i < lp.rows; ++i) {
    const Constraint& c = m.constraint(i);
    for (const Term& t : c.terms) {
      lp.row_index[fill[t.var]] = i;
      lp.value[fill[t.var]++] = t.coef;
    }
    switch (c.sense) {
      case Sense::LessEqual:
        lp.row_lower.push_back(-kInfinity);
        lp.row_upper.push_back(c.rhs);
        break;
      case Sense::GreaterEqual:
        lp.row_lower.push_back(c.rhs);
        lp.row_upper.push_back(kInfinity);
        break;
      case Sense::Equal:
        lp.row_lower.push_back(c.rhs);
        lp.row_upper.push_back(c.rhs);
        break;
    }
  }
  for (const Variable& v : m.variables()) {
    lp.cost.push_back(v.objective);
    lp.lower.push_back(v.lower);
    lp.upper.push_back(v.upper);
  }
  return lp;
}

namespace {

enum class State : unsigned char { Basic, AtLower, AtUpper, Free };

constexpr double kHarrisTol = 1e-9;
constexpr double kDegenerateStep = 1e-12;

// Columns: [0, n) structural, [n, n + m) logicals (column -e_i, bounds of row
// i), then artificials (sign * e_row). The system is A x - r + S t = 0.
class Simplex {
 public:
  Simplex(const LpProblem& lp, const LpOptions& opt) : lp_(lp), opt_(opt), m_(lp.rows), n_(lp.cols) {}

  LpResult run() {
    LpResult result;
    for (int j = 0; j < n_; ++j) {
      if (lp_.lower[j] > lp_.upper[j]) {
        result.status = LpStatus::Infeasible;
        return result;
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (lp_.row_lower[i] > lp_.row_upper[i]) {
        result.status = LpStatus::Infeasible;
        return result;
      }
    }
    initialize();

    if (!art_row_.empty()) {
      set_phase_costs(true);
      const LpStatus s = iterate(result.iterations);
      if (s == LpStatus::IterationLimit) {
        result.status = s;
        return result;
      }
      double worst = 0.0;
      for (std::size_t t = 0; t < art_row_.size(); ++t) worst = std::max(worst, x_[n_ + m_ + t]);
      if (worst > opt_.feasibility_tol) {
        result.status = LpStatus::Infeasible;
        return result;
      }
      for (std::size_t t = 0; t < art_row_.size(); ++t) {
        const int j = n_ + m_ + static_cast<int>(t);
        up_[j] = 0.0;
        if (state_[j] != State::Basic) {
          state_[j] = State::AtLower;
          x_[j] = 0.0;
        }
      }
      refactor();
    }
    set_phase_costs(false);
    result.status = iterate(result.iterations);
    result.x.assign(x_.begin(), x_.begin() + n_);
    for (int j = 0; j < n_; ++j) result.objective += lp_.cost[j] * result.x[j];
    return result;
  }

 private:
  struct Eta {
    int pos;
    double pivot;
    std::vector<std::pair<int, double>> entries;  // off-pivot nonzeros
  };

  int total() const { return static_cast<int>(x_.size()); }

  template <typename F>
  void for_column(int j, F&& f) const {
    if (j < n_) {
      for (int p = lp_.col_start[j]; p < lp_.col_start[j + 1]; ++p) f(lp_.row_index[p], lp_.value[p]);
    } else if (j < n_ + m_) {
      f(j - n_, -1.0);
    } else {
      const int t = j - n_ - m_;
      f(art_row_[t], art_sign_[t]);
    }
  }

  void initialize() {
    const int base = n_ + m_;
    lo_.assign(base, 0.0);
    up_.assign(base, 0.0);
    x_.assign(base, 0.0);
    state_.assign(base, State::AtLower);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp_.lower[j];
      up_[j] = lp_.upper[j];
      x_[j] = place_nonbasic(j);
    }
    std::vector<double> activity(m_, 0.0);
    for (int j = 0; j < n_; ++j) {
      if (x_[j] == 0.0) continue;
      for_column(j, [&](int i, double v) { activity[i] += v * x_[j]; });
    }
    basis_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      const int r = n_ + i;
      lo_[r] = lp_.row_lower[i];
      up_[r] = lp_.row_upper[i];
      const double a = activity[i];
      if (a >= lo_[r] && a <= up_[r]) {
        basis_[i] = r;
        state_[r] = State::Basic;
        x_[r] = a;
        continue;
      }
      const double target = a < lo_[r] ? lo_[r] : up_[r];
      state_[r] = a < lo_[r] ? State::AtLower : State::AtUpper;
      x_[r] = target;
      art_row_.push_back(i);
      art_sign_.push_back(target > a ? 1.0 : -1.0);
      lo_.push_back(0.0);
      up_.push_back(kInfinity);
      x_.push_back(std::abs(target - a));
      state_.push_back(State::Basic);
      basis_[i] = total() - 1;
    }
    refactor();
  }

  double place_nonbasic(int j) {
    if (std::isfinite(lo_[j])) {
      state_[j] = State::AtLower;
      return lo_[j];
    }
    if (std::isfinite(up_[j])) {
      state_[j] = State::AtUpper;
      return up_[j];
    }
    state_[j] = State::Free;
    return 0.0;
  }

  void set_phase_costs(bool phase_one) {
    cost_.assign(total(), 0.0);
    if (phase_one) {
      for (int j = n_ + m_; j < total(); ++j) cost_[j] = 1.0;
    } else {
      for (int j = 0; j < n_; ++j) cost_[j] = lp_.cost[j];
    }
    streak_ = 0;
  }

  void refactor() {
    etas_.clear();
    if (m_ == 0) return;
    std::vector<Eigen::Triplet<double>> trip;
    for (int r = 0; r < m_; ++r) {
      for_column(basis_[r], [&](int i, double v) { trip.emplace_back(i, r, v); });
    }
    Eigen::SparseMatrix<double> b(m_, m_);
    b.setFromTriplets(trip.begin(), trip.end());
    b.makeCompressed();
    lu_.compute(b);
    if (lu_.info() != Eigen::Success) {
      throw SolverError(fmt::format("singular basis at refactorization ({} rows)", m_));
    }
    // x_B = B^{-1} (-N x_N)
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int j = 0; j < total(); ++j) {
      if (state_[j] == State::Basic || x_[j] == 0.0) continue;
      for_column(j, [&](int i, double v) { rhs[i] -= v * x_[j]; });
    }
    Eigen::VectorXd xb = lu_.solve(rhs);
    for (int r = 0; r < m_; ++r) x_[basis_[r]] = xb[r];
  }

  void ftran(Eigen::VectorXd& v) const {
    v = lu_.solve(v);
    for (const Eta& e : etas_) {
      const double vr = v[e.pos] / e.pivot;
      if (vr != 0.0) {
        for (auto [i, a] : e.entries) v[i] -= a * vr;
      }
      v[e.pos] = vr;
    }
  }

  void btran(Eigen::VectorXd& v) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = v[it->pos];
      for (auto [i, a] : it->entries) s -= a * v[i];
      v[it->pos] = s / it->pivot;
    }
    v = lu_.transpose().solve(v);
  }

  double reduced_cost(int j, const Eigen::VectorXd& y) const {
    double d = cost_[j];
    for_column(j, [&](int i, double v) { d -= y[i] * v; });
    return d;
  }

  /// Entering column and direction (+1 increase, -1 decrease); -1 if optimal.
  std::pair<int, int> price(const Eigen::VectorXd& y) const {
    const double tol = opt_.optimality_tol;
    int best = -1;
    int dir = 0;
    double best_score = 0.0;
    for (int j = 0; j < total(); ++j) {
      const State s = state_[j];
      if (s == State::Basic || lo_[j] == up_[j]) continue;
      const double d = reduced_cost(j, y);
      int want = 0;
      if ((s == State::AtLower || s == State::Free) && d < -tol) want = 1;
      else if ((s == State::AtUpper || s == State::Free) && d > tol) want = -1;
      if (want == 0) continue;
      if (bland_) return {j, want};
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        best = j;
        dir = want;
      }
    }
    return {best, dir};
  }

  struct Step {
    int pos = -1;        // leaving basis position, -1 for a bound flip
    double theta = 0.0;
    bool unbounded = false;
  };

  Step ratio_test(int q, int dir, const Eigen::VectorXd& alpha) const {
    double max_alpha = 0.0;
    for (int r = 0; r < m_; ++r) max_alpha = std::max(max_alpha, std::abs(alpha[r]));
    const double piv_tol = opt_.pivot_tol * std::max(1.0, max_alpha);
    const double range = up_[q] - lo_[q];

    auto limit = [&](int r, double slack_tol) {
      const int j = basis_[r];
      const double rate = -dir * alpha[r];
      if (rate < 0.0) {
        if (!std::isfinite(lo_[j])) return kInfinity;
        return (x_[j] - lo_[j] + slack_tol) / -rate;
      }
      if (!std::isfinite(up_[j])) return kInfinity;
      return (up_[j] - x_[j] + slack_tol) / rate;
    };

    Step step;
    if (bland_) {
      double best = kInfinity;
      for (int r = 0; r < m_; ++r) {
        if (std::abs(alpha[r]) <= piv_tol) continue;
        double t = limit(r, 0.0);
        if (t < kDegenerateStep) t = 0.0;
        if (t < best - kDegenerateStep || (t <= best + kDegenerateStep && basis_[r] < basis_[step.pos])) {
          best = t;
          step.pos = r;
        }
      }
      if (std::isfinite(range) && range <= best) return {-1, range, false};
      if (step.pos < 0) return {-1, 0.0, true};
      step.theta = best;
      return step;
    }

    double theta_max = kInfinity;
    for (int r = 0; r < m_; ++r) {
      if (std::abs(alpha[r]) <= piv_tol) continue;
      theta_max = std::min(theta_max, limit(r, kHarrisTol));
    }
    if (std::isfinite(range) && range <= theta_max) return {-1, range, false};
    if (!std::isfinite(theta_max)) return {-1, 0.0, true};
    double best_alpha = 0.0;
    for (int r = 0; r < m_; ++r) {
      const double a = std::abs(alpha[r]);
      if (a <= piv_tol) continue;
      if (limit(r, 0.0) <= theta_max && a > best_alpha) {
        best_alpha = a;
        step.pos = r;
      }
    }
    step.theta = std::max(0.0, limit(step.pos, 0.0));
    return step;
  }

  LpStatus iterate(std::int64_t& iterations) {
    Eigen::VectorXd y(m_), alpha(m_);
    for (;;) {
      if (iterations >= opt_.iteration_limit) return LpStatus::IterationLimit;
      if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) refactor();

      for (int r = 0; r < m_; ++r) y[r] = cost_[basis_[r]];
      if (m_ > 0) btran(y);
      auto [q, dir] = price(y);
      if (q < 0) return LpStatus::Optimal;

      alpha.setZero();
      for_column(q, [&](int i, double v) { alpha[i] = v; });
      if (m_ > 0) ftran(alpha);

      const Step step = ratio_test(q, dir, alpha);
      if (step.unbounded) return LpStatus::Unbounded;
      ++iterations;

      const double theta = step.theta;
      if (theta != 0.0) {
        for (int r = 0; r < m_; ++r) {
          if (alpha[r] != 0.0) x_[basis_[r]] -= dir * theta * alpha[r];
        }
      }
      streak_ = theta <= kDegenerateStep ? streak_ + 1 : 0;
      bland_ = streak_ >= opt_.degenerate_streak;

      if (step.pos < 0) {
        state_[q] = dir > 0 ? State::AtUpper : State::AtLower;
        x_[q] = dir > 0 ? up_[q] : lo_[q];
        continue;
      }

      const int r = step.pos;
      const int leaving = basis_[r];
      const double rate = -dir * alpha[r];
      if (rate < 0.0) {
        state_[leaving] = State::AtLower;
        x_[leaving] = lo_[leaving];
      } else {
        state_[leaving] = State::AtUpper;
        x_[leaving] = up_[leaving];
      }
      x_[q] += dir * theta;
      state_[q] = State::Basic;
      basis_[r] = q;

      Eta eta{r, alpha[r], {}};
      for (int i = 0; i < m_; ++i) {
        if (i != r && alpha[i] != 0.0) eta.entries.emplace_back(i, alpha[i]);
      }
      etas_.push_back(std::move(eta));
    }
  }

  const LpProblem& lp_;
  const LpOptions& opt_;
  int m_, n_;
  std::vector<double> lo_, up_, x_, cost_;
  std::vector<State> state_;
  std::vector<int> basis_;
  std::vector<int> art_row_;
  std::vector<double> art_sign_;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
  int streak_ = 0;
  bool bland_ = false;
};

}  // namespace

LpResult solve_lp(const LpProblem& lp, const LpOptions& options) {
  Simplex simplex(lp, options);
  return simplex.run();
}

LpSolution solve_lp(const Model& m, const LpOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const LpProblem lp = LpProblem::from_model(m);
  LpResult r = solve_lp(lp, options);
  LpSolution out;
  out.status = r.status;
  out.objective = r.objective;
  out.values = std::move(r.x);
  out.iterations = r.iterations;
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace aggrenet
