#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aggrenet/instance.hpp"
#include "aggrenet/model.hpp"

namespace aggrenet {

/// min c'x  s.t.  row_lower <= A x <= row_upper,  lower <= x <= upper.
/// A is stored column-wise.
struct LpProblem {
  int rows = 0;
  int cols = 0;
  std::vector<int> col_start;  // size cols + 1
  std::vector<int> row_index;
  std::vector<double> value;
  std::vector<double> cost, lower, upper;
  std::vector<double> row_lower, row_upper;

  static LpProblem from_model(const Model& m);
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(LpStatus s);

struct LpOptions {
  double feasibility_tol = 1e-6;
  double optimality_tol = 1e-7;
  double pivot_tol = 1e-9;
  std::int64_t iteration_limit = 1'000'000;
  int degenerate_streak = 1000;  // switch to Bland's rule after this many
  int refactor_interval = 64;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::int64_t iterations = 0;
};

/// Bounded-variable primal simplex (two phases). Deterministic.
/// Throws SolverError on numerical breakdown.
LpResult solve_lp(const LpProblem& lp, const LpOptions& options = {});

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> values;  // aligned with the model's variables
  std::int64_t iterations = 0;
  double wall_ms = 0.0;
};

/// Solves the LP relaxation; integrality flags are ignored.
LpSolution solve_lp(const Model& m, const LpOptions& options = {});

enum class MipStatus { Optimal, Feasible, Infeasible, Limit };

std::string_view to_string(MipStatus s);

struct MipOptions {
  std::int64_t node_limit = 200'000;
  double time_limit_s = 300.0;
  double gap_tol = 1e-9;
  double integrality_tol = 1e-6;
  LpOptions lp;
};

struct MipSolution {
  MipStatus status = MipStatus::Infeasible;
  double incumbent = kInfinity;
  double bound = -kInfinity;
  double gap = kInfinity;
  std::int64_t nodes = 0;
  std::vector<double> values;
  double wall_ms = 0.0;
};

/// Best-bound branch and bound, branching on the most fractional integer
/// variable (ties by index).
MipSolution solve_mip(const Model& m, const MipOptions& options = {});

struct BruteForceResult {
  double value = kInfinity;            // +inf when no design pattern is feasible
  std::vector<char> open;              // best pattern
  std::int64_t patterns_solved = 0;    // inner LPs actually solved
};

/// Enumerates every y in {0,1}^|A| and solves the disaggregated flow LP
/// with y fixed. Throws TooLarge when |A| > arc_limit.
BruteForceResult brute_force_mip(const Instance& inst, int arc_limit = 14);

/// The inner problem: disaggregated flow LP over the open arcs. Columns are
/// x[k * |A| + a]; closed arcs are bounded to zero.
LpProblem design_flow_lp(const Instance& inst, const std::vector<char>& open);

enum class ViolationType { Row, LowerBound, UpperBound, Integrality };

struct Violation {
  ViolationType type;
  std::string name;  // row or variable
  double amount;     // positive magnitude
};

/// Every violated row, bound and integrality requirement beyond `tol`.
/// Throws MissingVariable if the assignment lacks a model variable.
std::vector<Violation> check_solution(const Model& m, const Assignment& a, double tol = kFeasibilityTolerance);

}  // namespace aggrenet
