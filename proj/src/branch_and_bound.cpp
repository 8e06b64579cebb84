#include <chrono>
#include <cmath>
#include <queue>

#include "aggrenet/solve.hpp"

namespace aggrenet {

std::string_view to_string(MipStatus s) {
  switch (s) {
    case MipStatus::Optimal: return "Optimal";
    case MipStatus::Feasible: return "Feasible";
    case MipStatus::Infeasible: return "Infeasible";
    case MipStatus::Limit: return "Limit";
  }
  return "Unknown";
}

namespace {

struct Node {
  double bound;
  std::int64_t id;
  std::vector<std::pair<int, double>> lower;  // branching overrides
  std::vector<std::pair<int, double>> upper;
};

struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

}  // namespace

MipSolution solve_mip(const Model& m, const MipOptions& opt) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed_s = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  const LpProblem base = LpProblem::from_model(m);
  std::vector<int> integers;
  for (int j = 0; j < m.variable_count(); ++j) {
    if (m.variable(j).integer) integers.push_back(j);
  }

  MipSolution sol;
  auto prune_level = [&] {
    return sol.incumbent - opt.gap_tol * std::max(1.0, std::abs(sol.incumbent));
  };

  auto solve_node = [&](const Node& node) {
    LpProblem lp = base;
    for (auto [j, v] : node.lower) lp.lower[j] = std::max(lp.lower[j], v);
    for (auto [j, v] : node.upper) lp.upper[j] = std::min(lp.upper[j], v);
    return solve_lp(lp, opt.lp);
  };

  /// Most fractional integer variable, ties by index; -1 if integral.
  auto branch_var = [&](const std::vector<double>& x) {
    int best = -1;
    double best_dist = opt.integrality_tol;
    for (int j : integers) {
      const double frac = x[j] - std::floor(x[j]);
      const double dist = std::min(frac, 1.0 - frac);
      if (dist > best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    return best;
  };

  auto try_incumbent = [&](const LpResult& r) {
    if (r.objective < sol.incumbent) {
      sol.incumbent = r.objective;
      sol.values = r.x;
      for (int j : integers) sol.values[j] = std::round(sol.values[j]);
    }
  };

  std::priority_queue<Node, std::vector<Node>, WorseNode> open;
  std::int64_t next_id = 0;
  bool root = true;
  bool limit_hit = false;
  double unresolved = kInfinity;
  open.push({-kInfinity, next_id++, {}, {}});

  while (!open.empty()) {
    if (sol.nodes >= opt.node_limit || elapsed_s() > opt.time_limit_s) {
      limit_hit = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (node.bound >= prune_level()) continue;

    ++sol.nodes;
    const LpResult r = solve_node(node);
    if (r.status == LpStatus::Unbounded && root) {
      sol.status = MipStatus::Limit;
      sol.wall_ms = elapsed_s() * 1e3;
      return sol;
    }
    if (r.status == LpStatus::IterationLimit) {
      limit_hit = true;
      unresolved = std::min(unresolved, node.bound);
      continue;
    }
    if (r.status != LpStatus::Optimal) {
      root = false;
      continue;
    }
    if (r.objective >= prune_level()) {
      root = false;
      continue;
    }
    const int j = branch_var(r.x);
    if (j < 0) {
      try_incumbent(r);
      root = false;
      continue;
    }

    if (root) {
      // Round every fractional integer up and re-solve for a first incumbent.
      Node rounded = node;
      for (int v : integers) {
        if (r.x[v] - std::floor(r.x[v]) > opt.integrality_tol) rounded.lower.emplace_back(v, std::ceil(r.x[v]));
      }
      const LpResult h = solve_node(rounded);
      if (h.status == LpStatus::Optimal && branch_var(h.x) < 0) try_incumbent(h);
      root = false;
    }

    Node down{r.objective, next_id++, node.lower, node.upper};
    down.upper.emplace_back(j, std::floor(r.x[j]));
    Node up{r.objective, next_id++, node.lower, node.upper};
    up.lower.emplace_back(j, std::ceil(r.x[j]));
    open.push(std::move(down));
    open.push(std::move(up));
  }

  double bound = std::min(sol.incumbent, unresolved);
  if (limit_hit) {
    while (!open.empty()) {
      bound = std::min(bound, open.top().bound);
      open.pop();
    }
  }
  sol.bound = bound;
  const bool has_incumbent = std::isfinite(sol.incumbent);
  if (has_incumbent) {
    sol.gap = (sol.incumbent - sol.bound) / std::max(std::abs(sol.incumbent), 1e-10);
    sol.status = (!limit_hit || sol.gap <= opt.gap_tol) ? MipStatus::Optimal : MipStatus::Feasible;
  } else {
    sol.status = limit_hit ? MipStatus::Limit : MipStatus::Infeasible;
  }
  sol.wall_ms = elapsed_s() * 1e3;
  return sol;
}

}  // namespace aggrenet
