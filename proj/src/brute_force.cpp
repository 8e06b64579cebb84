#include <cmath>

#include <fmt/format.h>

#include "aggrenet/solve.hpp"

namespace aggrenet {

LpProblem design_flow_lp(const Instance& inst, const std::vector<char>& open) {
  const int n = inst.node_count();
  const int m = inst.arc_count();
  const int nk = inst.commodity_count();
  LpProblem lp;
  lp.rows = nk * n + m;
  lp.cols = nk * m;
  lp.col_start.push_back(0);
  for (int k = 0; k < nk; ++k) {
    const Commodity& c = inst.commodity(k);
    for (int a = 0; a < m; ++a) {
      const Arc& arc = inst.arc(a);
      lp.row_index.push_back(k * n + arc.tail);
      lp.value.push_back(1.0);
      lp.row_index.push_back(k * n + arc.head);
      lp.value.push_back(-1.0);
      lp.row_index.push_back(nk * n + a);
      lp.value.push_back(1.0);
      lp.col_start.push_back(static_cast<int>(lp.row_index.size()));
      lp.cost.push_back(arc.cost);
      lp.lower.push_back(0.0);
      lp.upper.push_back(open[a] ? c.demand : 0.0);
    }
  }
  for (int k = 0; k < nk; ++k) {
    const Commodity& c = inst.commodity(k);
    for (int i = 0; i < n; ++i) {
      double rhs = 0.0;
      if (i == c.origin) rhs += c.demand;
      if (i == c.destination) rhs -= c.demand;
      lp.row_lower.push_back(rhs);
      lp.row_upper.push_back(rhs);
    }
  }
  for (int a = 0; a < m; ++a) {
    lp.row_lower.push_back(-kInfinity);
    lp.row_upper.push_back(inst.arc(a).capacity);
  }
  return lp;
}

namespace {

bool routes_all(const Instance& inst, const std::vector<char>& open) {
  const int n = inst.node_count();
  std::vector<int> mark(n, -1);
  std::vector<int> stack;
  int stamp = 0;
  int last_origin = -1;
  for (const Commodity& c : inst.commodities()) {
    if (c.origin != last_origin) {
      ++stamp;
      last_origin = c.origin;
      stack.assign(1, c.origin);
      mark[c.origin] = stamp;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int a : inst.out_arcs(v)) {
          const int w = inst.arc(a).head;
          if (open[a] && mark[w] != stamp) {
            mark[w] = stamp;
            stack.push_back(w);
          }
        }
      }
    }
    if (mark[c.destination] != stamp) return false;
  }
  return true;
}

}  // namespace

BruteForceResult brute_force_mip(const Instance& inst, int arc_limit) {
  const int m = inst.arc_count();
  if (m > arc_limit) {
    throw TooLarge(fmt::format("brute force over {} arcs exceeds the limit of {}", m, arc_limit));
  }
  BruteForceResult best;
  std::vector<char> open(m, 1);
  LpProblem lp = design_flow_lp(inst, open);
  const LpResult relaxed = solve_lp(lp);
  if (relaxed.status != LpStatus::Optimal) return best;
  const double flow_floor = relaxed.objective;

  const std::uint64_t patterns = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double fixed = 0.0;
    for (int a = 0; a < m; ++a) {
      open[a] = static_cast<char>((mask >> a) & 1U);
      if (open[a]) fixed += inst.arc(a).fixed_cost;
    }
    if (fixed + flow_floor >= best.value) continue;
    if (!routes_all(inst, open)) continue;
    for (int k = 0; k < inst.commodity_count(); ++k) {
      for (int a = 0; a < m; ++a) lp.upper[k * m + a] = open[a] ? inst.commodity(k).demand : 0.0;
    }
    const LpResult r = solve_lp(lp);
    ++best.patterns_solved;
    if (r.status != LpStatus::Optimal) continue;
    if (fixed + r.objective < best.value) {
      best.value = fixed + r.objective;
      best.open = open;
    }
  }
  return best;
}

}  // namespace aggrenet
