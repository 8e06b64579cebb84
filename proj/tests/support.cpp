#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace testing_support {

namespace {

Arc arc(int tail, int head, double cost, double capacity, double fixed) {
  return Arc{tail - 1, head - 1, cost, capacity, fixed};
}

Commodity commodity(int origin, int destination, double demand) {
  return Commodity{origin - 1, destination - 1, demand};
}

/// Dispersion over every commodity of `inst` (one origin assumed) with the
/// given per-arc disaggregated sets.
PartialAggregation one_dispersion(const Instance& inst, std::vector<CommoditySet> split) {
  Dispersion d;
  d.origin = inst.commodity(0).origin;
  for (int k = 0; k < inst.commodity_count(); ++k) d.members.push_back(k);
  d.disaggregated = std::move(split);
  return PartialAggregation{{d}};
}

// Node layout shared by the scenarios: O, 1, 2, i, 3, 4.
constexpr int O = 1, N1 = 2, N2 = 3, NI = 4, N3 = 5, N4 = 6;

void put(Assignment& a, const Instance& inst, int tail, int head, const CommoditySet& group, double v) {
  a[flow_var_name(0, inst.arc(*inst.find_arc(tail - 1, head - 1)), group)] = v;
}

void open_all(Assignment& a, const Instance& inst) {
  for (const Arc& e : inst.arcs()) a[design_var_name(e)] = 1.0;
}

}  // namespace

Instance single_arc() { return Instance("single-arc", 2, {arc(1, 2, 1, 10, 4)}, {commodity(1, 2, 5)}); }

Instance two_commodity_arc() {
  return Instance("two-commodity-arc", 2, {arc(1, 2, 0, 10, 10)}, {commodity(1, 2, 2), commodity(1, 2, 3)});
}

Instance triangle() {
  return Instance("triangle", 3, {arc(1, 2, 1, 10, 5), arc(2, 3, 1, 10, 5), arc(1, 3, 3, 8, 4)},
                  {commodity(1, 3, 6), commodity(1, 2, 4)});
}

Instance star_tree() {
  std::vector<Arc> arcs;
  for (auto [i, j] : std::vector<std::pair<int, int>>{
           {1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 5}, {3, 6}, {5, 7}, {5, 8}, {7, 4}, {8, 6}}) {
    arcs.push_back(arc(i, j, 1, 20, 10));
  }
  return Instance("star-tree", 8, std::move(arcs),
                  {commodity(1, 4, 2), commodity(1, 6, 3), commodity(1, 7, 1), commodity(1, 8, 4)});
}

Instance diamond() {
  return Instance("diamond", 4, {arc(1, 2, 1, 10, 0), arc(2, 4, 2, 10, 0), arc(1, 3, 2, 10, 0), arc(3, 4, 3, 10, 0)},
                  {commodity(1, 4, 1)});
}

Scenario labeling_scenario(bool swapped) {
  Scenario s;
  s.inst = Instance(swapped ? "labeling-swapped" : "labeling", 6,
                    {arc(O, N1, 1, 10, 1), arc(N1, NI, 1, 10, 1), arc(N2, NI, 1, 10, 1), arc(NI, N3, 1, 10, 1),
                     arc(NI, N4, 1, 10, 1), arc(O, N3, 1, 10, 1), arc(O, N4, 1, 10, 1)},
                    {commodity(O, N3, 1), commodity(O, N3, 1), commodity(O, N4, 1)});
  std::vector<CommoditySet> split(s.inst.arc_count());
  split[1] = {0};
  split[3] = {0};
  s.pa = one_dispersion(s.inst, split);
  const CommoditySet all{0, 1, 2}, k1{0}, rest{1, 2};
  put(s.point, s.inst, O, N1, all, 1);
  put(s.point, s.inst, N1, NI, swapped ? rest : k1, 1);
  put(s.point, s.inst, NI, N3, swapped ? k1 : rest, 1);
  put(s.point, s.inst, O, N3, all, 1);
  put(s.point, s.inst, O, N4, all, 1);
  open_all(s.point, s.inst);
  return s;
}

Scenario gadget_scenario() {
  Scenario s;
  s.inst = Instance("gadget", 6,
                    {arc(O, N2, 1, 10, 1), arc(N1, NI, 1, 10, 1), arc(N2, NI, 1, 10, 1), arc(NI, N3, 1, 10, 1),
                     arc(NI, N4, 1, 10, 1), arc(O, N3, 1, 10, 1), arc(O, N4, 1, 10, 1)},
                    {commodity(O, N4, 1), commodity(O, N3, 1), commodity(O, N4, 1), commodity(O, N3, 1)});
  std::vector<CommoditySet> split(s.inst.arc_count());
  split[1] = {0};
  split[2] = {0, 1};
  split[3] = {1};
  split[4] = {1};
  s.pa = one_dispersion(s.inst, split);
  const CommoditySet all{0, 1, 2, 3};
  put(s.point, s.inst, O, N2, all, 1);
  put(s.point, s.inst, N2, NI, {2, 3}, 1);
  put(s.point, s.inst, NI, N3, {1}, 1);
  put(s.point, s.inst, O, N3, all, 1);
  put(s.point, s.inst, O, N4, all, 2);
  open_all(s.point, s.inst);
  return s;
}

Scenario pai_gap_scenario() {
  Scenario s;
  s.inst = Instance("pai-gap", 6,
                    {arc(O, N1, 1, 10, 1), arc(O, N2, 1, 10, 1), arc(N1, NI, 1, 10, 1), arc(N2, NI, 1, 10, 1),
                     arc(NI, N3, 1, 10, 1), arc(NI, N4, 1, 10, 1), arc(O, N4, 1, 10, 1)},
                    {commodity(O, N4, 1), commodity(O, N4, 1), commodity(O, N3, 1), commodity(O, N3, 1)});
  const CommoditySet all{0, 1, 2, 3};
  std::vector<CommoditySet> split(s.inst.arc_count());
  split[2] = all;
  split[4] = all;
  s.pa = one_dispersion(s.inst, split);
  put(s.point, s.inst, O, N1, all, 2);
  put(s.point, s.inst, O, N2, all, 1);
  put(s.point, s.inst, N1, NI, {0}, 1);
  put(s.point, s.inst, N1, NI, {1}, 1);
  put(s.point, s.inst, N2, NI, all, 1);
  put(s.point, s.inst, NI, N3, {2}, 1);
  put(s.point, s.inst, NI, N3, {3}, 1);
  put(s.point, s.inst, NI, N4, all, 1);
  put(s.point, s.inst, O, N4, all, 1);
  open_all(s.point, s.inst);
  return s;
}

Instance feasible_instance(GeneratorParams params) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Instance inst = generate_random(params);
    if (solve_lp(relax(build_da_model(inst))).status == LpStatus::Optimal) return inst;
    params.seed += 7919;
  }
  throw std::runtime_error("no feasible instance found");
}

std::vector<Instance> hierarchy_corpus(int count) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ratios[] = {0.35, 0.7, 1.5};
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) {
    GeneratorParams p;
    const bool large = i % 5 == 4;
    if (i == 0) {
      p.nodes = 10, p.arc_density = 0.8, p.commodities = 15;
    } else if (i == 1) {
      p.nodes = 5, p.arc_density = 0.3, p.commodities = 3;
    } else if (large) {
      p.nodes = 8 + static_cast<int>(rng() % 3);
      p.arc_density = 0.3 + 0.3 * unit(rng);
      p.commodities = 8 + static_cast<int>(rng() % 8);
    } else {
      p.nodes = 5 + static_cast<int>(rng() % 3);
      p.arc_density = 0.3 + 0.5 * unit(rng);
      p.commodities = 3 + static_cast<int>(rng() % 6);
    }
    p.capacity_ratio = ratios[i % 3];
    p.fixed_to_flow_ratio = 0.5 + 2.0 * unit(rng);
    p.seed = 1000 + i;
    out.push_back(feasible_instance(p));
  }
  return out;
}

std::vector<Instance> small_arc_corpus(int count) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double ratios[] = {0.35, 0.7, 1.5};
  std::vector<Instance> out;
  for (int i = 0; out.size() < static_cast<std::size_t>(count); ++i) {
    GeneratorParams p;
    p.nodes = 4 + static_cast<int>(rng() % 2);
    p.arc_density = p.nodes == 4 ? 0.5 + 0.5 * unit(rng) : 0.3 + 0.3 * unit(rng);
    p.commodities = 2 + static_cast<int>(rng() % 4);
    p.capacity_ratio = ratios[i % 3];
    p.fixed_to_flow_ratio = 1.0 + 3.0 * unit(rng);
    p.seed = 5000 + i;
    Instance inst = generate_random(p);
    if (inst.arc_count() > 12) continue;
    if (solve_lp(relax(build_da_model(inst))).status != LpStatus::Optimal) continue;
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<Instance> path_corpus(int count) {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) {
    GeneratorParams p;
    p.nodes = 3 + i % 6;
    p.arc_density = 0.3 + 0.7 * unit(rng);
    p.commodities = 1;
    p.seed = 300 + i;
    out.push_back(generate_random(p));
  }
  return out;
}

std::vector<Path> enumerate_simple_paths(const Instance& inst, const std::vector<double>& costs, int origin,
                                         int destination) {
  std::vector<Path> found;
  std::vector<char> visited(inst.node_count(), 0);
  Path current;
  current.nodes.push_back(origin);
  visited[origin] = 1;
  std::function<void(int)> dfs = [&](int node) {
    if (node == destination) {
      Path p = current;
      p.cost = 0.0;
      for (int a : p.arcs) p.cost += costs[a];
      found.push_back(std::move(p));
      return;
    }
    for (int a : inst.out_arcs(node)) {
      const int next = inst.arc(a).head;
      if (visited[next]) continue;
      visited[next] = 1;
      current.arcs.push_back(a);
      current.nodes.push_back(next);
      dfs(next);
      current.arcs.pop_back();
      current.nodes.pop_back();
      visited[next] = 0;
    }
  };
  dfs(origin);
  std::sort(found.begin(), found.end(), [](const Path& a, const Path& b) {
    const double scale = std::max({1.0, std::abs(a.cost), std::abs(b.cost)});
    if (std::abs(a.cost - b.cost) > 1e-9 * scale) return a.cost < b.cost;
    return a.nodes < b.nodes;
  });
  return found;
}

Model direct_da_model(const Instance& inst) {
  Model m("direct-da");
  const int na = inst.arc_count(), nk = inst.commodity_count();
  std::vector<std::vector<int>> x(nk, std::vector<int>(na));
  for (int k = 0; k < nk; ++k) {
    for (int a = 0; a < na; ++a) {
      Variable v;
      v.name = "flow_" + std::to_string(k) + "_" + std::to_string(a);
      v.objective = inst.arc(a).cost;
      v.kind = VarKind::Flow;
      x[k][a] = m.add_variable(v);
    }
  }
  std::vector<int> y(na);
  for (int a = 0; a < na; ++a) {
    Variable v;
    v.name = "open_" + std::to_string(a);
    v.upper = 1.0;
    v.integer = true;
    v.objective = inst.arc(a).fixed_cost;
    v.kind = VarKind::Design;
    y[a] = m.add_variable(v);
  }
  for (int k = 0; k < nk; ++k) {
    const Commodity& c = inst.commodity(k);
    for (int i = 0; i < inst.node_count(); ++i) {
      Constraint row;
      row.name = "balance_" + std::to_string(k) + "_" + std::to_string(i);
      row.sense = Sense::Equal;
      row.rhs = ((i == c.origin) - (i == c.destination)) * c.demand;
      row.row_class = RowClass::FlowConservation;
      for (int a = 0; a < na; ++a) {
        if (inst.arc(a).tail == i) row.terms.push_back({x[k][a], 1.0});
        if (inst.arc(a).head == i) row.terms.push_back({x[k][a], -1.0});
      }
      m.add_constraint(row);
    }
  }
  for (int a = 0; a < na; ++a) {
    Constraint row;
    row.name = "capacity_" + std::to_string(a);
    row.row_class = RowClass::Capacity;
    for (int k = 0; k < nk; ++k) row.terms.push_back({x[k][a], 1.0});
    row.terms.push_back({y[a], -inst.arc(a).capacity});
    m.add_constraint(row);
  }
  for (int k = 0; k < nk; ++k) {
    for (int a = 0; a < na; ++a) {
      Constraint row;
      row.name = "strong_" + std::to_string(k) + "_" + std::to_string(a);
      row.row_class = RowClass::StrongInequality;
      row.terms = {{x[k][a], 1.0}, {y[a], -inst.commodity(k).demand}};
      m.add_constraint(row);
    }
  }
  return m;
}

double vertex_enumeration_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                             const std::vector<double>& c) {
  const int m = static_cast<int>(a.size());
  const int n = static_cast<int>(c.size());
  if (m == 0) return 0.0;
  if (n == 0) {
    for (double v : b) {
      if (std::abs(v) > 1e-9) return std::numeric_limits<double>::infinity();
    }
    return 0.0;
  }
  Eigen::MatrixXd mat(m, n);
  Eigen::VectorXd rhs(m);
  for (int i = 0; i < m; ++i) {
    rhs[i] = b[i];
    for (int j = 0; j < n; ++j) mat(i, j) = a[i][j];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> full(mat);
  full.setThreshold(1e-10);
  const int r = static_cast<int>(full.rank());
  double best = std::numeric_limits<double>::infinity();
  if (r == 0) return rhs.norm() <= 1e-9 ? 0.0 : best;
  std::vector<int> pick(r);
  for (int i = 0; i < r; ++i) pick[i] = i;
  for (;;) {
    Eigen::MatrixXd sub(m, r);
    for (int t = 0; t < r; ++t) sub.col(t) = mat.col(pick[t]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
    qr.setThreshold(1e-10);
    if (qr.rank() == r) {
      const Eigen::VectorXd xs = qr.solve(rhs);
      if ((sub * xs - rhs).norm() <= 1e-8 * (1.0 + rhs.norm()) && xs.minCoeff() >= -1e-9) {
        double z = 0.0;
        for (int t = 0; t < r; ++t) z += c[pick[t]] * xs[t];
        best = std::min(best, z);
      }
    }
    int i = r - 1;
    while (i >= 0 && pick[i] == n - r + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int t = i + 1; t < r; ++t) pick[t] = pick[t - 1] + 1;
  }
  return best;
}

double design_flow_by_vertices(const Instance& inst, const std::vector<char>& open) {
  std::vector<int> arcs;
  for (int a = 0; a < inst.arc_count(); ++a) {
    if (open[a]) arcs.push_back(a);
  }
  const int nk = inst.commodity_count(), no = static_cast<int>(arcs.size());
  const int cols = nk * no + no;  // flows, then capacity slacks
  std::vector<std::vector<double>> a;
  std::vector<double> b, c(cols, 0.0);
  double fixed = 0.0;
  for (int t = 0; t < no; ++t) fixed += inst.arc(arcs[t]).fixed_cost;
  for (int k = 0; k < nk; ++k) {
    for (int t = 0; t < no; ++t) c[k * no + t] = inst.arc(arcs[t]).cost;
  }
  for (int k = 0; k < nk; ++k) {
    const Commodity& com = inst.commodity(k);
    for (int i = 0; i < inst.node_count(); ++i) {
      std::vector<double> row(cols, 0.0);
      for (int t = 0; t < no; ++t) {
        if (inst.arc(arcs[t]).tail == i) row[k * no + t] += 1.0;
        if (inst.arc(arcs[t]).head == i) row[k * no + t] -= 1.0;
      }
      a.push_back(row);
      b.push_back(((i == com.origin) - (i == com.destination)) * com.demand);
    }
  }
  for (int t = 0; t < no; ++t) {
    std::vector<double> row(cols, 0.0);
    for (int k = 0; k < nk; ++k) row[k * no + t] = 1.0;
    row[nk * no + t] = 1.0;
    a.push_back(row);
    b.push_back(inst.arc(arcs[t]).capacity);
  }
  return vertex_enumeration_lp(a, b, c) + fixed;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

Assignment complete(const Model& m, const Assignment& point) {
  Assignment out;
  for (const Variable& v : m.variables()) {
    auto it = point.find(v.name);
    out[v.name] = it == point.end() ? 0.0 : it->second;
  }
  return out;
}

LpStatus solve_with_fixed(const Model& m, const Assignment& fixed) {
  Model copy = relax(m);
  for (const auto& [name, value] : fixed) {
    if (auto j = copy.find_variable(name)) copy.set_bounds(*j, value, value);
  }
  return solve_lp(copy).status;
}

}  // namespace testing_support
