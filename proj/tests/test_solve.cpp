#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace aggrenet;
namespace ts = testing_support;

namespace {

// min c'x, A x = b, x >= 0 as a model.
Model equality_model(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                     const std::vector<double>& c) {
  Model m("eq");
  for (std::size_t j = 0; j < c.size(); ++j) m.add_variable({"x" + std::to_string(j), 0.0, kInfinity, false, c[j]});
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < c.size(); ++j) terms.push_back({static_cast<int>(j), a[i][j]});
    m.add_constraint({"r" + std::to_string(i), Sense::Equal, b[i], std::move(terms)});
  }
  return m;
}

}  // namespace

TEST(Lp, SingleArcDa) {
  const LpSolution s = solve_lp(relax(build_da_model(ts::single_arc())));
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.objective, 9.0, 1e-9);
}

TEST(Lp, SingleArcWithoutSiIsWeaker) {
  // Capacity alone lets y = 1/2.
  Model m = relax(build_da_model(ts::single_arc()));
  Model weak("weak");
  for (const Variable& v : m.variables()) weak.add_variable(v);
  for (const Constraint& r : m.constraints()) {
    if (r.row_class != RowClass::StrongInequality) weak.add_constraint(r);
  }
  EXPECT_NEAR(solve_lp(weak).objective, 7.0, 1e-9);
}

TEST(Lp, TwoCommodityArc) {
  const Instance inst = ts::two_commodity_arc();
  EXPECT_NEAR(solve_lp(relax(build_da_model(inst))).objective, 10.0, 1e-9);
  EXPECT_NEAR(solve_lp(relax(build_fa_model(inst))).objective, 10.0, 1e-9);
}

TEST(Lp, DemandAboveCapacityIsInfeasible) {
  const Instance inst("over", 2, {{0, 1, 1, 10, 4}}, {{0, 1, 15}});
  EXPECT_EQ(solve_lp(relax(build_da_model(inst))).status, LpStatus::Infeasible);
  EXPECT_EQ(solve_mip(build_da_model(inst)).status, MipStatus::Infeasible);
  EXPECT_TRUE(std::isinf(brute_force_mip(inst).value));
}

TEST(Lp, Unbounded) {
  Model m("u");
  m.add_variable({"x", 0.0, kInfinity, false, -1.0});
  m.add_variable({"y", 0.0, kInfinity, false, 0.0});
  m.add_constraint({"r", Sense::LessEqual, 1.0, {{0, 1.0}, {1, -1.0}}});
  EXPECT_EQ(solve_lp(m).status, LpStatus::Unbounded);
}

TEST(Lp, BoundsAndRanges) {
  Model m("b");
  m.add_variable({"x", -2.0, 3.0, false, 1.0});
  m.add_variable({"y", -kInfinity, kInfinity, false, -1.0});
  m.add_constraint({"r", Sense::LessEqual, 4.0, {{0, -1.0}, {1, 1.0}}});
  const LpSolution s = solve_lp(m);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.objective, -4.0, 1e-9);
  EXPECT_TRUE(check_solution(m, [&] {
                Assignment a;
                for (int j = 0; j < m.variable_count(); ++j) a[m.variable(j).name] = s.values[j];
                return a;
              }()).empty());
}

TEST(Lp, MatchesVertexEnumeration) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-3.0, 3.0), cost(0.0, 5.0);
  int optimal = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 2 + trial % 3, cols = rows + 2 + trial % 3;
    std::vector<std::vector<double>> a(rows, std::vector<double>(cols));
    std::vector<double> b(rows), c(cols);
    std::vector<double> x0(cols);
    for (double& v : x0) v = std::max(0.0, coef(rng));
    for (int i = 0; i < rows; ++i) {
      b[i] = 0.0;
      for (int j = 0; j < cols; ++j) {
        a[i][j] = std::round(coef(rng));
        b[i] += a[i][j] * x0[j];
      }
    }
    for (double& v : c) v = std::round(cost(rng));
    const double want = ts::vertex_enumeration_lp(a, b, c);
    const LpSolution got = solve_lp(equality_model(a, b, c));
    ASSERT_EQ(got.status, LpStatus::Optimal) << trial;
    EXPECT_TRUE(ts::near(got.objective, want, 1e-7)) << trial << ": " << got.objective << " vs " << want;
    ++optimal;
  }
  EXPECT_EQ(optimal, 200);
}

TEST(Lp, Deterministic) {
  const Instance inst = ts::hierarchy_corpus(2)[1];
  const Model m = relax(build_model(inst, build_ksp_aggregation(inst, 2), Variant::PAe));
  const LpSolution a = solve_lp(m), b = solve_lp(m);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Lp, IterationLimit) {
  const Instance inst = ts::hierarchy_corpus(1)[0];
  LpOptions o;
  o.iteration_limit = 3;
  EXPECT_EQ(solve_lp(relax(build_da_model(inst)), o).status, LpStatus::IterationLimit);
}

TEST(DesignFlowLp, MatchesVertexEnumeration) {
  for (const Instance& inst : {ts::single_arc(), ts::two_commodity_arc(), ts::triangle(), ts::diamond()}) {
    const int n = inst.arc_count();
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<char> open(n);
      double fixed = 0.0;
      for (int a = 0; a < n; ++a) {
        open[a] = (mask >> a) & 1;
        if (open[a]) fixed += inst.arc(a).fixed_cost;
      }
      const LpResult r = solve_lp(design_flow_lp(inst, open));
      const double want = ts::design_flow_by_vertices(inst, open);
      if (std::isinf(want)) {
        EXPECT_EQ(r.status, LpStatus::Infeasible);
      } else {
        ASSERT_EQ(r.status, LpStatus::Optimal);
        EXPECT_TRUE(ts::near(r.objective + fixed, want, 1e-9)) << inst.name() << " mask " << mask;
      }
    }
  }
}

TEST(BruteForce, ClosedForms) {
  EXPECT_NEAR(brute_force_mip(ts::single_arc()).value, 9.0, 1e-9);
  EXPECT_NEAR(brute_force_mip(ts::two_commodity_arc()).value, 10.0, 1e-9);
  // Triangle: 1->2 and 2->3 cost 10 + 12 + 4 = 26; 1->3 and 1->2 cost 9 + 18 + 4 = 31.
  const BruteForceResult t = brute_force_mip(ts::triangle());
  EXPECT_NEAR(t.value, 26.0, 1e-9);
  EXPECT_EQ(t.open, (std::vector<char>{1, 1, 0}));
}

TEST(BruteForce, MatchesVertexEnumerationOnTinyInstances) {
  for (const Instance& inst : {ts::single_arc(), ts::two_commodity_arc(), ts::triangle(), ts::diamond()}) {
    double best = kInfinity;
    const int n = inst.arc_count();
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<char> open(n);
      for (int a = 0; a < n; ++a) open[a] = (mask >> a) & 1;
      best = std::min(best, ts::design_flow_by_vertices(inst, open));
    }
    EXPECT_TRUE(ts::near(brute_force_mip(inst).value, best, 1e-9));
  }
}

TEST(BruteForce, TooLarge) {
  const Instance inst = ts::star_tree();
  EXPECT_THROW(brute_force_mip(inst, 8), TooLarge);
}

TEST(BruteForce, CountsOnlyUsefulPatterns) {
  const BruteForceResult r = brute_force_mip(ts::diamond());
  EXPECT_GT(r.patterns_solved, 0);
  EXPECT_LE(r.patterns_solved, 16);
  EXPECT_NEAR(r.value, 3.0, 1e-9);
}

TEST(Mip, SingleArc) {
  const MipSolution s = solve_mip(build_da_model(ts::single_arc()));
  ASSERT_EQ(s.status, MipStatus::Optimal);
  EXPECT_NEAR(s.incumbent, 9.0, 1e-9);
  EXPECT_LE(s.gap, 1e-9);
}

TEST(Mip, AllFormulationsMatchBruteForce) {
  for (const Instance& inst : ts::small_arc_corpus(8)) {
    const double want = brute_force_mip(inst).value;
    for (Formulation f : {Formulation::DA, Formulation::FA, Formulation::PA, Formulation::PAi, Formulation::PAe}) {
      const MipSolution s = solve_mip(build_formulation(inst, f, 2));
      if (std::isinf(want)) {
        EXPECT_EQ(s.status, MipStatus::Infeasible);
        continue;
      }
      ASSERT_EQ(s.status, MipStatus::Optimal) << inst.name() << " " << to_string(f);
      EXPECT_TRUE(ts::near(s.incumbent, want, 1e-6)) << inst.name() << " " << to_string(f);
    }
  }
}

TEST(Mip, IncumbentPassesChecker) {
  for (const Instance& inst : ts::small_arc_corpus(4)) {
    const Model m = build_formulation(inst, Formulation::PAe, 1);
    const MipSolution s = solve_mip(m);
    if (s.status != MipStatus::Optimal) continue;
    Assignment a;
    for (int j = 0; j < m.variable_count(); ++j) a[m.variable(j).name] = s.values[j];
    EXPECT_TRUE(check_solution(m, a).empty());
    EXPECT_NEAR(objective_value(m, a), s.incumbent, 1e-6);
  }
}

TEST(Mip, NodeLimit) {
  const Instance inst = ts::hierarchy_corpus(1)[0];
  MipOptions o;
  o.node_limit = 1;
  const MipSolution s = solve_mip(build_da_model(inst), o);
  EXPECT_TRUE(s.status == MipStatus::Limit || s.status == MipStatus::Feasible || s.status == MipStatus::Optimal);
  EXPECT_LE(s.nodes, 1);
}

TEST(Checker, ReportsEachViolationType) {
  const Model m = build_da_model(ts::single_arc());
  Assignment ok{{"x_b1_a1_2_g1", 5.0}, {"y_a1_2", 1.0}};
  EXPECT_TRUE(check_solution(m, ok).empty());

  Assignment frac = ok;
  frac["y_a1_2"] = 0.5;
  bool saw_int = false, saw_row = false;
  for (const Violation& v : check_solution(m, frac)) {
    saw_int |= v.type == ViolationType::Integrality && v.name == "y_a1_2";
    saw_row |= v.type == ViolationType::Row && v.name == "si_b1_a1_2_g1";
  }
  EXPECT_TRUE(saw_int);
  EXPECT_TRUE(saw_row);

  Assignment high = ok;
  high["y_a1_2"] = 2.0;
  const auto hv = check_solution(m, high);
  ASSERT_EQ(hv.size(), 1u);
  EXPECT_EQ(hv[0].type, ViolationType::UpperBound);
  EXPECT_NEAR(hv[0].amount, 1.0, 1e-12);

  Assignment neg{{"x_b1_a1_2_g1", -1.0}, {"y_a1_2", 1.0}};
  bool saw_lower = false;
  for (const Violation& v : check_solution(m, neg)) saw_lower |= v.type == ViolationType::LowerBound;
  EXPECT_TRUE(saw_lower);

  EXPECT_THROW(check_solution(m, Assignment{{"y_a1_2", 1.0}}), MissingVariable);
}

TEST(Checker, ToleranceRespected) {
  const Model m = relax(build_da_model(ts::single_arc()));
  Assignment a{{"x_b1_a1_2_g1", 5.0 + 1e-8}, {"y_a1_2", 1.0}};
  EXPECT_TRUE(check_solution(m, a, 1e-6).empty());
  EXPECT_FALSE(check_solution(m, a, 1e-10).empty());
}
