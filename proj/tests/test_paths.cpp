#include <gtest/gtest.h>

#include "support.hpp"

using namespace aggrenet;
namespace ts = testing_support;

namespace {

std::vector<double> integer_costs(const Instance& inst) {
  std::vector<double> c;
  for (const Arc& a : inst.arcs()) c.push_back(a.cost);
  return c;
}

void expect_same_paths(const std::vector<Path>& got, const std::vector<Path>& want, std::size_t count) {
  const std::size_t n = std::min(count, want.size());
  ASSERT_EQ(got.size(), n);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_EQ(got[i].arcs, want[i].arcs) << "rank " << i;
    EXPECT_EQ(got[i].nodes, want[i].nodes) << "rank " << i;
    EXPECT_NEAR(got[i].cost, want[i].cost, 1e-9);
  }
}

}  // namespace

TEST(SurrogateCost, Arithmetic) {
  const Instance inst("s", 3, {{0, 1, 1, 10, 4}, {1, 2, 2, 5, 0}, {0, 2, 0, 10, 10}}, {{0, 2, 1}});
  const ArcCostVector c = surrogate_costs(inst);
  EXPECT_DOUBLE_EQ(c[0], 1.4);
  EXPECT_DOUBLE_EQ(c[1], 2.0);
  EXPECT_DOUBLE_EQ(c[2], 1.0);
}

TEST(ShortestPath, SingleArc) {
  const Instance inst = ts::single_arc();
  const auto p = shortest_path(inst, surrogate_costs(inst), 0, 1);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->arcs, std::vector<int>{0});
  EXPECT_EQ(p->origin(), 0);
  EXPECT_EQ(p->destination(), 1);
}

TEST(ShortestPath, NoOutgoingArcs) {
  const Instance inst = ts::single_arc();
  EXPECT_FALSE(shortest_path(inst, surrogate_costs(inst), 1, 0).has_value());
  EXPECT_THROW(k_shortest_paths(inst, surrogate_costs(inst), 1, 0, 1), Unreachable);
  EXPECT_TRUE(k_shortest_paths(inst, surrogate_costs(inst), 1, 0, 0).empty());
}

TEST(ShortestPath, MatchesEnumerationOnRandomGraphs) {
  for (const Instance& inst : ts::path_corpus(12)) {
    const auto costs = surrogate_costs(inst);
    for (int o = 0; o < inst.node_count(); ++o) {
      for (int s = 0; s < inst.node_count(); ++s) {
        if (o == s) continue;
        const auto all = ts::enumerate_simple_paths(inst, costs, o, s);
        const auto p = shortest_path(inst, costs, o, s);
        ASSERT_EQ(p.has_value(), !all.empty());
        if (p) {
          EXPECT_EQ(p->nodes, all.front().nodes);
          EXPECT_NEAR(p->cost, all.front().cost, 1e-9);
        }
      }
    }
  }
}

TEST(KShortestPaths, DiamondInOrder) {
  const Instance inst = ts::diamond();
  const auto paths = k_shortest_paths(inst, surrogate_costs(inst), 0, 3, 2);
  ASSERT_EQ(paths.size(), 2u);
  EXPECT_DOUBLE_EQ(paths[0].cost, 3.0);
  EXPECT_DOUBLE_EQ(paths[1].cost, 5.0);
  EXPECT_EQ(paths[0].nodes, (std::vector<int>{0, 1, 3}));
  EXPECT_EQ(paths[1].nodes, (std::vector<int>{0, 2, 3}));
}

TEST(KShortestPaths, FirstIsShortest) {
  const Instance inst = ts::star_tree();
  const auto costs = surrogate_costs(inst);
  const auto one = k_shortest_paths(inst, costs, 0, 5, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.front(), *shortest_path(inst, costs, 0, 5));
}

TEST(KShortestPaths, MoreThanExistReturnsAll) {
  const Instance inst = ts::diamond();
  const auto paths = k_shortest_paths(inst, surrogate_costs(inst), 0, 3, 10);
  expect_same_paths(paths, ts::enumerate_simple_paths(inst, surrogate_costs(inst), 0, 3), 10);
}

TEST(KShortestPaths, PropertiesOnRandomGraphs) {
  for (const Instance& inst : ts::path_corpus(12)) {
    const auto costs = surrogate_costs(inst);
    for (const Commodity& c : inst.commodities()) {
      const auto paths = k_shortest_paths(inst, costs, c.origin, c.destination, 6);
      for (std::size_t i = 0; i < paths.size(); ++i) {
        const Path& p = paths[i];
        EXPECT_NEAR(p.cost, path_cost(costs, p.arcs), 1e-12);
        std::vector<int> sorted = p.nodes;
        std::sort(sorted.begin(), sorted.end());
        EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end()) << "repeated node";
        for (std::size_t t = 0; t < p.arcs.size(); ++t) {
          EXPECT_EQ(inst.arc(p.arcs[t]).tail, p.nodes[t]);
          EXPECT_EQ(inst.arc(p.arcs[t]).head, p.nodes[t + 1]);
        }
        if (i > 0) {
          EXPECT_LE(paths[i - 1].cost, p.cost + 1e-9);
          EXPECT_NE(paths[i - 1].arcs, p.arcs);
        }
      }
    }
  }
}

TEST(KShortestPaths, IntegerCostTiesFollowNodeOrder) {
  for (const Instance& inst : ts::path_corpus(12)) {
    const auto costs = integer_costs(inst);
    for (int o = 0; o < inst.node_count(); ++o) {
      for (int s = 0; s < inst.node_count(); ++s) {
        if (o == s) continue;
        const auto all = ts::enumerate_simple_paths(inst, costs, o, s);
        if (all.empty()) continue;
        const int k = static_cast<int>(all.size()) + 1;
        expect_same_paths(k_shortest_paths(inst, costs, o, s, k), all, all.size());
      }
    }
  }
}

TEST(PathOrder, CostThenNodes) {
  Path a{{0}, {0, 2}, 1.0}, b{{1, 2}, {0, 1, 2}, 1.0}, c{{3}, {0, 3}, 0.5};
  EXPECT_TRUE(path_less(b, a));
  EXPECT_FALSE(path_less(a, b));
  EXPECT_TRUE(path_less(c, a));
}
