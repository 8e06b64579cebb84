#pragma once

#include <string>
#include <vector>

#include "aggrenet/aggregation.hpp"
#include "aggrenet/analysis.hpp"
#include "aggrenet/instance.hpp"
#include "aggrenet/model.hpp"
#include "aggrenet/paths.hpp"
#include "aggrenet/solve.hpp"

namespace testing_support {

using namespace aggrenet;

// ---------------------------------------------------------------------------
// Small hand-made instances

/// 1 -> 2 with c=1, u=10, f=4 and one commodity of demand 5.
Instance single_arc();
/// 1 -> 2 with c=0, u=10, f=10 and two commodities of demand 2 and 3.
Instance two_commodity_arc();
/// 3 nodes, 3 arcs, 2 commodities.
Instance triangle();
/// 8 nodes, 10 arcs, 4 commodities all leaving node 1.
Instance star_tree();
/// o -> a -> s (cost 3) and o -> b -> s (cost 5).
Instance diamond();

/// An instance together with a hand-built aggregation and a named point.
struct Scenario {
  Instance inst;
  PartialAggregation pa;
  Assignment point;  // flow and design values, no gadget variables
};

/// Node i with in-arcs from 1 and 2 and out-arcs to 3 and 4; commodity k1
/// disaggregated on (1,i) and (i,3). `swapped` selects the mirrored flow.
Scenario labeling_scenario(bool swapped);
/// Node i where k1 is split on both in-arcs and k2 on (2,i) and both
/// out-arcs, carrying a flow that enters on {k3,k4} and leaves on {k2}.
Scenario gadget_scenario();
/// Node i where every commodity is split on (1,i) and (i,3) and aggregated
/// on (2,i) and (i,4); the point is PAi-feasible but not PAe-feasible.
Scenario pai_gap_scenario();

/// Node index of the gadget node in the scenarios above (0-based).
inline constexpr int kScenarioNode = 3;

// ---------------------------------------------------------------------------
// Corpora

/// Random instance whose DA relaxation is feasible. Bumps the seed until it is.
Instance feasible_instance(GeneratorParams params);

/// Generated instances with 5-10 nodes, densities 0.3-0.8, 3-15 commodities
/// and capacity ratios 0.35, 0.7 and 1.5. Weighted toward small sizes.
std::vector<Instance> hierarchy_corpus(int count);

/// Generated instances with at most 12 arcs.
std::vector<Instance> small_arc_corpus(int count);

/// Random digraphs with 3-8 nodes for path enumeration.
std::vector<Instance> path_corpus(int count);

// ---------------------------------------------------------------------------
// Independent oracles

/// Every simple o -> s path by depth-first search, sorted by cost (relative
/// 1e-9 ties) then node sequence.
std::vector<Path> enumerate_simple_paths(const Instance& inst, const std::vector<double>& costs,
                                         int origin, int destination);

/// Arc-flow model written row by row from the textbook disaggregated
/// formulation, independent of the aggregation machinery.
Model direct_da_model(const Instance& inst);

/// Optimal value of min c'x, A x = b, x >= 0 by enumerating basic solutions.
/// +inf when infeasible. Only for a handful of columns.
double vertex_enumeration_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                             const std::vector<double>& c);

/// Inner design-flow LP (open arcs only) by vertex enumeration.
double design_flow_by_vertices(const Instance& inst, const std::vector<char>& open);

/// Relative closeness, scaled by max(1, |b|).
bool near(double a, double b, double tol);

/// Every variable of `m`, valued from `point` or zero.
Assignment complete(const Model& m, const Assignment& point);

/// Solves the LP relaxation of `m` after fixing every variable named in
/// `fixed` to its value.
LpStatus solve_with_fixed(const Model& m, const Assignment& fixed);

}  // namespace testing_support
