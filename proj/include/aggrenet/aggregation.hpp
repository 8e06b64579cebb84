#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aggrenet/instance.hpp"

namespace aggrenet {

/// Sorted, duplicate-free list of commodity indices.
using CommoditySet = std::vector<int>;

CommoditySet set_difference(const CommoditySet& a, const CommoditySet& b);
bool intersects(const CommoditySet& a, const CommoditySet& b);
bool contains(const CommoditySet& set, int k);

/// Same-origin commodity group with a per-arc split into an aggregated part
/// and individually routed (disaggregated) commodities.
struct Dispersion {
  int origin = 0;
  CommoditySet members;
  /// Per arc: the disaggregated subset D_b^ij (sorted).
  std::vector<CommoditySet> disaggregated;

  /// K_b^ij = members \ D_b^ij.
  CommoditySet aggregated(int arc) const { return set_difference(members, disaggregated[arc]); }
  /// Distinct destinations of the members, sorted.
  std::vector<int> destinations(const Instance& inst) const;

  friend bool operator==(const Dispersion&, const Dispersion&) = default;
};

struct PartialAggregation {
  std::vector<Dispersion> dispersions;

  /// Dispersion index of every commodity (-1 if uncovered). Assumes the
  /// aggregation is valid; the first containing dispersion wins otherwise.
  std::vector<int> owner(int commodity_count) const;

  friend bool operator==(const PartialAggregation&, const PartialAggregation&) = default;
};

/// Per-commodity critical arc sets A^k (sorted arc indices).
using CriticalArcSets = std::vector<std::vector<int>>;

PartialAggregation build_da_aggregation(const Instance& inst);
PartialAggregation build_fa_aggregation(const Instance& inst);

/// One dispersion per origin; commodity k is disaggregated on A^k.
PartialAggregation aggregation_from_critical_arcs(const Instance& inst,
                                                  const CriticalArcSets& critical);

/// A^k = arcs of the `paths_per_commodity` cheapest surrogate-cost paths.
CriticalArcSets ksp_critical_arcs(const Instance& inst, int paths_per_commodity);

/// K-shortest-path aggregation. K = 0 yields the full aggregation.
/// Throws Unreachable (with the commodity) if some destination is unreachable.
PartialAggregation build_ksp_aggregation(const Instance& inst, int paths_per_commodity);

/// Recovers A^k from an aggregation: the arcs on which k is disaggregated.
CriticalArcSets critical_arcs_of(const PartialAggregation& pa, const Instance& inst);

/// G_b^ij: the aggregated set (when nonempty) followed by one singleton per
/// disaggregated commodity in index order.
std::vector<CommoditySet> arc_groups(const Dispersion& d, int arc);

/// Node-gadget families for one (dispersion, node) pair. All four are empty
/// when no disaggregated arc touches the node, which means "no gadget".
struct GadgetSets {
  CommoditySet incident;                    // L_b^i
  std::vector<CommoditySet> intermediate;   // M_b^i
  std::vector<CommoditySet> inflow;         // distinct nonempty K_b^ji over incoming arcs
  std::vector<CommoditySet> outflow;        // distinct nonempty K_b^ij over outgoing arcs

  bool active() const { return !incident.empty(); }
};

GadgetSets gadget_sets(const Dispersion& d, const Instance& inst, int node);

enum class AggregationIssueKind {
  WrongArcCount,
  UnknownCommodity,
  MissingMembership,
  DuplicateMembership,
  MixedOrigin,
  OriginMismatch,
  NotSorted,
  PartitionViolation,
  EmptyDispersion,
};

std::string_view to_string(AggregationIssueKind kind);

struct AggregationIssue {
  AggregationIssueKind kind;
  std::string detail;
};

struct AggregationReport {
  std::vector<AggregationIssue> issues;
  bool ok() const { return issues.empty(); }
  bool has(AggregationIssueKind kind) const;
};

AggregationReport validate_aggregation(const PartialAggregation& pa, const Instance& inst);

/// Nodes and arcs of the layered network implied by an aggregation:
/// |B||N| nodes and the sum of |G_b^ij| arcs.
struct LayerNetworkSize {
  long long nodes = 0;
  long long arcs = 0;
};

LayerNetworkSize layer_network_size(const PartialAggregation& pa, const Instance& inst);

// ---------------------------------------------------------------------------
// Aggregation file: one record per line.
//   aggregation <|B|> <|K|>
//   dispersion <origin> <count> <k1> ... <kc>
//   critical <k> <count> <tail> <head> ...
// Nodes and commodities are 1-based.

std::string emit_aggregation(const PartialAggregation& pa, const Instance& inst);
PartialAggregation parse_aggregation(std::string_view text, const Instance& inst);

}  // namespace aggrenet
