#include "aggrenet/aggregation.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "aggrenet/paths.hpp"

namespace aggrenet {

CommoditySet set_difference(const CommoditySet& a, const CommoditySet& b) {
  CommoditySet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool intersects(const CommoditySet& a, const CommoditySet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

bool contains(const CommoditySet& set, int k) {
  return std::binary_search(set.begin(), set.end(), k);
}

std::vector<int> Dispersion::destinations(const Instance& inst) const {
  std::set<int> out;
  for (int k : members) out.insert(inst.commodity(k).destination);
  return {out.begin(), out.end()};
}

std::vector<int> PartialAggregation::owner(int commodity_count) const {
  std::vector<int> out(commodity_count, -1);
  for (int b = 0; b < static_cast<int>(dispersions.size()); ++b) {
    for (int k : dispersions[b].members) {
      if (k >= 0 && k < commodity_count && out[k] < 0) out[k] = b;
    }
  }
  return out;
}

PartialAggregation build_da_aggregation(const Instance& inst) {
  PartialAggregation pa;
  pa.dispersions.reserve(inst.commodity_count());
  for (int k = 0; k < inst.commodity_count(); ++k) {
    Dispersion d;
    d.origin = inst.commodity(k).origin;
    d.members = {k};
    d.disaggregated.assign(inst.arc_count(), CommoditySet{k});
    pa.dispersions.push_back(std::move(d));
  }
  return pa;
}

PartialAggregation aggregation_from_critical_arcs(const Instance& inst,
                                                  const CriticalArcSets& critical) {
  std::map<int, CommoditySet> by_origin;
  for (int k = 0; k < inst.commodity_count(); ++k) {
    by_origin[inst.commodity(k).origin].push_back(k);
  }
  PartialAggregation pa;
  for (auto& [origin, members] : by_origin) {
    Dispersion d;
    d.origin = origin;
    d.members = members;
    d.disaggregated.assign(inst.arc_count(), {});
    for (int k : members) {
      for (int a : critical[k]) d.disaggregated[a].push_back(k);
    }
    pa.dispersions.push_back(std::move(d));
  }
  return pa;
}

PartialAggregation build_fa_aggregation(const Instance& inst) {
  return aggregation_from_critical_arcs(inst, CriticalArcSets(inst.commodity_count()));
}

CriticalArcSets ksp_critical_arcs(const Instance& inst, int paths_per_commodity) {
  CriticalArcSets critical(inst.commodity_count());
  if (paths_per_commodity <= 0) return critical;
  const ArcCostVector costs = surrogate_costs(inst);
  for (int k = 0; k < inst.commodity_count(); ++k) {
    const Commodity& c = inst.commodity(k);
    std::vector<Path> paths;
    try {
      paths = k_shortest_paths(inst, costs, c.origin, c.destination, paths_per_commodity);
    } catch (const Unreachable&) {
      throw Unreachable(c.origin, c.destination, k);
    }
    std::set<int> arcs;
    for (const Path& p : paths) arcs.insert(p.arcs.begin(), p.arcs.end());
    critical[k].assign(arcs.begin(), arcs.end());
  }
  return critical;
}

PartialAggregation build_ksp_aggregation(const Instance& inst, int paths_per_commodity) {
  return aggregation_from_critical_arcs(inst, ksp_critical_arcs(inst, paths_per_commodity));
}

CriticalArcSets critical_arcs_of(const PartialAggregation& pa, const Instance& inst) {
  CriticalArcSets critical(inst.commodity_count());
  for (const Dispersion& d : pa.dispersions) {
    for (int a = 0; a < static_cast<int>(d.disaggregated.size()); ++a) {
      for (int k : d.disaggregated[a]) {
        if (k >= 0 && k < inst.commodity_count()) critical[k].push_back(a);
      }
    }
  }
  return critical;
}

std::vector<CommoditySet> arc_groups(const Dispersion& d, int arc) {
  std::vector<CommoditySet> groups;
  CommoditySet agg = d.aggregated(arc);
  if (!agg.empty()) groups.push_back(std::move(agg));
  for (int k : d.disaggregated[arc]) groups.push_back({k});
  return groups;
}

GadgetSets gadget_sets(const Dispersion& d, const Instance& inst, int node) {
  GadgetSets g;
  std::set<int> incident;
  for (int a : inst.in_arcs(node)) incident.insert(d.disaggregated[a].begin(), d.disaggregated[a].end());
  for (int a : inst.out_arcs(node)) incident.insert(d.disaggregated[a].begin(), d.disaggregated[a].end());
  if (incident.empty()) return g;

  g.incident.assign(incident.begin(), incident.end());
  for (int k : g.incident) g.intermediate.push_back({k});
  CommoditySet rest = set_difference(d.members, g.incident);
  if (!rest.empty()) g.intermediate.push_back(std::move(rest));

  std::set<CommoditySet> in, out;
  for (int a : inst.in_arcs(node)) {
    CommoditySet agg = d.aggregated(a);
    if (!agg.empty()) in.insert(std::move(agg));
  }
  for (int a : inst.out_arcs(node)) {
    CommoditySet agg = d.aggregated(a);
    if (!agg.empty()) out.insert(std::move(agg));
  }
  g.inflow.assign(in.begin(), in.end());
  g.outflow.assign(out.begin(), out.end());
  return g;
}

std::string_view to_string(AggregationIssueKind kind) {
  switch (kind) {
    case AggregationIssueKind::WrongArcCount: return "WrongArcCount";
    case AggregationIssueKind::UnknownCommodity: return "UnknownCommodity";
    case AggregationIssueKind::MissingMembership: return "MissingMembership";
    case AggregationIssueKind::DuplicateMembership: return "DuplicateMembership";
    case AggregationIssueKind::MixedOrigin: return "MixedOrigin";
    case AggregationIssueKind::OriginMismatch: return "OriginMismatch";
    case AggregationIssueKind::NotSorted: return "NotSorted";
    case AggregationIssueKind::PartitionViolation: return "PartitionViolation";
    case AggregationIssueKind::EmptyDispersion: return "EmptyDispersion";
  }
  return "Unknown";
}

bool AggregationReport::has(AggregationIssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(),
                     [kind](const AggregationIssue& i) { return i.kind == kind; });
}

AggregationReport validate_aggregation(const PartialAggregation& pa, const Instance& inst) {
  AggregationReport report;
  auto add = [&report](AggregationIssueKind kind, std::string detail) {
    report.issues.push_back({kind, std::move(detail)});
  };
  const int n_k = inst.commodity_count();
  std::vector<int> seen(n_k, 0);

  for (int b = 0; b < static_cast<int>(pa.dispersions.size()); ++b) {
    const Dispersion& d = pa.dispersions[b];
    if (d.members.empty()) add(AggregationIssueKind::EmptyDispersion, fmt::format("dispersion {}", b + 1));
    if (!std::is_sorted(d.members.begin(), d.members.end()) ||
        std::adjacent_find(d.members.begin(), d.members.end()) != d.members.end()) {
      add(AggregationIssueKind::NotSorted, fmt::format("dispersion {} member list", b + 1));
    }
    std::set<int> member_origins;
    for (int k : d.members) {
      if (k < 0 || k >= n_k) {
        add(AggregationIssueKind::UnknownCommodity, fmt::format("dispersion {} lists commodity {}", b + 1, k + 1));
        continue;
      }
      ++seen[k];
      member_origins.insert(inst.commodity(k).origin);
    }
    if (member_origins.size() > 1) {
      add(AggregationIssueKind::MixedOrigin,
          fmt::format("dispersion {} mixes {} origins", b + 1, member_origins.size()));
    } else if (member_origins.size() == 1 && *member_origins.begin() != d.origin) {
      add(AggregationIssueKind::OriginMismatch,
          fmt::format("dispersion {} declares origin {} but members start at {}", b + 1,
                      d.origin + 1, *member_origins.begin() + 1));
    }
    if (static_cast<int>(d.disaggregated.size()) != inst.arc_count()) {
      add(AggregationIssueKind::WrongArcCount,
          fmt::format("dispersion {} has {} arc entries, instance has {} arcs", b + 1,
                      d.disaggregated.size(), inst.arc_count()));
      continue;
    }
    for (int a = 0; a < inst.arc_count(); ++a) {
      const CommoditySet& dis = d.disaggregated[a];
      const bool sorted = std::is_sorted(dis.begin(), dis.end()) &&
                          std::adjacent_find(dis.begin(), dis.end()) == dis.end();
      const bool subset = std::all_of(dis.begin(), dis.end(), [&](int k) { return contains(d.members, k); });
      if (!sorted || !subset) {
        add(AggregationIssueKind::PartitionViolation,
            fmt::format("dispersion {} arc ({},{}): disaggregated set is not a subset of the members",
                        b + 1, inst.arc(a).tail + 1, inst.arc(a).head + 1));
      }
    }
  }
  for (int k = 0; k < n_k; ++k) {
    if (seen[k] == 0) {
      add(AggregationIssueKind::MissingMembership, fmt::format("commodity {} is in no dispersion", k + 1));
    } else if (seen[k] > 1) {
      add(AggregationIssueKind::DuplicateMembership,
          fmt::format("commodity {} is in {} dispersions", k + 1, seen[k]));
    }
  }
  return report;
}

LayerNetworkSize layer_network_size(const PartialAggregation& pa, const Instance& inst) {
  LayerNetworkSize size;
  size.nodes = static_cast<long long>(pa.dispersions.size()) * inst.node_count();
  for (const Dispersion& d : pa.dispersions) {
    for (int a = 0; a < inst.arc_count(); ++a) {
      const long long dis = static_cast<long long>(d.disaggregated[a].size());
      size.arcs += dis + (dis < static_cast<long long>(d.members.size()) ? 1 : 0);
    }
  }
  return size;
}

}  // namespace aggrenet
