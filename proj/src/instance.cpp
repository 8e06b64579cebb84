#include "aggrenet/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <fmt/format.h>

namespace aggrenet {

Instance::Instance(std::string name, int node_count, std::vector<Arc> arcs,
                   std::vector<Commodity> commodities)
    : name_(std::move(name)),
      node_count_(node_count),
      arcs_(std::move(arcs)),
      commodities_(std::move(commodities)) {
  adjacency_.successors.assign(std::max(node_count_, 0), {});
  adjacency_.predecessors.assign(std::max(node_count_, 0), {});
  for (int a = 0; a < arc_count(); ++a) {
    const Arc& arc = arcs_[a];
    if (arc.tail < 0 || arc.tail >= node_count_ || arc.head < 0 || arc.head >= node_count_) {
      continue;
    }
    adjacency_.successors[arc.tail].push_back(a);
    adjacency_.predecessors[arc.head].push_back(a);
    arc_lookup_.emplace_back(static_cast<std::int64_t>(arc.tail) * node_count_ + arc.head, a);
  }
  std::stable_sort(arc_lookup_.begin(), arc_lookup_.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
}

std::optional<int> Instance::find_arc(int tail, int head) const {
  const std::int64_t key = static_cast<std::int64_t>(tail) * node_count_ + head;
  auto it = std::lower_bound(arc_lookup_.begin(), arc_lookup_.end(), key,
                             [](const auto& entry, std::int64_t k) { return entry.first < k; });
  if (it == arc_lookup_.end() || it->first != key) return std::nullopt;
  return it->second;
}

std::vector<int> Instance::origins() const {
  std::set<int> seen;
  for (const Commodity& k : commodities_) seen.insert(k.origin);
  return {seen.begin(), seen.end()};
}

double Instance::total_demand() const {
  return std::accumulate(commodities_.begin(), commodities_.end(), 0.0,
                         [](double acc, const Commodity& k) { return acc + k.demand; });
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::NodeOutOfRange: return "NodeOutOfRange";
    case ViolationKind::SelfLoop: return "SelfLoop";
    case ViolationKind::DuplicateArc: return "DuplicateArc";
    case ViolationKind::NegativeCost: return "NegativeCost";
    case ViolationKind::NegativeFixedCost: return "NegativeFixedCost";
    case ViolationKind::NonPositiveCapacity: return "NonPositiveCapacity";
    case ViolationKind::NonPositiveDemand: return "NonPositiveDemand";
    case ViolationKind::SameOriginDestination: return "SameOriginDestination";
    case ViolationKind::EmptyGraph: return "EmptyGraph";
  }
  return "Unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const InstanceViolation& v) { return v.kind == kind; });
}

ValidationReport validate(const Instance& inst) {
  ValidationReport report;
  auto add = [&report](ViolationKind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };
  const int n = inst.node_count();
  if (n <= 0) add(ViolationKind::EmptyGraph, "instance has no nodes");
  auto in_range = [n](int v) { return v >= 0 && v < n; };

  std::set<std::pair<int, int>> seen;
  for (int a = 0; a < inst.arc_count(); ++a) {
    const Arc& arc = inst.arc(a);
    const std::string where = fmt::format("arc {} ({},{})", a + 1, arc.tail + 1, arc.head + 1);
    if (!in_range(arc.tail) || !in_range(arc.head)) {
      add(ViolationKind::NodeOutOfRange, where);
      continue;
    }
    if (arc.tail == arc.head) add(ViolationKind::SelfLoop, where);
    if (!seen.emplace(arc.tail, arc.head).second) add(ViolationKind::DuplicateArc, where);
    if (!(arc.cost >= 0.0)) add(ViolationKind::NegativeCost, where);
    if (!(arc.fixed_cost >= 0.0)) add(ViolationKind::NegativeFixedCost, where);
    if (!(arc.capacity > 0.0)) add(ViolationKind::NonPositiveCapacity, where);
  }
  for (int k = 0; k < inst.commodity_count(); ++k) {
    const Commodity& c = inst.commodity(k);
    const std::string where =
        fmt::format("commodity {} ({}->{})", k + 1, c.origin + 1, c.destination + 1);
    if (!in_range(c.origin) || !in_range(c.destination)) {
      add(ViolationKind::NodeOutOfRange, where);
      continue;
    }
    if (c.origin == c.destination) add(ViolationKind::SameOriginDestination, where);
    if (!(c.demand > 0.0)) add(ViolationKind::NonPositiveDemand, where);
  }
  report.origin_count = static_cast<int>(inst.origins().size());
  return report;
}

}  // namespace aggrenet
