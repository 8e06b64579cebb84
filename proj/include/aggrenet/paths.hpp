#pragma once

#include <optional>
#include <span>
#include <vector>

#include "aggrenet/instance.hpp"

namespace aggrenet {

/// Surrogate arc cost c + f/u, one entry per arc.
using ArcCostVector = std::vector<double>;

ArcCostVector surrogate_costs(const Instance& inst);

/// A loopless directed path. `nodes` has one more entry than `arcs`.
struct Path {
  std::vector<int> arcs;
  std::vector<int> nodes;
  double cost = 0.0;

  int origin() const { return nodes.front(); }
  int destination() const { return nodes.back(); }

  friend bool operator==(const Path& a, const Path& b) { return a.arcs == b.arcs; }
};

/// Total order used for ranking paths: cost first (equal within a relative
/// 1e-9), then lexicographic node sequence.
bool path_less(const Path& a, const Path& b);

/// Sum of `costs` along the arcs, accumulated front to back.
double path_cost(std::span<const double> costs, std::span<const int> arcs);

/// Cheapest loopless o→s path; among equal-cost paths the lexicographically
/// smallest node sequence. nullopt when s is unreachable.
std::optional<Path> shortest_path(const Instance& inst, std::span<const double> costs, int origin,
                                  int destination);

/// The `count` first loopless o→s paths under path_less (Yen-style deviation
/// search). Fewer when fewer exist; empty when count == 0.
/// Throws Unreachable when count >= 1 and no path exists.
std::vector<Path> k_shortest_paths(const Instance& inst, std::span<const double> costs,
                                   int origin, int destination, int count);

}  // namespace aggrenet
