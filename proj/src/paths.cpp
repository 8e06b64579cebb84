#include "aggrenet/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

namespace aggrenet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Shortest path from `from` to `to` avoiding banned arcs and nodes, with
/// lexicographic tie-breaking on the node sequence. Distances to `to` are
/// computed first; a path is shortest iff every arc on it is tight, so the
/// lexicographically smallest shortest path is found by walking tight arcs in
/// increasing head order, keeping only heads that can still finish the path.
std::optional<Path> restricted_shortest(const Instance& inst, std::span<const double> costs,
                                        int from, int to, const std::vector<char>& banned_arc,
                                        const std::vector<char>& banned_node) {
  const int n = inst.node_count();
  if (banned_node[from] || banned_node[to]) return std::nullopt;

  std::vector<double> dist(n, kInf);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[to] = 0.0;
  heap.emplace(0.0, to);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d > dist[v]) continue;
    for (int a : inst.in_arcs(v)) {
      if (banned_arc[a]) continue;
      const int u = inst.arc(a).tail;
      if (banned_node[u]) continue;
      const double nd = d + costs[a];
      if (nd < dist[u]) {
        dist[u] = nd;
        heap.emplace(nd, u);
      }
    }
  }
  if (dist[from] == kInf) return std::nullopt;

  auto tight = [&](int a) {
    const Arc& arc = inst.arc(a);
    return !banned_arc[a] && !banned_node[arc.head] && dist[arc.head] < kInf &&
           nearly_equal(costs[a] + dist[arc.head], dist[arc.tail]);
  };

  std::vector<char> visited = banned_node;
  auto completes = [&](int start) {
    if (start == to) return true;
    std::vector<char> seen = visited;
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int a : inst.out_arcs(v)) {
        if (!tight(a)) continue;
        const int w = inst.arc(a).head;
        if (w == to) return true;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return false;
  };

  Path path;
  path.nodes.push_back(from);
  visited[from] = 1;
  int u = from;
  while (u != to) {
    std::vector<int> options;
    for (int a : inst.out_arcs(u)) {
      if (tight(a) && !visited[inst.arc(a).head]) options.push_back(a);
    }
    std::sort(options.begin(), options.end(),
              [&](int x, int y) { return inst.arc(x).head < inst.arc(y).head; });
    int next_arc = -1;
    for (int a : options) {
      const int w = inst.arc(a).head;
      visited[w] = 1;
      if (completes(w)) {
        next_arc = a;
        break;
      }
      visited[w] = 0;
    }
    if (next_arc < 0) return std::nullopt;  // only reachable through numerical noise
    path.arcs.push_back(next_arc);
    u = inst.arc(next_arc).head;
    path.nodes.push_back(u);
  }
  path.cost = path_cost(costs, path.arcs);
  return path;
}

}  // namespace

ArcCostVector surrogate_costs(const Instance& inst) {
  ArcCostVector out;
  out.reserve(inst.arc_count());
  for (const Arc& a : inst.arcs()) out.push_back(a.cost + a.fixed_cost / a.capacity);
  return out;
}

bool path_less(const Path& a, const Path& b) {
  if (!nearly_equal(a.cost, b.cost)) return a.cost < b.cost;
  return a.nodes < b.nodes;
}

double path_cost(std::span<const double> costs, std::span<const int> arcs) {
  double total = 0.0;
  for (int a : arcs) total += costs[a];
  return total;
}

std::optional<Path> shortest_path(const Instance& inst, std::span<const double> costs, int origin,
                                  int destination) {
  std::vector<char> no_arcs(inst.arc_count(), 0);
  std::vector<char> no_nodes(inst.node_count(), 0);
  if (origin == destination) {
    Path trivial;
    trivial.nodes.push_back(origin);
    return trivial;
  }
  return restricted_shortest(inst, costs, origin, destination, no_arcs, no_nodes);
}

std::vector<Path> k_shortest_paths(const Instance& inst, std::span<const double> costs,
                                   int origin, int destination, int count) {
  std::vector<Path> accepted;
  if (count <= 0) return accepted;
  auto first = shortest_path(inst, costs, origin, destination);
  if (!first) throw Unreachable(origin, destination);
  accepted.push_back(std::move(*first));

  std::vector<Path> candidates;
  std::set<std::vector<int>> known{accepted.front().arcs};
  std::vector<char> banned_arc(inst.arc_count(), 0);
  std::vector<char> banned_node(inst.node_count(), 0);

  while (static_cast<int>(accepted.size()) < count) {
    const Path prev = accepted.back();
    for (std::size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
      const int spur = prev.nodes[i];
      std::fill(banned_arc.begin(), banned_arc.end(), 0);
      std::fill(banned_node.begin(), banned_node.end(), 0);
      for (const Path& p : accepted) {
        if (p.arcs.size() > i && std::equal(prev.arcs.begin(), prev.arcs.begin() + i,
                                            p.arcs.begin())) {
          banned_arc[p.arcs[i]] = 1;
        }
      }
      for (std::size_t r = 0; r < i; ++r) banned_node[prev.nodes[r]] = 1;

      auto tail = restricted_shortest(inst, costs, spur, destination, banned_arc, banned_node);
      if (!tail) continue;
      Path candidate;
      candidate.arcs.assign(prev.arcs.begin(), prev.arcs.begin() + i);
      candidate.arcs.insert(candidate.arcs.end(), tail->arcs.begin(), tail->arcs.end());
      candidate.nodes.assign(prev.nodes.begin(), prev.nodes.begin() + i);
      candidate.nodes.insert(candidate.nodes.end(), tail->nodes.begin(), tail->nodes.end());
      candidate.cost = path_cost(costs, candidate.arcs);
      if (known.insert(candidate.arcs).second) candidates.push_back(std::move(candidate));
    }
    if (candidates.empty()) break;
    auto best = std::min_element(candidates.begin(), candidates.end(), path_less);
    accepted.push_back(std::move(*best));
    candidates.erase(best);
  }
  return accepted;
}

}  // namespace aggrenet
