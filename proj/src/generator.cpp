#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "aggrenet/instance.hpp"

namespace aggrenet {
namespace {

// Values derived from raw std::mt19937_64 draws, not std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Inclusive range.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(engine_() % i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

bool reachable(int n, const std::vector<std::pair<int, int>>& arcs, int from, int to) {
  std::vector<std::vector<int>> succ(n);
  for (auto [i, j] : arcs) succ[i].push_back(j);
  std::vector<char> seen(n, 0);
  std::vector<int> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (int w : succ[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return false;
}

constexpr int kMaxAttempts = 200;

}  // namespace

Instance generate_random(const GeneratorParams& p) {
  if (p.nodes < 2 || p.commodities < 1 || !(p.arc_density > 0.0 && p.arc_density <= 1.0) ||
      !(p.capacity_ratio > 0.0) || !(p.fixed_to_flow_ratio >= 0.0)) {
    throw InfeasibleParameters(fmt::format(
        "need nodes >= 2, commodities >= 1, density in (0,1], capacity ratio > 0 and "
        "fixed ratio >= 0 (got {}, {}, {}, {}, {})",
        p.nodes, p.commodities, p.arc_density, p.capacity_ratio, p.fixed_to_flow_ratio));
  }
  const int n = p.nodes;
  const int possible = n * (n - 1);
  const int m = std::clamp(static_cast<int>(std::lround(p.arc_density * possible)), 1, possible);

  Rng rng(p.seed);

  std::vector<Commodity> commodities(p.commodities);
  for (Commodity& c : commodities) {
    c.origin = rng.uniform_int(0, n - 1);
    c.destination = rng.uniform_int(0, n - 2);
    if (c.destination >= c.origin) ++c.destination;
    c.demand = rng.uniform_int(1, 20);
  }

  std::vector<std::pair<int, int>> all_pairs;
  all_pairs.reserve(possible);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) all_pairs.emplace_back(i, j);

  std::vector<std::pair<int, int>> chosen;
  bool connected = false;
  for (int attempt = 0; attempt < kMaxAttempts && !connected; ++attempt) {
    chosen.clear();
    std::vector<char> used(possible, 0);
    auto pair_index = [n](int i, int j) { return i * (n - 1) + (j > i ? j - 1 : j); };
    if (m >= n) {
      // A random Hamiltonian cycle makes the graph strongly connected.
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      for (int v = 0; v < n; ++v) {
        const int i = order[v], j = order[(v + 1) % n];
        chosen.emplace_back(i, j);
        used[pair_index(i, j)] = 1;
      }
    }
    std::vector<std::pair<int, int>> pool = all_pairs;
    rng.shuffle(pool);
    for (auto [i, j] : pool) {
      if (static_cast<int>(chosen.size()) >= m) break;
      if (!used[pair_index(i, j)]) {
        used[pair_index(i, j)] = 1;
        chosen.emplace_back(i, j);
      }
    }
    connected = std::all_of(commodities.begin(), commodities.end(), [&](const Commodity& c) {
      return reachable(n, chosen, c.origin, c.destination);
    });
  }
  if (!connected) {
    throw InfeasibleParameters(
        fmt::format("could not connect all commodities with {} arcs in {} attempts", m,
                    kMaxAttempts));
  }
  std::sort(chosen.begin(), chosen.end());

  double total_demand = 0.0;
  for (const Commodity& c : commodities) total_demand += c.demand;

  std::vector<Arc> arcs;
  arcs.reserve(chosen.size());
  for (auto [i, j] : chosen) {
    Arc a;
    a.tail = i;
    a.head = j;
    a.cost = rng.uniform_int(1, 10);
    a.fixed_cost = std::round(p.fixed_to_flow_ratio * rng.uniform_int(10, 40));
    const double u = p.capacity_ratio * total_demand * (0.5 + 0.5 * rng.uniform01());
    a.capacity = std::max(1.0, std::round(u));
    arcs.push_back(a);
  }
  return Instance(fmt::format("gen-n{}-k{}-s{}", n, p.commodities, p.seed), n, std::move(arcs),
                  std::move(commodities));
}

}  // namespace aggrenet
