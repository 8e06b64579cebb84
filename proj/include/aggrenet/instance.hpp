#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aggrenet/error.hpp"

namespace aggrenet {

/// Absolute feasibility tolerance shared by the checker and the solvers.
inline constexpr double kFeasibilityTolerance = 1e-6;

/// A directed arc. Node indices are 0-based in memory and 1-based on disk.
struct Arc {
  int tail = 0;
  int head = 0;
  double cost = 0.0;      // per unit of flow
  double capacity = 0.0;  // strictly positive
  double fixed_cost = 0.0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct Commodity {
  int origin = 0;
  int destination = 0;
  double demand = 0.0;

  friend bool operator==(const Commodity&, const Commodity&) = default;
};

/// Outgoing and incoming arc indices per node.
struct Adjacency {
  std::vector<std::vector<int>> successors;
  std::vector<std::vector<int>> predecessors;
};

/// An MCND instance. Immutable once constructed. The constructor does not
/// enforce the instance invariants; use validate().
class Instance {
 public:
  Instance() = default;
  Instance(std::string name, int node_count, std::vector<Arc> arcs,
           std::vector<Commodity> commodities);

  const std::string& name() const { return name_; }
  int node_count() const { return node_count_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  int commodity_count() const { return static_cast<int>(commodities_.size()); }

  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int a) const { return arcs_[a]; }
  const std::vector<Commodity>& commodities() const { return commodities_; }
  const Commodity& commodity(int k) const { return commodities_[k]; }

  const std::vector<int>& out_arcs(int node) const { return adjacency_.successors[node]; }
  const std::vector<int>& in_arcs(int node) const { return adjacency_.predecessors[node]; }
  const Adjacency& adjacency() const { return adjacency_; }

  /// Index of arc (tail, head) or nullopt. With duplicate arcs the first wins.
  std::optional<int> find_arc(int tail, int head) const;

  /// Distinct commodity origins in increasing node order (the set Ñ).
  std::vector<int> origins() const;

  double total_demand() const;

  /// Structural equality; the name is ignored.
  friend bool operator==(const Instance& a, const Instance& b) {
    return a.node_count_ == b.node_count_ && a.arcs_ == b.arcs_ &&
           a.commodities_ == b.commodities_;
  }

 private:
  std::string name_;
  int node_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<Commodity> commodities_;
  Adjacency adjacency_;
  std::vector<std::pair<std::int64_t, int>> arc_lookup_;  // sorted (tail*n+head, arc)
};

enum class ViolationKind {
  NodeOutOfRange,
  SelfLoop,
  DuplicateArc,
  NegativeCost,
  NegativeFixedCost,
  NonPositiveCapacity,
  NonPositiveDemand,
  SameOriginDestination,
  EmptyGraph,
};

std::string_view to_string(ViolationKind kind);

struct InstanceViolation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<InstanceViolation> violations;
  int origin_count = 0;  // |Ñ|

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

ValidationReport validate(const Instance& inst);

// ---------------------------------------------------------------------------
// Text formats

/// Canad-style layout: optional title line, "|N| |A| |K|", |A| arc lines
/// "tail head cost capacity fixed [ignored...]", |K| lines "origin dest demand".
Instance parse_dow(std::string_view text, std::string name = {});

/// Native layout: "mcnd 1", "n m k", m lines "i j c u f", k lines "o s d".
/// '#' starts a comment. Strict field counts; invariants enforced.
Instance parse_native(std::string_view text, std::string name = {});

std::string emit_native(const Instance& inst);

enum class InstanceFormat { Auto, Dow, Native };

/// Parses with the given format; Auto sniffs the "mcnd" magic token.
Instance parse_instance(std::string_view text, InstanceFormat format,
                        std::string name = {});

Instance load_instance(const std::string& path, InstanceFormat format = InstanceFormat::Auto);

// ---------------------------------------------------------------------------
// Random generation

struct GeneratorParams {
  int nodes = 6;
  double arc_density = 0.5;    // fraction of the n(n-1) possible arcs
  int commodities = 5;
  double capacity_ratio = 1.0;  // arc capacity relative to total demand
  double fixed_to_flow_ratio = 1.0;
  std::uint64_t seed = 0;
};

/// Deterministic for a fixed parameter set. Every commodity destination is
/// reachable from its origin. Costs, capacities and demands are integral.
Instance generate_random(const GeneratorParams& params);

}  // namespace aggrenet
