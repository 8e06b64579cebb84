#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aggrenet/aggregation.hpp"
#include "aggrenet/instance.hpp"

namespace aggrenet {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, Equal, GreaterEqual };

enum class VarKind { Flow, Design, Gadget, Other };

enum class RowClass { FlowConservation, Capacity, StrongInequality, Labeling, Gadget, CutSet, Other };

std::string_view to_string(RowClass c);

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  bool integer = false;
  double objective = 0.0;
  VarKind kind = VarKind::Other;

  friend bool operator==(const Variable&, const Variable&) = default;
};

struct Term {
  int var = 0;
  double coef = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Constraint {
  std::string name;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
  std::vector<Term> terms;
  RowClass row_class = RowClass::Other;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Solver-independent linear model, objective minimized.
/// Variable and constraint names are unique within their namespace.
class Model {
 public:
  Model() = default;
  explicit Model(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Throws DuplicateName.
  int add_variable(Variable v);
  /// Sorts terms by variable, merges repeats, drops zero coefficients. Throws DuplicateName,
  /// or std::out_of_range for a term referencing an unknown variable.
  int add_constraint(Constraint c);

  int variable_count() const { return static_cast<int>(variables_.size()); }
  int constraint_count() const { return static_cast<int>(constraints_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Variable& variable(int j) const { return variables_[j]; }
  const Constraint& constraint(int i) const { return constraints_[i]; }

  void set_bounds(int j, double lower, double upper);
  void set_integer(int j, bool integer);
  void set_objective(int j, double coef) { variables_[j].objective = coef; }

  std::optional<int> find_variable(std::string_view name) const;
  std::optional<int> find_constraint(std::string_view name) const;

  friend bool operator==(const Model& a, const Model& b) {
    return a.variables_ == b.variables_ && a.constraints_ == b.constraints_;
  }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  using Index = std::unordered_map<std::string, int, Hash, std::equal_to<>>;

  std::string name_;
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  Index variable_index_;
  Index constraint_index_;
};

/// Variable name -> value.
using Assignment = std::map<std::string, double, std::less<>>;

/// Values aligned with the model's variables, keyed by name.
Assignment to_assignment(const Model& m, const std::vector<double>& values);

/// Keeps only entries naming a variable of `m`.
Assignment project(const Assignment& a, const Model& m);

double objective_value(const Model& m, const Assignment& a);

struct ModelStats {
  long long rows = 0;
  long long cols = 0;
  long long nonzeros = 0;
  long long size = 0;
  double density = 0.0;
  long long integers = 0;
  std::map<RowClass, long long> by_class;

  long long count(RowClass c) const {
    auto it = by_class.find(c);
    return it == by_class.end() ? 0 : it->second;
  }

  friend bool operator==(const ModelStats&, const ModelStats&) = default;
};

ModelStats stats(const Model& m);

/// Binary variables become continuous on [0, 1].
Model relax(Model m);

/// Single-node cut-set rows on the design variables. Throws DuplicateName
/// when applied twice.
Model add_cutset_constraints(Model m, const Instance& inst);

// ---------------------------------------------------------------------------
// Naming. Nodes, arcs endpoints, dispersions and commodities are printed
// 1-based.

/// "g{k}" for a singleton, otherwise "gh" plus a 64-bit FNV-1a hex digest.
std::string group_tag(const CommoditySet& group);

std::string flow_var_name(int b, const Arc& arc, const CommoditySet& group);
std::string design_var_name(const Arc& arc);
std::string gadget_in_var_name(int b, int node, const CommoditySet& from, const CommoditySet& to);
std::string gadget_out_var_name(int b, int node, const CommoditySet& from, const CommoditySet& to);

std::string flow_row_name(int b, int node);
std::string capacity_row_name(const Arc& arc);
std::string si_row_name(int b, const Arc& arc, const CommoditySet& group);
std::string forward_label_row_name(int b, int k, int node);
std::string backward_label_row_name(int b, int k, int node);
std::string gadget_mid_row_name(int b, int node, const CommoditySet& group);
std::string gadget_in_row_name(int b, int node, const CommoditySet& group);
std::string gadget_out_row_name(int b, int node, const CommoditySet& group);
std::string cutset_out_row_name(int node);
std::string cutset_in_row_name(int node);

RowClass row_class_from_name(std::string_view name);
VarKind var_kind_from_name(std::string_view name);

// ---------------------------------------------------------------------------
// Formulations

enum class Variant { PA, PAi, PAe };

std::string_view to_string(Variant v);

struct BuildOptions {
  /// SI coefficient min(sum of demands, capacity) instead of the demand sum.
  bool clip_si = false;
  /// Labeling rows for every (dispersion, commodity, node), PAi only.
  bool full_labeling = false;
  /// Omit the aggregated flow row at nodes that carry a gadget, PAe only.
  bool drop_redundant_flow = false;
};

/// Throws InvalidAggregation when validate_aggregation reports issues.
Model build_model(const Instance& inst, const PartialAggregation& pa, Variant variant,
                  const BuildOptions& options = {});

Model build_da_model(const Instance& inst, const BuildOptions& options = {});
Model build_fa_model(const Instance& inst, const BuildOptions& options = {});

// ---------------------------------------------------------------------------
// Free-format MPS

std::string emit_mps(const Model& m);
/// Throws MpsError with the offending line.
Model parse_mps(std::string_view text);

}  // namespace aggrenet
