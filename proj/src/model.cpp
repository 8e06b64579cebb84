#include "aggrenet/model.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include <fmt/format.h>

namespace aggrenet {

std::string_view to_string(RowClass c) {
  switch (c) {
    case RowClass::FlowConservation: return "flow";
    case RowClass::Capacity: return "capacity";
    case RowClass::StrongInequality: return "si";
    case RowClass::Labeling: return "labeling";
    case RowClass::Gadget: return "gadget";
    case RowClass::CutSet: return "cutset";
    case RowClass::Other: return "other";
  }
  return "other";
}

int Model::add_variable(Variable v) {
  const int j = variable_count();
  if (!variable_index_.emplace(v.name, j).second) throw DuplicateName(v.name);
  variables_.push_back(std::move(v));
  return j;
}

int Model::add_constraint(Constraint c) {
  for (const Term& t : c.terms) {
    if (t.var < 0 || t.var >= variable_count()) {
      throw std::out_of_range(fmt::format("row '{}' references variable {}", c.name, t.var));
    }
  }
  std::stable_sort(c.terms.begin(), c.terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  merged.reserve(c.terms.size());
  for (const Term& t : c.terms) {
    if (!merged.empty() && merged.back().var == t.var) merged.back().coef += t.coef;
    else merged.push_back(t);
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  c.terms = std::move(merged);

  const int i = constraint_count();
  if (!constraint_index_.emplace(c.name, i).second) throw DuplicateName(c.name);
  constraints_.push_back(std::move(c));
  return i;
}

void Model::set_bounds(int j, double lower, double upper) {
  variables_[j].lower = lower;
  variables_[j].upper = upper;
}

void Model::set_integer(int j, bool integer) { variables_[j].integer = integer; }

std::optional<int> Model::find_variable(std::string_view name) const {
  auto it = variable_index_.find(name);
  if (it == variable_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Model::find_constraint(std::string_view name) const {
  auto it = constraint_index_.find(name);
  if (it == constraint_index_.end()) return std::nullopt;
  return it->second;
}

Assignment to_assignment(const Model& m, const std::vector<double>& values) {
  Assignment out;
  for (int j = 0; j < m.variable_count(); ++j) out.emplace(m.variable(j).name, values.at(j));
  return out;
}

Assignment project(const Assignment& a, const Model& m) {
  Assignment out;
  for (const auto& [name, value] : a) {
    if (m.find_variable(name)) out.emplace(name, value);
  }
  return out;
}

double objective_value(const Model& m, const Assignment& a) {
  double total = 0.0;
  for (const Variable& v : m.variables()) {
    if (v.objective == 0.0) continue;
    auto it = a.find(v.name);
    if (it == a.end()) throw MissingVariable(v.name);
    total += v.objective * it->second;
  }
  return total;
}

ModelStats stats(const Model& m) {
  ModelStats s;
  s.rows = m.constraint_count();
  s.cols = m.variable_count();
  for (const Constraint& c : m.constraints()) {
    s.nonzeros += static_cast<long long>(c.terms.size());
    ++s.by_class[c.row_class];
  }
  for (const Variable& v : m.variables()) s.integers += v.integer ? 1 : 0;
  s.size = s.rows * s.cols;
  s.density = s.size > 0 ? static_cast<double>(s.nonzeros) / static_cast<double>(s.size) : 0.0;
  return s;
}

Model relax(Model m) {
  for (int j = 0; j < m.variable_count(); ++j) {
    if (m.variable(j).integer) m.set_integer(j, false);
  }
  return m;
}

Model add_cutset_constraints(Model m, const Instance& inst) {
  std::vector<double> supply(inst.node_count(), 0.0), demand(inst.node_count(), 0.0);
  for (const Commodity& c : inst.commodities()) {
    supply[c.origin] += c.demand;
    demand[c.destination] += c.demand;
  }
  auto design_terms = [&](const std::vector<int>& arcs) {
    std::vector<Term> terms;
    for (int a : arcs) {
      const Arc& arc = inst.arc(a);
      auto j = m.find_variable(design_var_name(arc));
      if (!j) throw MissingVariable(design_var_name(arc));
      terms.push_back({*j, arc.capacity});
    }
    return terms;
  };
  for (int i = 0; i < inst.node_count(); ++i) {
    if (supply[i] > 0.0) {
      auto terms = design_terms(inst.out_arcs(i));
      m.add_constraint({cutset_out_row_name(i), Sense::GreaterEqual, supply[i], std::move(terms),
                        RowClass::CutSet});
    }
    if (demand[i] > 0.0) {
      auto terms = design_terms(inst.in_arcs(i));
      m.add_constraint({cutset_in_row_name(i), Sense::GreaterEqual, demand[i], std::move(terms),
                        RowClass::CutSet});
    }
  }
  return m;
}

// ---------------------------------------------------------------------------

std::string group_tag(const CommoditySet& group) {
  if (group.size() == 1) return fmt::format("g{}", group.front() + 1);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int k : group) {
    auto v = static_cast<std::uint32_t>(k);
    for (int byte = 0; byte < 4; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  return fmt::format("gh{:016x}", h);
}

namespace {
std::string arc_tag(const Arc& a) { return fmt::format("a{}_{}", a.tail + 1, a.head + 1); }
}  // namespace

std::string flow_var_name(int b, const Arc& arc, const CommoditySet& group) {
  return fmt::format("x_b{}_{}_{}", b + 1, arc_tag(arc), group_tag(group));
}
std::string design_var_name(const Arc& arc) { return fmt::format("y_{}", arc_tag(arc)); }
std::string gadget_in_var_name(int b, int node, const CommoditySet& from, const CommoditySet& to) {
  return fmt::format("z_b{}_n{}_i{}_{}", b + 1, node + 1, group_tag(from), group_tag(to));
}
std::string gadget_out_var_name(int b, int node, const CommoditySet& from, const CommoditySet& to) {
  return fmt::format("z_b{}_n{}_o{}_{}", b + 1, node + 1, group_tag(from), group_tag(to));
}

std::string flow_row_name(int b, int node) { return fmt::format("fc_b{}_n{}", b + 1, node + 1); }
std::string capacity_row_name(const Arc& arc) { return fmt::format("cap_{}", arc_tag(arc)); }
std::string si_row_name(int b, const Arc& arc, const CommoditySet& group) {
  return fmt::format("si_b{}_{}_{}", b + 1, arc_tag(arc), group_tag(group));
}
std::string forward_label_row_name(int b, int k, int node) {
  return fmt::format("fl_b{}_k{}_n{}", b + 1, k + 1, node + 1);
}
std::string backward_label_row_name(int b, int k, int node) {
  return fmt::format("bl_b{}_k{}_n{}", b + 1, k + 1, node + 1);
}
std::string gadget_mid_row_name(int b, int node, const CommoditySet& group) {
  return fmt::format("gm_b{}_n{}_{}", b + 1, node + 1, group_tag(group));
}
std::string gadget_in_row_name(int b, int node, const CommoditySet& group) {
  return fmt::format("gi_b{}_n{}_{}", b + 1, node + 1, group_tag(group));
}
std::string gadget_out_row_name(int b, int node, const CommoditySet& group) {
  return fmt::format("go_b{}_n{}_{}", b + 1, node + 1, group_tag(group));
}
std::string cutset_out_row_name(int node) { return fmt::format("cs_out_n{}", node + 1); }
std::string cutset_in_row_name(int node) { return fmt::format("cs_in_n{}", node + 1); }

RowClass row_class_from_name(std::string_view name) {
  auto starts = [&](std::string_view p) { return name.substr(0, p.size()) == p; };
  if (starts("fc_")) return RowClass::FlowConservation;
  if (starts("cap_")) return RowClass::Capacity;
  if (starts("si_")) return RowClass::StrongInequality;
  if (starts("fl_") || starts("bl_")) return RowClass::Labeling;
  if (starts("gm_") || starts("gi_") || starts("go_")) return RowClass::Gadget;
  if (starts("cs_")) return RowClass::CutSet;
  return RowClass::Other;
}

VarKind var_kind_from_name(std::string_view name) {
  auto starts = [&](std::string_view p) { return name.substr(0, p.size()) == p; };
  if (starts("x_")) return VarKind::Flow;
  if (starts("y_")) return VarKind::Design;
  if (starts("z_")) return VarKind::Gadget;
  return VarKind::Other;
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::PA: return "pa";
    case Variant::PAi: return "pai";
    case Variant::PAe: return "pae";
  }
  return "pa";
}

}  // namespace aggrenet
