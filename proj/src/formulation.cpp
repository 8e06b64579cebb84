#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "aggrenet/model.hpp"

namespace aggrenet {
namespace {

class Builder {
 public:
  Builder(const Instance& inst, const PartialAggregation& pa, Variant variant, const BuildOptions& opt)
      : inst_(inst), pa_(pa), variant_(variant), opt_(opt) {}

  Model build() {
    model_.set_name(inst_.name().empty() ? std::string("mcnd") : inst_.name());
    add_flow_variables();
    add_design_variables();
    gadgets_.resize(pa_.dispersions.size());
    if (variant_ == Variant::PAe) add_gadget_variables();

    for (int b = 0; b < block_count(); ++b) add_flow_rows(b);
    for (int a = 0; a < inst_.arc_count(); ++a) add_capacity_row(a);
    for (int b = 0; b < block_count(); ++b) add_si_rows(b);
    if (variant_ == Variant::PAi) {
      for (int b = 0; b < block_count(); ++b) add_labeling_rows(b);
    }
    if (variant_ == Variant::PAe) {
      for (int b = 0; b < block_count(); ++b) add_gadget_rows(b);
    }
    return std::move(model_);
  }

 private:
  struct FlowVar {
    CommoditySet group;
    int var;
  };
  struct NodeGadget {
    GadgetSets sets;
    std::map<std::pair<CommoditySet, CommoditySet>, int> in_vars;   // (C in inflow, D in intermediate)
    std::map<std::pair<CommoditySet, CommoditySet>, int> out_vars;  // (D in intermediate, C in outflow)
  };

  int block_count() const { return static_cast<int>(pa_.dispersions.size()); }

  void add_flow_variables() {
    flow_.assign(pa_.dispersions.size(), std::vector<std::vector<FlowVar>>(inst_.arc_count()));
    for (int b = 0; b < block_count(); ++b) {
      for (int a = 0; a < inst_.arc_count(); ++a) {
        const Arc& arc = inst_.arc(a);
        for (CommoditySet& g : arc_groups(pa_.dispersions[b], a)) {
          Variable v;
          v.name = flow_var_name(b, arc, g);
          v.objective = arc.cost;
          v.kind = VarKind::Flow;
          const int j = model_.add_variable(std::move(v));
          flow_[b][a].push_back({std::move(g), j});
        }
      }
    }
  }

  void add_design_variables() {
    design_.resize(inst_.arc_count());
    for (int a = 0; a < inst_.arc_count(); ++a) {
      const Arc& arc = inst_.arc(a);
      Variable v;
      v.name = design_var_name(arc);
      v.upper = 1.0;
      v.integer = true;
      v.objective = arc.fixed_cost;
      v.kind = VarKind::Design;
      design_[a] = model_.add_variable(std::move(v));
    }
  }

  void add_gadget_variables() {
    for (int b = 0; b < block_count(); ++b) {
      gadgets_[b].resize(inst_.node_count());
      for (int i = 0; i < inst_.node_count(); ++i) {
        NodeGadget& g = gadgets_[b][i];
        g.sets = gadget_sets(pa_.dispersions[b], inst_, i);
        if (!g.sets.active()) continue;
        for (const CommoditySet& c : g.sets.inflow) {
          for (const CommoditySet& d : g.sets.intermediate) {
            if (!intersects(c, d)) continue;
            Variable v;
            v.name = gadget_in_var_name(b, i, c, d);
            v.kind = VarKind::Gadget;
            g.in_vars[{c, d}] = model_.add_variable(std::move(v));
          }
        }
        for (const CommoditySet& c : g.sets.outflow) {
          for (const CommoditySet& d : g.sets.intermediate) {
            if (!intersects(c, d)) continue;
            Variable v;
            v.name = gadget_out_var_name(b, i, d, c);
            v.kind = VarKind::Gadget;
            g.out_vars[{d, c}] = model_.add_variable(std::move(v));
          }
        }
      }
    }
  }

  double net_supply(const CommoditySet& ks, int node) const {
    double total = 0.0;
    for (int k : ks) {
      const Commodity& c = inst_.commodity(k);
      if (c.origin == node) total += c.demand;
      if (c.destination == node) total -= c.demand;
    }
    return total;
  }

  bool has_gadget(int b, int i) const {
    return variant_ == Variant::PAe && gadgets_[b][i].sets.active();
  }

  void add_flow_rows(int b) {
    const Dispersion& d = pa_.dispersions[b];
    for (int i = 0; i < inst_.node_count(); ++i) {
      if (opt_.drop_redundant_flow && has_gadget(b, i)) continue;
      Constraint row{flow_row_name(b, i), Sense::Equal, net_supply(d.members, i), {},
                     RowClass::FlowConservation};
      for (int a : inst_.out_arcs(i)) {
        for (const FlowVar& f : flow_[b][a]) row.terms.push_back({f.var, 1.0});
      }
      for (int a : inst_.in_arcs(i)) {
        for (const FlowVar& f : flow_[b][a]) row.terms.push_back({f.var, -1.0});
      }
      model_.add_constraint(std::move(row));
    }
  }

  void add_capacity_row(int a) {
    const Arc& arc = inst_.arc(a);
    Constraint row{capacity_row_name(arc), Sense::LessEqual, 0.0, {}, RowClass::Capacity};
    for (int b = 0; b < block_count(); ++b) {
      for (const FlowVar& f : flow_[b][a]) row.terms.push_back({f.var, 1.0});
    }
    row.terms.push_back({design_[a], -arc.capacity});
    model_.add_constraint(std::move(row));
  }

  void add_si_rows(int b) {
    for (int a = 0; a < inst_.arc_count(); ++a) {
      const Arc& arc = inst_.arc(a);
      for (const FlowVar& f : flow_[b][a]) {
        double coef = 0.0;
        for (int k : f.group) coef += inst_.commodity(k).demand;
        if (opt_.clip_si) coef = std::min(coef, arc.capacity);
        model_.add_constraint({si_row_name(b, arc, f.group), Sense::LessEqual, 0.0,
                               {{f.var, 1.0}, {design_[a], -coef}}, RowClass::StrongInequality});
      }
    }
  }

  void add_labeling_rows(int b) {
    const Dispersion& d = pa_.dispersions[b];
    for (int k : d.members) {
      const CommoditySet single{k};
      for (int i = 0; i < inst_.node_count(); ++i) {
        bool labeled = opt_.full_labeling;
        for (const auto* arcs : {&inst_.out_arcs(i), &inst_.in_arcs(i)}) {
          for (int a : *arcs) {
            for (const FlowVar& f : flow_[b][a]) labeled = labeled || f.group == single;
          }
        }
        if (!labeled) continue;
        const double rhs = net_supply(single, i);
        Constraint fwd{forward_label_row_name(b, k, i), Sense::GreaterEqual, rhs, {}, RowClass::Labeling};
        Constraint bwd{backward_label_row_name(b, k, i), Sense::LessEqual, rhs, {}, RowClass::Labeling};
        for (int a : inst_.out_arcs(i)) {
          for (const FlowVar& f : flow_[b][a]) {
            if (contains(f.group, k)) fwd.terms.push_back({f.var, 1.0});
            if (f.group == single) bwd.terms.push_back({f.var, 1.0});
          }
        }
        for (int a : inst_.in_arcs(i)) {
          for (const FlowVar& f : flow_[b][a]) {
            if (f.group == single) fwd.terms.push_back({f.var, -1.0});
            if (contains(f.group, k)) bwd.terms.push_back({f.var, -1.0});
          }
        }
        model_.add_constraint(std::move(fwd));
        model_.add_constraint(std::move(bwd));
      }
    }
  }

  /// Variable of the disaggregated copy of k on arc a, if k is disaggregated there.
  std::optional<int> singleton_var(int b, int a, int k) const {
    if (!contains(pa_.dispersions[b].disaggregated[a], k)) return std::nullopt;
    for (const FlowVar& f : flow_[b][a]) {
      if (f.group.size() == 1 && f.group.front() == k) return f.var;
    }
    return std::nullopt;
  }

  /// Variable of the aggregated copy on arc a (K_b^ij), if nonempty.
  std::optional<int> aggregated_var(int b, int a) const {
    const CommoditySet agg = pa_.dispersions[b].aggregated(a);
    if (agg.empty()) return std::nullopt;
    for (const FlowVar& f : flow_[b][a]) {
      if (f.group == agg) return f.var;
    }
    return std::nullopt;
  }

  void add_gadget_rows(int b) {
    const Dispersion& d = pa_.dispersions[b];
    for (int i = 0; i < inst_.node_count(); ++i) {
      const NodeGadget& g = gadgets_[b][i];
      if (!g.sets.active()) continue;

      for (const CommoditySet& mid : g.sets.intermediate) {
        Constraint row{gadget_mid_row_name(b, i, mid), Sense::Equal, net_supply(mid, i), {},
                       RowClass::Gadget};
        for (int k : mid) {
          for (int a : inst_.out_arcs(i)) {
            if (auto v = singleton_var(b, a, k)) row.terms.push_back({*v, 1.0});
          }
          for (int a : inst_.in_arcs(i)) {
            if (auto v = singleton_var(b, a, k)) row.terms.push_back({*v, -1.0});
          }
        }
        for (const auto& [key, var] : g.out_vars) {
          if (key.first == mid) row.terms.push_back({var, 1.0});
        }
        for (const auto& [key, var] : g.in_vars) {
          if (key.second == mid) row.terms.push_back({var, -1.0});
        }
        model_.add_constraint(std::move(row));
      }

      for (const CommoditySet& c : g.sets.inflow) {
        Constraint row{gadget_in_row_name(b, i, c), Sense::Equal, 0.0, {}, RowClass::Gadget};
        for (const auto& [key, var] : g.in_vars) {
          if (key.first == c) row.terms.push_back({var, 1.0});
        }
        for (int a : inst_.in_arcs(i)) {
          if (d.aggregated(a) == c) row.terms.push_back({*aggregated_var(b, a), -1.0});
        }
        model_.add_constraint(std::move(row));
      }

      for (const CommoditySet& c : g.sets.outflow) {
        Constraint row{gadget_out_row_name(b, i, c), Sense::Equal, 0.0, {}, RowClass::Gadget};
        for (int a : inst_.out_arcs(i)) {
          if (d.aggregated(a) == c) row.terms.push_back({*aggregated_var(b, a), 1.0});
        }
        for (const auto& [key, var] : g.out_vars) {
          if (key.second == c) row.terms.push_back({var, -1.0});
        }
        model_.add_constraint(std::move(row));
      }
    }
  }

  const Instance& inst_;
  const PartialAggregation& pa_;
  Variant variant_;
  BuildOptions opt_;
  Model model_;
  std::vector<std::vector<std::vector<FlowVar>>> flow_;  // [b][arc]
  std::vector<int> design_;
  std::vector<std::vector<NodeGadget>> gadgets_;  // [b][node], PAe only
};

}  // namespace

Model build_model(const Instance& inst, const PartialAggregation& pa, Variant variant,
                  const BuildOptions& options) {
  const AggregationReport report = validate_aggregation(pa, inst);
  if (!report.ok()) {
    throw InvalidAggregation(fmt::format("aggregation rejected ({} issues): {}: {}",
                                         report.issues.size(), to_string(report.issues.front().kind),
                                         report.issues.front().detail));
  }
  return Builder(inst, pa, variant, options).build();
}

Model build_da_model(const Instance& inst, const BuildOptions& options) {
  return build_model(inst, build_da_aggregation(inst), Variant::PA, options);
}

Model build_fa_model(const Instance& inst, const BuildOptions& options) {
  return build_model(inst, build_fa_aggregation(inst), Variant::PA, options);
}

}  // namespace aggrenet
