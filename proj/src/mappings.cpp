#include <random>

#include <fmt/format.h>

#include "aggrenet/analysis.hpp"

namespace aggrenet {
namespace {

double lookup(const Assignment& a, const std::string& name) {
  auto it = a.find(name);
  if (it == a.end()) throw MissingVariable(name);
  return it->second;
}

}  // namespace

DaPoint da_point_from(const Assignment& da, const Instance& inst) {
  DaPoint p;
  p.flow.assign(inst.commodity_count(), std::vector<double>(inst.arc_count(), 0.0));
  for (int k = 0; k < inst.commodity_count(); ++k) {
    for (int a = 0; a < inst.arc_count(); ++a) p.flow[k][a] = lookup(da, flow_var_name(k, inst.arc(a), {k}));
  }
  for (int a = 0; a < inst.arc_count(); ++a) p.design.push_back(lookup(da, design_var_name(inst.arc(a))));
  return p;
}

Assignment to_da_assignment(const DaPoint& p, const Instance& inst) {
  Assignment out;
  for (int k = 0; k < inst.commodity_count(); ++k) {
    for (int a = 0; a < inst.arc_count(); ++a) out[flow_var_name(k, inst.arc(a), {k})] = p.flow[k][a];
  }
  for (int a = 0; a < inst.arc_count(); ++a) out[design_var_name(inst.arc(a))] = p.design[a];
  return out;
}

Assignment map_da_to_pae(const Assignment& da, const PartialAggregation& pa, const Instance& inst) {
  if (const AggregationReport rep = validate_aggregation(pa, inst); !rep.ok()) {
    throw AggregationMismatch(fmt::format("aggregation does not partition the commodities: {}",
                                          rep.issues.front().detail));
  }
  const DaPoint p = da_point_from(da, inst);
  Assignment out;
  auto group_flow = [&](int a, const CommoditySet& g) {
    double s = 0.0;
    for (int k : g) s += p.flow[k][a];
    return s;
  };

  for (int b = 0; b < static_cast<int>(pa.dispersions.size()); ++b) {
    const Dispersion& d = pa.dispersions[b];
    for (int a = 0; a < inst.arc_count(); ++a) {
      for (const CommoditySet& g : arc_groups(d, a)) out[flow_var_name(b, inst.arc(a), g)] = group_flow(a, g);
    }
    for (int i = 0; i < inst.node_count(); ++i) {
      const GadgetSets gs = gadget_sets(d, inst, i);
      if (!gs.active()) continue;
      for (const CommoditySet& c : gs.inflow) {
        for (const CommoditySet& mid : gs.intermediate) {
          if (!intersects(c, mid)) continue;
          double z = 0.0;
          for (int a : inst.in_arcs(i)) {
            if (d.aggregated(a) != c) continue;
            for (int k : mid) {
              if (contains(c, k)) z += p.flow[k][a];
            }
          }
          out[gadget_in_var_name(b, i, c, mid)] = z;
        }
      }
      for (const CommoditySet& c : gs.outflow) {
        for (const CommoditySet& mid : gs.intermediate) {
          if (!intersects(c, mid)) continue;
          double z = 0.0;
          for (int a : inst.out_arcs(i)) {
            if (d.aggregated(a) != c) continue;
            for (int k : mid) {
              if (contains(c, k)) z += p.flow[k][a];
            }
          }
          out[gadget_out_var_name(b, i, mid, c)] = z;
        }
      }
    }
  }
  for (int a = 0; a < inst.arc_count(); ++a) out[design_var_name(inst.arc(a))] = p.design[a];
  return out;
}

Assignment map_pa_to_fa(const Assignment& pa_point, const PartialAggregation& pa, const Instance& inst) {
  const PartialAggregation fa = build_fa_aggregation(inst);
  std::vector<int> fa_block(inst.node_count(), -1);
  for (int n = 0; n < static_cast<int>(fa.dispersions.size()); ++n) fa_block[fa.dispersions[n].origin] = n;

  Assignment out;
  for (int n = 0; n < static_cast<int>(fa.dispersions.size()); ++n) {
    for (int a = 0; a < inst.arc_count(); ++a) out[flow_var_name(n, inst.arc(a), fa.dispersions[n].members)] = 0.0;
  }
  for (int b = 0; b < static_cast<int>(pa.dispersions.size()); ++b) {
    const Dispersion& d = pa.dispersions[b];
    const int n = fa_block.at(d.origin);
    if (n < 0) throw AggregationMismatch(fmt::format("dispersion {} has no commodity origin", b + 1));
    for (int a = 0; a < inst.arc_count(); ++a) {
      double& target = out[flow_var_name(n, inst.arc(a), fa.dispersions[n].members)];
      for (const CommoditySet& g : arc_groups(d, a)) target += lookup(pa_point, flow_var_name(b, inst.arc(a), g));
    }
  }
  for (int a = 0; a < inst.arc_count(); ++a) {
    const std::string y = design_var_name(inst.arc(a));
    out[y] = lookup(pa_point, y);
  }
  return out;
}

std::vector<Assignment> sample_lp_vertices(const Model& m, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const LpProblem base = LpProblem::from_model(m);
  double scale = 1.0;
  for (double c : base.cost) scale = std::max(scale, std::abs(c));
  std::vector<Assignment> out;
  for (int s = 0; s < count; ++s) {
    LpProblem lp = base;
    for (double& c : lp.cost) c += scale * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    const LpResult r = solve_lp(lp);
    if (r.status == LpStatus::Optimal) out.push_back(to_assignment(m, r.x));
  }
  return out;
}

}  // namespace aggrenet
