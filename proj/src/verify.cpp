#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "aggrenet/analysis.hpp"

namespace aggrenet {

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

bool leq(double a, double b, double tol) { return a <= b + tol * std::max(1.0, std::abs(b)); }

std::string first_violation(const std::vector<Violation>& v) {
  if (v.empty()) return {};
  return fmt::format("{} violations, first '{}' by {:.3g}", v.size(), v.front().name, v.front().amount);
}

}  // namespace

VerifyReport run_verify(const Instance& inst, const VerifyOptions& opt) {
  VerifyReport report;
  auto add = [&](std::string name, bool passed, std::string detail = {}) {
    report.checks.push_back({std::move(name), passed, std::move(detail)});
  };

  const ValidationReport valid = validate(inst);
  add("instance valid", valid.ok(),
      valid.ok() ? fmt::format("{} origins", valid.origin_count) : valid.violations.front().detail);
  if (!valid.ok()) return report;

  const long long nk = inst.commodity_count(), na = inst.arc_count(), nn = inst.node_count();
  const long long no = static_cast<long long>(inst.origins().size());
  const PartialAggregation da = build_da_aggregation(inst);
  const PartialAggregation fa = build_fa_aggregation(inst);
  const LayerNetworkSize da_net = layer_network_size(da, inst), fa_net = layer_network_size(fa, inst);
  add("layer network arc counts", da_net.arcs == nk * na && fa_net.arcs == no * na,
      fmt::format("DA {} arcs, FA {} arcs", da_net.arcs, fa_net.arcs));

  const Model da_model = relax(build_da_model(inst));
  const Model fa_model = relax(build_fa_model(inst));
  const ModelStats da_stats = stats(da_model), fa_stats = stats(fa_model);
  add("DA model dimensions", da_stats.rows == nk * nn + na + nk * na && da_stats.cols == nk * na + na,
      fmt::format("{} rows, {} cols", da_stats.rows, da_stats.cols));

  std::vector<int> ks = opt.k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  const LpSolution da_lp = solve_lp(da_model);
  const LpSolution fa_lp = solve_lp(fa_model);
  add("DA and FA relaxations solve", da_lp.status == LpStatus::Optimal && fa_lp.status == LpStatus::Optimal,
      fmt::format("DA {} {}, FA {} {}", to_string(da_lp.status), da_lp.objective, to_string(fa_lp.status),
                  fa_lp.objective));
  if (da_lp.status != LpStatus::Optimal || fa_lp.status != LpStatus::Optimal) return report;

  const std::vector<Assignment> da_vertices = sample_lp_vertices(da_model, opt.samples, opt.seed);
  long long prev_si = -1;
  bool si_monotone = true;
  for (int k : ks) {
    const PartialAggregation pa = build_ksp_aggregation(inst, k);
    const AggregationReport agg = validate_aggregation(pa, inst);
    add(fmt::format("K={} aggregation valid", k), agg.ok(), agg.ok() ? "" : agg.issues.front().detail);
    if (!agg.ok()) continue;

    const Model pa_m = relax(build_model(inst, pa, Variant::PA));
    const Model pai_m = relax(build_model(inst, pa, Variant::PAi));
    const Model pae_m = relax(build_model(inst, pa, Variant::PAe));
    const ModelStats pa_stats = stats(pa_m);
    if (k == 0) add("K=0 matches FA dimensions", pa_stats == fa_stats);
    const long long si = pa_stats.count(RowClass::StrongInequality);
    si_monotone = si_monotone && si >= prev_si;
    prev_si = si;

    const LpSolution pa_lp = solve_lp(pa_m), pai_lp = solve_lp(pai_m), pae_lp = solve_lp(pae_m);
    const bool solved = pa_lp.status == LpStatus::Optimal && pai_lp.status == LpStatus::Optimal &&
                        pae_lp.status == LpStatus::Optimal;
    const bool chain = solved && leq(fa_lp.objective, pa_lp.objective, opt.tol) &&
                       leq(pa_lp.objective, pai_lp.objective, opt.tol) &&
                       leq(pai_lp.objective, pae_lp.objective, opt.tol) &&
                       leq(pae_lp.objective, da_lp.objective, opt.tol);
    add(fmt::format("K={} bound hierarchy FA<=PA<=PAi<=PAe<=DA", k), chain,
        fmt::format("{} <= {} <= {} <= {} <= {}", fa_lp.objective, pa_lp.objective, pai_lp.objective,
                    pae_lp.objective, da_lp.objective));

    std::string detail;
    bool maps_ok = true;
    for (const Assignment& v : da_vertices) {
      const Assignment mapped = map_da_to_pae(v, pa, inst);
      const auto viol = check_solution(pae_m, mapped, opt.tol);
      const double dz = std::abs(objective_value(pae_m, mapped) - objective_value(da_model, v));
      if (!viol.empty() || dz > opt.tol * std::max(1.0, objective_value(da_model, v))) {
        maps_ok = false;
        detail = viol.empty() ? fmt::format("objective differs by {}", dz) : first_violation(viol);
        break;
      }
    }
    add(fmt::format("K={} DA points map into PAe", k), maps_ok,
        maps_ok ? fmt::format("{} vertices", da_vertices.size()) : detail);

    maps_ok = true;
    detail.clear();
    const auto pae_vertices = sample_lp_vertices(pae_m, opt.samples, opt.seed + 1);
    for (const Assignment& v : pae_vertices) {
      const auto viol_pai = check_solution(pai_m, project(v, pai_m), opt.tol);
      if (!viol_pai.empty()) {
        maps_ok = false;
        detail = first_violation(viol_pai);
        break;
      }
    }
    add(fmt::format("K={} PAe points project into PAi", k), maps_ok,
        maps_ok ? fmt::format("{} vertices", pae_vertices.size()) : detail);

    maps_ok = true;
    detail.clear();
    const auto pai_vertices = sample_lp_vertices(pai_m, opt.samples, opt.seed + 2);
    for (const Assignment& v : pai_vertices) {
      const auto viol_pa = check_solution(pa_m, project(v, pa_m), opt.tol);
      if (!viol_pa.empty()) {
        maps_ok = false;
        detail = first_violation(viol_pa);
        break;
      }
    }
    add(fmt::format("K={} PAi points are PA points", k), maps_ok,
        maps_ok ? fmt::format("{} vertices", pai_vertices.size()) : detail);

    maps_ok = true;
    detail.clear();
    const auto pa_vertices = sample_lp_vertices(pa_m, opt.samples, opt.seed + 3);
    for (const Assignment& v : pa_vertices) {
      const Assignment mapped = map_pa_to_fa(v, pa, inst);
      const auto viol = check_solution(fa_model, mapped, opt.tol);
      const double dz = std::abs(objective_value(fa_model, mapped) - objective_value(pa_m, v));
      if (!viol.empty() || dz > opt.tol * std::max(1.0, objective_value(pa_m, v))) {
        maps_ok = false;
        detail = viol.empty() ? fmt::format("objective differs by {}", dz) : first_violation(viol);
        break;
      }
    }
    add(fmt::format("K={} PA points map into FA", k), maps_ok,
        maps_ok ? fmt::format("{} vertices", pa_vertices.size()) : detail);
  }
  add("SI rows nondecreasing in K", si_monotone);

  if (inst.arc_count() <= opt.mip_arc_limit) {
    const BruteForceResult brute = brute_force_mip(inst, opt.mip_arc_limit);
    std::vector<std::pair<std::string, Model>> models;
    models.emplace_back("da", build_da_model(inst));
    models.emplace_back("fa", build_fa_model(inst));
    const int k = ks.empty() ? 1 : ks.back();
    const PartialAggregation pa = build_ksp_aggregation(inst, k);
    models.emplace_back(fmt::format("pa{}", k), build_model(inst, pa, Variant::PA));
    models.emplace_back(fmt::format("pai{}", k), build_model(inst, pa, Variant::PAi));
    models.emplace_back(fmt::format("pae{}", k), build_model(inst, pa, Variant::PAe));
    bool same = true;
    std::string detail = fmt::format("brute force {}", brute.value);
    for (const auto& [name, model] : models) {
      const MipSolution mip = solve_mip(model);
      const bool feasible = mip.status == MipStatus::Optimal;
      const bool match = std::isfinite(brute.value)
                             ? feasible && std::abs(mip.incumbent - brute.value) <=
                                               opt.tol * std::max(1.0, std::abs(brute.value))
                             : mip.status == MipStatus::Infeasible;
      same = same && match;
      detail += fmt::format(", {} {}", name, mip.incumbent);
    }
    add("MIP optimum equal across formulations and brute force", same, detail);
  }
  return report;
}

}  // namespace aggrenet
