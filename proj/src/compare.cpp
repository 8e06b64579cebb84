#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "aggrenet/analysis.hpp"

namespace aggrenet {

std::string_view to_string(Formulation f) {
  switch (f) {
    case Formulation::DA: return "da";
    case Formulation::FA: return "fa";
    case Formulation::PA: return "pa";
    case Formulation::PAi: return "pai";
    case Formulation::PAe: return "pae";
  }
  return "da";
}

std::optional<Formulation> parse_formulation(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Formulation f : {Formulation::DA, Formulation::FA, Formulation::PA, Formulation::PAi, Formulation::PAe}) {
    if (lower == to_string(f)) return f;
  }
  return std::nullopt;
}

Model build_formulation(const Instance& inst, Formulation f, int k, const BuildOptions& options) {
  switch (f) {
    case Formulation::DA: return build_da_model(inst, options);
    case Formulation::FA: return build_fa_model(inst, options);
    case Formulation::PA: return build_model(inst, build_ksp_aggregation(inst, k), Variant::PA, options);
    case Formulation::PAi: return build_model(inst, build_ksp_aggregation(inst, k), Variant::PAi, options);
    case Formulation::PAe: return build_model(inst, build_ksp_aggregation(inst, k), Variant::PAe, options);
  }
  return build_da_model(inst, options);
}

namespace {

bool has_k(Formulation f) { return f == Formulation::PA || f == Formulation::PAi || f == Formulation::PAe; }

MetricsRow run_row(const Instance& inst, Formulation f, int k, const CompareOptions& opt) {
  MetricsRow row;
  row.instance = inst.name();
  row.formulation = f;
  row.k = has_k(f) ? k : -1;
  BuildOptions build = opt.build;
  if (f != Formulation::PAi) build.full_labeling = false;
  if (f != Formulation::PAe) build.drop_redundant_flow = false;
  Model model = relax(build_formulation(inst, f, k, build));
  if (opt.cutset) model = add_cutset_constraints(std::move(model), inst);
  row.stats = stats(model);

  std::vector<double> times;
  for (int run = 0; run < std::max(1, opt.timing_runs); ++run) {
    const LpSolution s = solve_lp(model, opt.lp);
    times.push_back(s.wall_ms);
    row.status = s.status;
    row.lp_value = s.objective;
  }
  std::sort(times.begin(), times.end());
  row.lp_time_ms = times[times.size() / 2];
  return row;
}

std::string fixed(double v) { return fmt::format("{:.6f}", v); }

}  // namespace

MetricsReport compare_formulations(const Instance& inst, const CompareOptions& opt) {
  std::vector<std::pair<Formulation, int>> jobs{{Formulation::DA, -1}};
  bool fa_done = false;
  for (Formulation f : opt.formulations) {
    if (f == Formulation::DA) continue;
    if (f == Formulation::FA) {
      if (!fa_done) jobs.emplace_back(f, -1);
      fa_done = true;
      continue;
    }
    for (int k : opt.k_values) {
      if (std::find(jobs.begin(), jobs.end(), std::pair{f, k}) == jobs.end()) jobs.emplace_back(f, k);
    }
  }

  MetricsReport report;
  report.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        report.rows[i] = run_row(inst, jobs[i].first, jobs[i].second, opt);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(opt.workers, 1, static_cast<int>(jobs.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  const MetricsRow& base = report.rows.front();
  const double fa_red = fa_reduction(inst);
  for (MetricsRow& row : report.rows) {
    row.fa_red_pct = fa_red;
    row.size_red_pct = size_reduction(base.stats, row.stats);
    const bool both = base.status == LpStatus::Optimal && row.status == LpStatus::Optimal;
    if (both && base.lp_value > 0.0) row.bound_loss_pct = bound_loss(base.lp_value, row.lp_value);
    if (base.lp_time_ms > 0.0) row.time_red_pct = time_reduction(base.lp_time_ms, row.lp_time_ms);
  }
  return report;
}

std::string MetricsReport::to_csv() const {
  std::string out =
      "instance,variant,K,lp_value,lp_time_ms,rows,cols,nnz,size,density,bound_loss_pct,size_red_pct,"
      "time_red_pct,fa_red_pct\n";
  for (const MetricsRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.instance, to_string(r.formulation),
                       r.k < 0 ? std::string() : std::to_string(r.k),
                       r.status == LpStatus::Optimal ? fmt::format("{}", r.lp_value) : std::string(to_string(r.status)),
                       fixed(r.lp_time_ms), r.stats.rows, r.stats.cols, r.stats.nonzeros, r.stats.size,
                       fixed(r.stats.density), r.bound_loss_pct ? fixed(*r.bound_loss_pct) : std::string(),
                       fixed(r.size_red_pct), r.time_red_pct ? fixed(*r.time_red_pct) : std::string(),
                       fixed(r.fa_red_pct));
  }
  return out;
}

std::string MetricsReport::to_gnuplot() const {
  std::map<Formulation, std::vector<const MetricsRow*>> blocks;
  for (const MetricsRow& r : rows) blocks[r.formulation].push_back(&r);
  std::string out;
  for (const auto& [f, list] : blocks) {
    out += fmt::format("# {}\n# K bound_loss_pct size_red_pct time_red_pct\n", to_string(f));
    for (const MetricsRow* r : list) {
      out += fmt::format("{} {} {} {}\n", std::max(r->k, 0),
                         r->bound_loss_pct ? fixed(*r->bound_loss_pct) : std::string("NaN"),
                         fixed(r->size_red_pct), r->time_red_pct ? fixed(*r->time_red_pct) : std::string("NaN"));
    }
    out += "\n\n";
  }
  return out;
}

}  // namespace aggrenet
