#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aggrenet/aggregation.hpp"
#include "aggrenet/instance.hpp"
#include "aggrenet/model.hpp"
#include "aggrenet/solve.hpp"

namespace aggrenet {

// ---------------------------------------------------------------------------
// Solution mappings

/// A point of the disaggregated model: flow[k][arc] and design[arc].
struct DaPoint {
  std::vector<std::vector<double>> flow;
  std::vector<double> design;
};

/// Reads a DA model assignment. Throws MissingVariable.
DaPoint da_point_from(const Assignment& da, const Instance& inst);
Assignment to_da_assignment(const DaPoint& p, const Instance& inst);

/// Disaggregated point to the PAe model over `pa`: group flows are sums of
/// commodity flows, design copied, gadget flows split by the arcs that feed
/// (or leave) each aggregated group. Throws AggregationMismatch if `pa` does
/// not partition the commodities.
Assignment map_da_to_pae(const Assignment& da, const PartialAggregation& pa, const Instance& inst);

/// PA point (over `pa`) to the FA model: per origin, all group flows summed.
/// Throws MissingVariable for a missing flow or design value.
Assignment map_pa_to_fa(const Assignment& pa_point, const PartialAggregation& pa, const Instance& inst);

/// Vertices of the LP relaxation of `m` under `count` random nonnegative
/// objective perturbations. Non-optimal re-solves are skipped.
std::vector<Assignment> sample_lp_vertices(const Model& m, int count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Metrics (percentages)

/// 100 (z_base - z_other) / z_base. Throws NonPositiveBase when z_base <= 0.
double bound_loss(double z_base, double z_other);
/// 100 (1 - other.size / base.size).
double size_reduction(const ModelStats& base, const ModelStats& other);
/// 100 (1 - t_other / t_base).
double time_reduction(double t_base, double t_other);
/// 100 (|K| - |origins|) / |K|.
double fa_reduction(const Instance& inst);

// ---------------------------------------------------------------------------
// Comparison runs

enum class Formulation { DA, FA, PA, PAi, PAe };

std::string_view to_string(Formulation f);
/// "da", "fa", "pa", "pai", "pae" (case-insensitive).
std::optional<Formulation> parse_formulation(std::string_view s);

struct CompareOptions {
  std::vector<Formulation> formulations{Formulation::DA, Formulation::FA, Formulation::PA,
                                        Formulation::PAi, Formulation::PAe};
  std::vector<int> k_values{1, 2, 3};
  BuildOptions build;
  bool cutset = false;
  int timing_runs = 3;
  int workers = 1;
  LpOptions lp;
};

struct MetricsRow {
  std::string instance;
  Formulation formulation = Formulation::DA;
  int k = -1;  // -1 when the formulation has no K
  LpStatus status = LpStatus::Infeasible;
  double lp_value = 0.0;
  double lp_time_ms = 0.0;
  ModelStats stats;
  std::optional<double> bound_loss_pct;
  double size_red_pct = 0.0;
  std::optional<double> time_red_pct;
  double fa_red_pct = 0.0;
};

struct MetricsReport {
  std::vector<MetricsRow> rows;

  std::string to_csv() const;
  /// Whitespace-separated blocks, one per formulation, "K bound_loss size_red time_red".
  std::string to_gnuplot() const;
};

/// One row per (formulation, K); DA and FA once each. The DA row is always
/// computed, placed first, and serves as the baseline.
MetricsReport compare_formulations(const Instance& inst, const CompareOptions& options = {});

Model build_formulation(const Instance& inst, Formulation f, int k, const BuildOptions& options = {});

// ---------------------------------------------------------------------------
// Invariant suite

struct VerifyOptions {
  std::vector<int> k_values{0, 1, 2, 3};
  int samples = 20;
  std::uint64_t seed = 0;
  int mip_arc_limit = 12;  // MIP and brute-force checks only up to this many arcs
  double tol = 1e-6;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool ok() const;
};

VerifyReport run_verify(const Instance& inst, const VerifyOptions& options = {});

}  // namespace aggrenet
