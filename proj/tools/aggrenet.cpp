#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "aggrenet/aggregation.hpp"
#include "aggrenet/analysis.hpp"
#include "aggrenet/instance.hpp"
#include "aggrenet/model.hpp"
#include "aggrenet/paths.hpp"
#include "aggrenet/solve.hpp"

namespace {

using namespace aggrenet;

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError(fmt::format("cannot write '{}'", path));
  out << text;
}

InstanceFormat format_of(const std::string& s) {
  if (s == "dow") return InstanceFormat::Dow;
  if (s == "native") return InstanceFormat::Native;
  return InstanceFormat::Auto;
}

Variant variant_of(const std::string& s) {
  if (s == "pai") return Variant::PAi;
  if (s == "pae") return Variant::PAe;
  return Variant::PA;
}

PartialAggregation aggregation_of(const std::string& spec, const Instance& inst) {
  if (spec == "da") return build_da_aggregation(inst);
  if (spec == "fa") return build_fa_aggregation(inst);
  if (spec.rfind("ksp:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(spec.substr(4));
    } catch (const std::exception&) {
      throw UsageError(fmt::format("bad K in '{}'", spec));
    }
    if (k < 0) throw UsageError("K must be nonnegative");
    return build_ksp_aggregation(inst, k);
  }
  return parse_aggregation(read_file(spec), inst);
}

std::vector<int> split_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  for (std::string tok; std::getline(in, tok, ',');) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("'{}' is not an integer", tok));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build, solve and compare aggregated network design formulations"};
  app.require_subcommand(1);

  std::string format = "auto";
  std::string input, output;

  auto* parse = app.add_subcommand("parse", "Parse and validate an instance");
  parse->add_option("instance", input, "Instance file")->required()->check(CLI::ExistingFile);
  parse->add_option("--format", format, "auto, dow or native")
      ->check(CLI::IsMember({"auto", "dow", "native"}));
  std::string emit_native_path;
  parse->add_option("--emit-native", emit_native_path, "Write the instance in native format");

  GeneratorParams gen_params;
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("--nodes", gen_params.nodes, "Node count")->required();
  gen->add_option("--density", gen_params.arc_density, "Arc density in (0,1]")->required();
  gen->add_option("--commodities", gen_params.commodities, "Commodity count")->required();
  gen->add_option("--capacity-ratio", gen_params.capacity_ratio, "Capacity relative to total demand");
  gen->add_option("--fixed-ratio", gen_params.fixed_to_flow_ratio, "Fixed cost scale");
  gen->add_option("--seed", gen_params.seed, "Random seed");
  gen->add_option("-o,--output", output, "Output file")->required();

  int from = 0, to = 0, k_paths = 1;
  auto* ksp = app.add_subcommand("ksp", "K shortest loopless paths under surrogate costs");
  ksp->add_option("instance", input, "Instance file")->required()->check(CLI::ExistingFile);
  ksp->add_option("--from", from, "Origin node (1-based)")->required();
  ksp->add_option("--to", to, "Destination node (1-based)")->required();
  ksp->add_option("--k", k_paths, "Number of paths")->check(CLI::NonNegativeNumber);
  ksp->add_option("--format", format)->check(CLI::IsMember({"auto", "dow", "native"}));

  std::string method = "ksp";
  int k_agg = 1;
  auto* aggregate = app.add_subcommand("aggregate", "Build a partial aggregation");
  aggregate->add_option("instance", input, "Instance file")->required()->check(CLI::ExistingFile);
  aggregate->add_option("--method", method, "da, fa or ksp")->check(CLI::IsMember({"da", "fa", "ksp"}));
  aggregate->add_option("--k", k_agg, "Paths per commodity for ksp")->check(CLI::NonNegativeNumber);
  aggregate->add_option("-o,--output", output, "Aggregation file")->required();
  aggregate->add_option("--format", format)->check(CLI::IsMember({"auto", "dow", "native"}));

  std::string agg_spec = "da", variant = "pa", emit;
  bool cutset = false, relax_flag = false;
  BuildOptions build_opts;
  auto* build = app.add_subcommand("build", "Build a formulation and emit it");
  build->add_option("instance", input, "Instance file")->required()->check(CLI::ExistingFile);
  build->add_option("--agg", agg_spec, "Aggregation file, da, fa or ksp:K");
  build->add_option("--variant", variant, "pa, pai or pae")->check(CLI::IsMember({"pa", "pai", "pae"}));
  build->add_flag("--cutset", cutset, "Add single-node cut-set rows");
  build->add_flag("--clip-si", build_opts.clip_si, "Clip SI coefficients at the capacity");
  build->add_flag("--relax", relax_flag, "Make design variables continuous");
  build->add_flag("--full-labeling", build_opts.full_labeling, "Labeling rows everywhere (pai)");
  build->add_flag("--drop-redundant-flow", build_opts.drop_redundant_flow,
                  "Drop aggregated flow rows at gadget nodes (pae)");
  build->add_option("--emit", emit, "mps:<path> or stats")->required();
  build->add_option("--format", format)->check(CLI::IsMember({"auto", "dow", "native"}));

  bool mip = false;
  double tol = 1e-6, time_limit = 300.0;
  auto* solve = app.add_subcommand("solve", "Solve an MPS model");
  solve->add_option("model", input, "MPS file")->required()->check(CLI::ExistingFile);
  solve->add_flag("--mip", mip, "Branch and bound on integer variables");
  solve->add_option("--tol", tol, "Feasibility tolerance")->check(CLI::PositiveNumber);
  solve->add_option("--time-limit", time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve->add_option("-o,--output", output, "Assignment file (default <model>.sol)");

  std::string variants = "da,fa,pa,pai,pae", k_list = "1,2,3", report_path, gnuplot_path;
  int workers = 1, runs = 3;
  auto* compare = app.add_subcommand("compare", "Compare LP relaxations across formulations");
  compare->add_option("instance", input, "Instance file")->required()->check(CLI::ExistingFile);
  compare->add_option("--variants", variants, "Comma-separated list of da,fa,pa,pai,pae");
  compare->add_option("--k", k_list, "Comma-separated K values");
  compare->add_option("--report", report_path, "CSV output (stdout when omitted)");
  compare->add_option("--gnuplot", gnuplot_path, "Gnuplot data output");
  compare->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  compare->add_option("--runs", runs, "Timing runs per row (median)")->check(CLI::PositiveNumber);
  compare->add_flag("--cutset", cutset, "Add single-node cut-set rows");
  compare->add_flag("--clip-si", build_opts.clip_si, "Clip SI coefficients at the capacity");
  compare->add_option("--format", format)->check(CLI::IsMember({"auto", "dow", "native"}));

  VerifyOptions verify_opts;
  std::string verify_k = "0,1,2,3";
  auto* verify = app.add_subcommand("verify", "Run the invariant suite on an instance");
  verify->add_option("instance", input, "Instance file")->required()->check(CLI::ExistingFile);
  verify->add_option("--k", verify_k, "Comma-separated K values");
  verify->add_option("--samples", verify_opts.samples, "LP vertices per mapping check")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", verify_opts.seed, "Vertex sampling seed");
  verify->add_option("--mip-arc-limit", verify_opts.mip_arc_limit, "Largest arc count for MIP checks");
  verify->add_option("--format", format)->check(CLI::IsMember({"auto", "dow", "native"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*parse) {
      const Instance inst = load_instance(input, format_of(format));
      const ValidationReport rep = validate(inst);
      fmt::print("name {}\nnodes {}\narcs {}\ncommodities {}\norigins {}\n", inst.name(), inst.node_count(),
                 inst.arc_count(), inst.commodity_count(), rep.origin_count);
      for (const InstanceViolation& v : rep.violations) fmt::print("violation {} {}\n", to_string(v.kind), v.detail);
      if (!emit_native_path.empty()) write_file(emit_native_path, emit_native(inst));
      return rep.ok() ? kOk : kDomainError;
    }
    if (*gen) {
      const Instance inst = generate_random(gen_params);
      write_file(output, emit_native(inst));
      fmt::print("seed {}\nname {}\nnodes {}\narcs {}\ncommodities {}\n", gen_params.seed, inst.name(),
                 inst.node_count(), inst.arc_count(), inst.commodity_count());
      return kOk;
    }
    if (*ksp) {
      const Instance inst = load_instance(input, format_of(format));
      if (from < 1 || from > inst.node_count() || to < 1 || to > inst.node_count()) {
        throw UsageError(fmt::format("nodes must be in [1, {}]", inst.node_count()));
      }
      const auto costs = surrogate_costs(inst);
      const auto paths = k_shortest_paths(inst, costs, from - 1, to - 1, k_paths);
      for (std::size_t r = 0; r < paths.size(); ++r) {
        std::string nodes;
        for (int v : paths[r].nodes) nodes += fmt::format("{}{}", nodes.empty() ? "" : " ", v + 1);
        fmt::print("{} {} {}\n", r + 1, paths[r].cost, nodes);
      }
      return kOk;
    }
    if (*aggregate) {
      const Instance inst = load_instance(input, format_of(format));
      PartialAggregation pa = method == "da"   ? build_da_aggregation(inst)
                              : method == "fa" ? build_fa_aggregation(inst)
                                               : build_ksp_aggregation(inst, k_agg);
      write_file(output, emit_aggregation(pa, inst));
      const LayerNetworkSize size = layer_network_size(pa, inst);
      fmt::print("dispersions {}\nlayer_nodes {}\nlayer_arcs {}\n", pa.dispersions.size(), size.nodes, size.arcs);
      return kOk;
    }
    if (*build) {
      const Variant v = variant_of(variant);
      if (build_opts.full_labeling && v != Variant::PAi) throw UsageError("--full-labeling requires --variant pai");
      if (build_opts.drop_redundant_flow && v != Variant::PAe) {
        throw UsageError("--drop-redundant-flow requires --variant pae");
      }
      std::string mps_path;
      if (emit.rfind("mps:", 0) == 0) mps_path = emit.substr(4);
      else if (emit != "stats") throw UsageError("--emit takes mps:<path> or stats");
      const Instance inst = load_instance(input, format_of(format));
      const PartialAggregation pa = aggregation_of(agg_spec, inst);
      Model m = build_model(inst, pa, v, build_opts);
      if (cutset) m = add_cutset_constraints(std::move(m), inst);
      if (relax_flag) m = relax(std::move(m));
      if (!mps_path.empty()) write_file(mps_path, emit_mps(m));
      const ModelStats s = stats(m);
      fmt::print("rows {}\ncols {}\nnonzeros {}\nsize {}\ndensity {:.6f}\n", s.rows, s.cols, s.nonzeros, s.size,
                 s.density);
      for (const auto& [cls, count] : s.by_class) fmt::print("rows_{} {}\n", to_string(cls), count);
      return kOk;
    }
    if (*solve) {
      const Model m = parse_mps(read_file(input));
      if (output.empty()) output = input + ".sol";
      std::vector<double> values;
      bool ok = false;
      if (mip) {
        MipOptions opt;
        opt.time_limit_s = time_limit;
        opt.lp.feasibility_tol = tol;
        const MipSolution s = solve_mip(m, opt);
        fmt::print("status {}\nobjective {}\nbound {}\ngap {}\nnodes {}\n", to_string(s.status), s.incumbent,
                   s.bound, s.gap, s.nodes);
        ok = s.status == MipStatus::Optimal || s.status == MipStatus::Feasible;
        values = s.values;
      } else {
        LpOptions opt;
        opt.feasibility_tol = tol;
        const LpSolution s = solve_lp(m, opt);
        fmt::print("status {}\nobjective {}\niterations {}\n", to_string(s.status), s.objective, s.iterations);
        ok = s.status == LpStatus::Optimal;
        values = s.values;
      }
      if (!ok) return kDomainError;
      std::string sol;
      for (int j = 0; j < m.variable_count(); ++j) sol += fmt::format("{} {}\n", m.variable(j).name, values[j]);
      write_file(output, sol);
      return kOk;
    }
    if (*compare) {
      CompareOptions opt;
      opt.formulations.clear();
      std::stringstream in(variants);
      for (std::string tok; std::getline(in, tok, ',');) {
        auto f = parse_formulation(tok);
        if (!f) throw UsageError(fmt::format("unknown variant '{}'", tok));
        opt.formulations.push_back(*f);
      }
      opt.k_values = split_ints(k_list);
      for (int k : opt.k_values) {
        if (k < 0) throw UsageError("K values must be nonnegative");
      }
      opt.build = build_opts;
      opt.cutset = cutset;
      opt.workers = workers;
      opt.timing_runs = runs;
      const Instance inst = load_instance(input, format_of(format));
      const MetricsReport report = compare_formulations(inst, opt);
      if (report_path.empty()) fmt::print("{}", report.to_csv());
      else write_file(report_path, report.to_csv());
      if (!gnuplot_path.empty()) write_file(gnuplot_path, report.to_gnuplot());
      return kOk;
    }
    if (*verify) {
      verify_opts.k_values = split_ints(verify_k);
      const Instance inst = load_instance(input, format_of(format));
      fmt::print("seed {}\n", verify_opts.seed);
      const VerifyReport report = run_verify(inst, verify_opts);
      std::size_t passed = 0;
      for (const CheckResult& c : report.checks) {
        passed += c.passed ? 1 : 0;
        fmt::print("{} {}{}{}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail.empty() ? "" : ": ", c.detail);
      }
      fmt::print("summary {}/{} checks passed\n", passed, report.checks.size());
      return report.ok() ? kOk : kDomainError;
    }
  } catch (const UsageError& e) {
    fmt::print(stderr, "error: usage: {}\n", e.what());
    return kUsageError;
  } catch (const ParseError& e) {
    fmt::print(stderr, "error: parse: {}: line {}: {}\n", to_string(e.kind()), e.line(), e.what());
    return kDomainError;
  } catch (const Error& e) {
    fmt::print(stderr, "error: domain: {}\n", e.what());
    return kDomainError;
  }
  return kUsageError;
}
