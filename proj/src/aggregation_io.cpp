#include <algorithm>
#include <charconv>
#include <sstream>

#include <fmt/format.h>

#include "aggrenet/aggregation.hpp"

namespace aggrenet {
namespace {

struct Record {
  std::size_t line;
  std::vector<std::string> fields;
};

std::vector<Record> records(std::string_view text) {
  std::vector<Record> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Record r{number, {}};
    for (std::string f; in >> f;) r.fields.push_back(std::move(f));
    if (!r.fields.empty()) out.push_back(std::move(r));
    pos = end + 1;
  }
  return out;
}

int index_field(const Record& r, std::size_t i, int lo, int hi, const char* what) {
  if (i >= r.fields.size()) {
    throw ParseError(ParseErrorKind::FieldCount, r.line, fmt::format("missing {}", what));
  }
  const std::string& s = r.fields[i];
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError(ParseErrorKind::NonNumericField, r.line,
                     fmt::format("{} '{}' is not an integer", what, s));
  }
  if (v < lo || v > hi) {
    throw ParseError(ParseErrorKind::NodeOutOfRange, r.line,
                     fmt::format("{} {} outside [{}, {}]", what, v, lo, hi));
  }
  return v;
}

void expect_fields(const Record& r, std::size_t n, const char* shape) {
  if (r.fields.size() != n) {
    throw ParseError(ParseErrorKind::FieldCount, r.line,
                     fmt::format("expected '{}' ({} fields), got {}", shape, n, r.fields.size()));
  }
}

}  // namespace

std::string emit_aggregation(const PartialAggregation& pa, const Instance& inst) {
  std::string out = fmt::format("aggregation {} {}\n", pa.dispersions.size(), inst.commodity_count());
  for (const Dispersion& d : pa.dispersions) {
    out += fmt::format("dispersion {} {}", d.origin + 1, d.members.size());
    for (int k : d.members) out += fmt::format(" {}", k + 1);
    out += '\n';
  }
  const CriticalArcSets critical = critical_arcs_of(pa, inst);
  for (int k = 0; k < inst.commodity_count(); ++k) {
    out += fmt::format("critical {} {}", k + 1, critical[k].size());
    for (int a : critical[k]) out += fmt::format(" {} {}", inst.arc(a).tail + 1, inst.arc(a).head + 1);
    out += '\n';
  }
  return out;
}

PartialAggregation parse_aggregation(std::string_view text, const Instance& inst) {
  const auto recs = records(text);
  if (recs.empty() || recs.front().fields.front() != "aggregation") {
    throw ParseError(ParseErrorKind::BadMagic, recs.empty() ? 0 : recs.front().line,
                     "expected 'aggregation <dispersions> <commodities>'");
  }
  const Record& head = recs.front();
  expect_fields(head, 3, "aggregation <dispersions> <commodities>");
  const int n_b = index_field(head, 1, 0, 1 << 30, "dispersion count");
  const int n_k = index_field(head, 2, 0, 1 << 30, "commodity count");
  if (n_k != inst.commodity_count()) {
    throw ParseError(ParseErrorKind::CountMismatch, head.line,
                     fmt::format("file has {} commodities, instance has {}", n_k,
                                 inst.commodity_count()));
  }

  PartialAggregation pa;
  CriticalArcSets critical(n_k);
  std::vector<char> critical_seen(n_k, 0);
  for (std::size_t r = 1; r < recs.size(); ++r) {
    const Record& rec = recs[r];
    const std::string& tag = rec.fields.front();
    if (tag == "dispersion") {
      if (rec.fields.size() < 3) expect_fields(rec, 3, "dispersion <origin> <count> <k>...");
      Dispersion d;
      d.origin = index_field(rec, 1, 1, inst.node_count(), "origin") - 1;
      const int count = index_field(rec, 2, 0, n_k, "member count");
      expect_fields(rec, 3 + count, "dispersion <origin> <count> <k>...");
      for (int i = 0; i < count; ++i) d.members.push_back(index_field(rec, 3 + i, 1, n_k, "commodity") - 1);
      d.disaggregated.assign(inst.arc_count(), {});
      pa.dispersions.push_back(std::move(d));
    } else if (tag == "critical") {
      if (rec.fields.size() < 3) expect_fields(rec, 3, "critical <k> <count> <tail> <head>...");
      const int k = index_field(rec, 1, 1, n_k, "commodity") - 1;
      const int count = index_field(rec, 2, 0, inst.arc_count(), "arc count");
      expect_fields(rec, 3 + 2 * static_cast<std::size_t>(count), "critical <k> <count> <tail> <head>...");
      if (critical_seen[k]) {
        throw ParseError(ParseErrorKind::DuplicateArc, rec.line,
                         fmt::format("second critical record for commodity {}", k + 1));
      }
      critical_seen[k] = 1;
      for (int i = 0; i < count; ++i) {
        const int tail = index_field(rec, 3 + 2 * i, 1, inst.node_count(), "tail") - 1;
        const int hd = index_field(rec, 4 + 2 * i, 1, inst.node_count(), "head") - 1;
        auto a = inst.find_arc(tail, hd);
        if (!a) {
          throw ParseError(ParseErrorKind::NodeOutOfRange, rec.line,
                           fmt::format("arc ({},{}) is not in the instance", tail + 1, hd + 1));
        }
        critical[k].push_back(*a);
      }
    } else {
      throw ParseError(ParseErrorKind::MalformedHeader, rec.line,
                       fmt::format("unknown record '{}'", tag));
    }
  }
  if (static_cast<int>(pa.dispersions.size()) != n_b) {
    throw ParseError(ParseErrorKind::CountMismatch, 0,
                     fmt::format("header declares {} dispersions, found {}", n_b,
                                 pa.dispersions.size()));
  }
  const std::vector<int> owner = pa.owner(n_k);
  for (int k = 0; k < n_k; ++k) {
    if (owner[k] < 0) continue;
    auto& dis = pa.dispersions[owner[k]].disaggregated;
    for (int a : critical[k]) dis[a].push_back(k);
  }
  for (Dispersion& d : pa.dispersions) {
    for (auto& dis : d.disaggregated) {
      std::sort(dis.begin(), dis.end());
      dis.erase(std::unique(dis.begin(), dis.end()), dis.end());
    }
  }
  return pa;
}

}  // namespace aggrenet
