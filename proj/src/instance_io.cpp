#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "aggrenet/instance.hpp"

namespace aggrenet {
namespace {

struct Line {
  std::size_t number;  // 1-based
  std::vector<std::string_view> fields;
};

std::vector<std::string_view> split_fields(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<Line> tokenize(std::string_view text, bool strip_comments) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (strip_comments) {
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    }
    auto fields = split_fields(raw);
    if (!fields.empty()) lines.push_back({number, std::move(fields)});
    pos = end + 1;
  }
  return lines;
}

std::optional<long long> to_integer(std::string_view s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> to_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

long long integer_field(const Line& line, std::size_t i, const char* what) {
  auto v = to_integer(line.fields[i]);
  if (!v) {
    throw ParseError(ParseErrorKind::NonNumericField, line.number,
                     fmt::format("{} '{}' is not an integer", what, line.fields[i]));
  }
  return *v;
}

double real_field(const Line& line, std::size_t i, const char* what) {
  auto v = to_real(line.fields[i]);
  if (!v) {
    throw ParseError(ParseErrorKind::NonNumericField, line.number,
                     fmt::format("{} '{}' is not a number", what, line.fields[i]));
  }
  return *v;
}

struct Counts {
  long long nodes, arcs, commodities;
};

std::optional<Counts> try_header(const Line& line) {
  if (line.fields.size() != 3) return std::nullopt;
  auto n = to_integer(line.fields[0]);
  auto m = to_integer(line.fields[1]);
  auto k = to_integer(line.fields[2]);
  if (!n || !m || !k || *n < 0 || *m < 0 || *k < 0) return std::nullopt;
  return Counts{*n, *m, *k};
}

int node_field(const Line& line, std::size_t i, long long node_count, const char* what) {
  const long long v = integer_field(line, i, what);
  if (v < 1 || v > node_count) {
    throw ParseError(ParseErrorKind::NodeOutOfRange, line.number,
                     fmt::format("{} {} outside [1, {}]", what, v, node_count));
  }
  return static_cast<int>(v - 1);
}

/// Shared body of both formats once the header has been located.
Instance parse_body(const std::vector<Line>& lines, std::size_t first, const Counts& counts,
                    bool strict_arc_fields, std::string name) {
  const std::size_t available = lines.size() - first;
  const std::size_t expected = static_cast<std::size_t>(counts.arcs + counts.commodities);
  if (available != expected) {
    const std::size_t where = available < expected ? (lines.empty() ? 0 : lines.back().number)
                                                   : lines[first + expected].number;
    throw ParseError(ParseErrorKind::CountMismatch, where,
                     fmt::format("header declares {} arc and {} commodity lines "
                                 "({} total) but {} data lines follow",
                                 counts.arcs, counts.commodities, expected, available));
  }

  std::vector<Arc> arcs;
  arcs.reserve(counts.arcs);
  std::set<std::pair<int, int>> seen;
  for (long long a = 0; a < counts.arcs; ++a) {
    const Line& line = lines[first + a];
    const bool bad_count =
        strict_arc_fields ? line.fields.size() != 5 : line.fields.size() < 5;
    if (bad_count) {
      throw ParseError(ParseErrorKind::FieldCount, line.number,
                       fmt::format("arc line has {} fields, expected {}\"tail head cost "
                                   "capacity fixed\"",
                                   line.fields.size(), strict_arc_fields ? "" : "at least "));
    }
    Arc arc;
    arc.tail = node_field(line, 0, counts.nodes, "tail");
    arc.head = node_field(line, 1, counts.nodes, "head");
    arc.cost = real_field(line, 2, "cost");
    arc.capacity = real_field(line, 3, "capacity");
    arc.fixed_cost = real_field(line, 4, "fixed cost");
    if (arc.tail == arc.head) {
      throw ParseError(ParseErrorKind::SelfLoop, line.number,
                       fmt::format("arc ({},{}) is a self-loop", arc.tail + 1, arc.head + 1));
    }
    if (!seen.emplace(arc.tail, arc.head).second) {
      throw ParseError(ParseErrorKind::DuplicateArc, line.number,
                       fmt::format("arc ({},{}) appears twice", arc.tail + 1, arc.head + 1));
    }
    if (!(arc.cost >= 0.0) || !(arc.fixed_cost >= 0.0)) {
      throw ParseError(ParseErrorKind::NegativeCost, line.number, "costs must be nonnegative");
    }
    if (!(arc.capacity > 0.0)) {
      throw ParseError(ParseErrorKind::NonPositiveCapacity, line.number,
                       "capacity must be positive");
    }
    arcs.push_back(arc);
  }

  std::vector<Commodity> commodities;
  commodities.reserve(counts.commodities);
  for (long long k = 0; k < counts.commodities; ++k) {
    const Line& line = lines[first + counts.arcs + k];
    if (line.fields.size() != 3) {
      throw ParseError(ParseErrorKind::FieldCount, line.number,
                       fmt::format("commodity line has {} fields, expected 3 "
                                   "\"origin destination demand\"",
                                   line.fields.size()));
    }
    Commodity c;
    c.origin = node_field(line, 0, counts.nodes, "origin");
    c.destination = node_field(line, 1, counts.nodes, "destination");
    c.demand = real_field(line, 2, "demand");
    if (c.origin == c.destination) {
      throw ParseError(ParseErrorKind::SameOriginDestination, line.number,
                       "origin equals destination");
    }
    if (!(c.demand > 0.0)) {
      throw ParseError(ParseErrorKind::NonPositiveDemand, line.number,
                       "demand must be positive");
    }
    commodities.push_back(c);
  }
  return Instance(std::move(name), static_cast<int>(counts.nodes), std::move(arcs),
                  std::move(commodities));
}

}  // namespace

Instance parse_dow(std::string_view text, std::string name) {
  const auto lines = tokenize(text, false);
  if (lines.empty()) {
    throw ParseError(ParseErrorKind::MalformedHeader, 0, "empty input");
  }
  std::size_t header = 0;
  auto counts = try_header(lines[0]);
  if (!counts) {
    // First line is a free-form title.
    if (name.empty()) {
      const auto& f = lines[0].fields;
      name = std::string(f.front());
    }
    header = 1;
    if (lines.size() < 2 || !(counts = try_header(lines[1]))) {
      const std::size_t where = lines.size() < 2 ? lines[0].number + 1 : lines[1].number;
      throw ParseError(ParseErrorKind::MalformedHeader, where,
                       "expected \"|N| |A| |K|\" as three nonnegative integers");
    }
  }
  return parse_body(lines, header + 1, *counts, false, std::move(name));
}

Instance parse_native(std::string_view text, std::string name) {
  const auto lines = tokenize(text, true);
  if (lines.empty() || lines[0].fields.size() != 2 || lines[0].fields[0] != "mcnd") {
    throw ParseError(ParseErrorKind::BadMagic, lines.empty() ? 0 : lines[0].number,
                     "expected \"mcnd 1\"");
  }
  if (lines[0].fields[1] != "1") {
    throw ParseError(ParseErrorKind::BadMagic, lines[0].number,
                     fmt::format("unsupported version '{}'", lines[0].fields[1]));
  }
  if (lines.size() < 2) {
    throw ParseError(ParseErrorKind::MalformedHeader, lines[0].number + 1,
                     "expected \"n m k\"");
  }
  auto counts = try_header(lines[1]);
  if (!counts) {
    throw ParseError(ParseErrorKind::MalformedHeader, lines[1].number,
                     "expected \"n m k\" as three nonnegative integers");
  }
  return parse_body(lines, 2, *counts, true, std::move(name));
}

std::string emit_native(const Instance& inst) {
  std::string out = "mcnd 1\n";
  out += fmt::format("{} {} {}\n", inst.node_count(), inst.arc_count(), inst.commodity_count());
  for (const Arc& a : inst.arcs()) {
    out += fmt::format("{} {} {} {} {}\n", a.tail + 1, a.head + 1, a.cost, a.capacity,
                       a.fixed_cost);
  }
  for (const Commodity& c : inst.commodities()) {
    out += fmt::format("{} {} {}\n", c.origin + 1, c.destination + 1, c.demand);
  }
  return out;
}

Instance parse_instance(std::string_view text, InstanceFormat format, std::string name) {
  if (format == InstanceFormat::Auto) {
    auto lines = tokenize(text, true);
    format = (!lines.empty() && lines[0].fields[0] == "mcnd") ? InstanceFormat::Native
                                                              : InstanceFormat::Dow;
  }
  return format == InstanceFormat::Native ? parse_native(text, std::move(name))
                                          : parse_dow(text, std::move(name));
}

Instance load_instance(const std::string& path, InstanceFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open instance file '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return parse_instance(buf.str(), format, stem);
}

}  // namespace aggrenet
