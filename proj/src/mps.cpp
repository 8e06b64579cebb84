#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "aggrenet/model.hpp"

namespace aggrenet {
namespace {

constexpr std::string_view kObjectiveRow = "obj";

char sense_code(Sense s) {
  switch (s) {
    case Sense::LessEqual: return 'L';
    case Sense::Equal: return 'E';
    case Sense::GreaterEqual: return 'G';
  }
  return 'E';
}

double number(std::string_view s, std::size_t line) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    if (s == "inf" || s == "Inf" || s == "infinity") return kInfinity;
    if (s == "-inf" || s == "-Inf" || s == "-infinity") return -kInfinity;
    throw MpsError(line, fmt::format("'{}' is not a number", s));
  }
  return v;
}

}  // namespace

std::string emit_mps(const Model& m) {
  std::string out = fmt::format("NAME {}\nROWS\n N {}\n", m.name().empty() ? "model" : m.name(),
                                kObjectiveRow);
  for (const Constraint& c : m.constraints()) out += fmt::format(" {} {}\n", sense_code(c.sense), c.name);

  std::vector<std::vector<std::pair<int, double>>> columns(m.variable_count());
  for (int i = 0; i < m.constraint_count(); ++i) {
    for (const Term& t : m.constraint(i).terms) columns[t.var].emplace_back(i, t.coef);
  }
  out += "COLUMNS\n";
  for (int j = 0; j < m.variable_count(); ++j) {
    const Variable& v = m.variable(j);
    if (v.objective != 0.0 || columns[j].empty()) {
      out += fmt::format(" {} {} {}\n", v.name, kObjectiveRow, v.objective);
    }
    for (auto [i, coef] : columns[j]) out += fmt::format(" {} {} {}\n", v.name, m.constraint(i).name, coef);
  }
  out += "RHS\n";
  for (const Constraint& c : m.constraints()) {
    if (c.rhs != 0.0) out += fmt::format(" RHS {} {}\n", c.name, c.rhs);
  }
  out += "BOUNDS\n";
  for (const Variable& v : m.variables()) {
    if (v.integer && v.lower == 0.0 && v.upper == 1.0) {
      out += fmt::format(" BV BND {}\n", v.name);
      continue;
    }
    if (v.lower == v.upper) {
      out += fmt::format(" FX BND {} {}\n", v.name, v.lower);
      continue;
    }
    if (v.lower == -kInfinity && v.upper == kInfinity) {
      out += fmt::format(" FR BND {}\n", v.name);
      continue;
    }
    if (v.lower == -kInfinity) out += fmt::format(" MI BND {}\n", v.name);
    else if (v.lower != 0.0) out += fmt::format(" LO BND {} {}\n", v.name, v.lower);
    if (v.upper != kInfinity) out += fmt::format(" UP BND {} {}\n", v.name, v.upper);
  }
  bool general = false;
  for (const Variable& v : m.variables()) general = general || (v.integer && !(v.lower == 0.0 && v.upper == 1.0));
  if (general) {
    out += "INTEGERS\n";
    for (const Variable& v : m.variables()) {
      if (v.integer && !(v.lower == 0.0 && v.upper == 1.0)) out += fmt::format(" {}\n", v.name);
    }
  }
  out += "ENDATA\n";
  return out;
}

Model parse_mps(std::string_view text) {
  enum class Section { None, Rows, Columns, Rhs, Ranges, Bounds, Integers, End };
  Section section = Section::None;

  struct RowDecl {
    std::string name;
    Sense sense;
    double rhs = 0.0;
    std::vector<Term> terms;
  };
  std::string name;
  std::string objective_row;
  std::vector<RowDecl> rows;
  std::map<std::string, int, std::less<>> row_index;
  Model model;
  bool integer_marker = false;

  auto variable_of = [&](std::string_view col, std::size_t line, bool create) -> int {
    if (auto j = model.find_variable(col)) return *j;
    if (!create) throw MpsError(line, fmt::format("unknown column '{}'", col));
    Variable v;
    v.name = std::string(col);
    v.kind = var_kind_from_name(col);
    v.integer = integer_marker;
    return model.add_variable(std::move(v));
  };
  auto add_entry = [&](int j, std::string_view row, std::string_view value, std::size_t line) {
    const double coef = number(value, line);
    if (row == objective_row) {
      model.set_objective(j, coef);
      return;
    }
    auto it = row_index.find(row);
    if (it == row_index.end()) throw MpsError(line, fmt::format("unknown row '{}'", row));
    rows[it->second].terms.push_back({j, coef});
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size() && section != Section::End) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (raw.empty() || raw.front() == '*') continue;

    std::istringstream in{std::string(raw)};
    std::vector<std::string> f;
    for (std::string s; in >> s;) f.push_back(std::move(s));
    if (f.empty()) continue;

    const bool header = raw.front() != ' ' && raw.front() != '\t';
    if (header) {
      const std::string& h = f[0];
      if (h == "NAME") name = f.size() > 1 ? f[1] : std::string();
      else if (h == "ROWS") section = Section::Rows;
      else if (h == "COLUMNS") section = Section::Columns;
      else if (h == "RHS") section = Section::Rhs;
      else if (h == "RANGES") section = Section::Ranges;
      else if (h == "BOUNDS") section = Section::Bounds;
      else if (h == "INTEGERS") section = Section::Integers;
      else if (h == "ENDATA") section = Section::End;
      else throw MpsError(line_no, fmt::format("unknown section '{}'", h));
      continue;
    }

    switch (section) {
      case Section::None:
        throw MpsError(line_no, "data line before any section header");
      case Section::Rows: {
        if (f.size() != 2) throw MpsError(line_no, "ROWS entry needs '<type> <name>'");
        const std::string& t = f[0];
        if (t == "N") {
          if (objective_row.empty()) objective_row = f[1];
          continue;
        }
        Sense s;
        if (t == "L") s = Sense::LessEqual;
        else if (t == "E") s = Sense::Equal;
        else if (t == "G") s = Sense::GreaterEqual;
        else throw MpsError(line_no, fmt::format("unknown row type '{}'", t));
        if (!row_index.emplace(f[1], static_cast<int>(rows.size())).second) {
          throw MpsError(line_no, fmt::format("duplicate row '{}'", f[1]));
        }
        rows.push_back({f[1], s, 0.0, {}});
        break;
      }
      case Section::Columns: {
        if (f.size() >= 3 && f[1] == "'MARKER'") {
          if (f[2] == "'INTORG'") integer_marker = true;
          else if (f[2] == "'INTEND'") integer_marker = false;
          else throw MpsError(line_no, fmt::format("unknown marker {}", f[2]));
          continue;
        }
        if (f.size() != 3 && f.size() != 5) {
          throw MpsError(line_no, "COLUMNS entry needs '<col> <row> <value> [<row> <value>]'");
        }
        const int j = variable_of(f[0], line_no, true);
        add_entry(j, f[1], f[2], line_no);
        if (f.size() == 5) add_entry(j, f[3], f[4], line_no);
        break;
      }
      case Section::Rhs: {
        if (f.size() != 3 && f.size() != 5) {
          throw MpsError(line_no, "RHS entry needs '<set> <row> <value> [<row> <value>]'");
        }
        for (std::size_t p = 1; p + 1 < f.size(); p += 2) {
          const double v = number(f[p + 1], line_no);
          if (f[p] == objective_row) continue;
          auto it = row_index.find(f[p]);
          if (it == row_index.end()) throw MpsError(line_no, fmt::format("unknown row '{}'", f[p]));
          rows[it->second].rhs = v;
        }
        break;
      }
      case Section::Ranges:
        throw MpsError(line_no, "RANGES are not supported");
      case Section::Bounds: {
        if (f.size() < 3) throw MpsError(line_no, "BOUNDS entry needs '<type> <set> <col> [<value>]'");
        const std::string& t = f[0];
        const int j = variable_of(f[2], line_no, false);
        Variable v = model.variable(j);
        auto value = [&]() {
          if (f.size() != 4) throw MpsError(line_no, fmt::format("bound type {} needs a value", t));
          return number(f[3], line_no);
        };
        if (t == "BV") {
          v.lower = 0.0;
          v.upper = 1.0;
          v.integer = true;
        } else if (t == "UP") v.upper = value();
        else if (t == "LO") v.lower = value();
        else if (t == "FX") v.lower = v.upper = value();
        else if (t == "FR") {
          v.lower = -kInfinity;
          v.upper = kInfinity;
        } else if (t == "MI") v.lower = -kInfinity;
        else if (t == "PL") v.upper = kInfinity;
        else if (t == "LI") {
          v.lower = value();
          v.integer = true;
        } else if (t == "UI") {
          v.upper = value();
          v.integer = true;
        } else throw MpsError(line_no, fmt::format("unknown bound type '{}'", t));
        model.set_bounds(j, v.lower, v.upper);
        model.set_integer(j, v.integer);
        break;
      }
      case Section::Integers: {
        const int j = variable_of(f[0], line_no, false);
        model.set_integer(j, true);
        break;
      }
      case Section::End:
        break;
    }
  }
  if (section != Section::End) throw MpsError(line_no, "missing ENDATA");

  model.set_name(name);
  for (RowDecl& r : rows) {
    const RowClass cls = row_class_from_name(r.name);
    model.add_constraint({std::move(r.name), r.sense, r.rhs, std::move(r.terms), cls});
  }
  return model;
}

}  // namespace aggrenet
