#include "aggrenet/error.hpp"

#include <fmt/format.h>

namespace aggrenet {

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::MalformedHeader: return "MalformedHeader";
    case ParseErrorKind::FieldCount: return "FieldCount";
    case ParseErrorKind::NonNumericField: return "NonNumericField";
    case ParseErrorKind::CountMismatch: return "CountMismatch";
    case ParseErrorKind::BadMagic: return "BadMagic";
    case ParseErrorKind::SelfLoop: return "SelfLoop";
    case ParseErrorKind::DuplicateArc: return "DuplicateArc";
    case ParseErrorKind::NodeOutOfRange: return "NodeOutOfRange";
    case ParseErrorKind::NegativeCost: return "NegativeCost";
    case ParseErrorKind::NonPositiveCapacity: return "NonPositiveCapacity";
    case ParseErrorKind::NonPositiveDemand: return "NonPositiveDemand";
    case ParseErrorKind::SameOriginDestination: return "SameOriginDestination";
  }
  return "Unknown";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : Error(line > 0 ? fmt::format("{} at line {}: {}", to_string(kind), line, detail)
                     : fmt::format("{}: {}", to_string(kind), detail)),
      kind_(kind),
      line_(line) {}

MpsError::MpsError(std::size_t line, const std::string& detail)
    : Error(fmt::format("MPS line {}: {}", line, detail)), line_(line) {}

Unreachable::Unreachable(int from, int to, int commodity)
    : Error(commodity >= 0
                ? fmt::format("commodity {} unreachable: no path from node {} to node {}",
                              commodity + 1, from + 1, to + 1)
                : fmt::format("no path from node {} to node {}", from + 1, to + 1)),
      from_(from),
      to_(to),
      commodity_(commodity) {}

}  // namespace aggrenet
