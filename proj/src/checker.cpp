#include <cmath>

#include "aggrenet/solve.hpp"

namespace aggrenet {

std::vector<Violation> check_solution(const Model& m, const Assignment& a, double tol) {
  std::vector<double> x(m.variable_count());
  for (int j = 0; j < m.variable_count(); ++j) {
    const Variable& v = m.variable(j);
    auto it = a.find(v.name);
    if (it == a.end()) throw MissingVariable(v.name);
    x[j] = it->second;
  }

  std::vector<Violation> out;
  for (int j = 0; j < m.variable_count(); ++j) {
    const Variable& v = m.variable(j);
    if (x[j] < v.lower - tol) out.push_back({ViolationType::LowerBound, v.name, v.lower - x[j]});
    if (x[j] > v.upper + tol) out.push_back({ViolationType::UpperBound, v.name, x[j] - v.upper});
    if (v.integer) {
      const double dist = std::abs(x[j] - std::round(x[j]));
      if (dist > tol) out.push_back({ViolationType::Integrality, v.name, dist});
    }
  }
  for (const Constraint& c : m.constraints()) {
    double lhs = 0.0;
    for (const Term& t : c.terms) lhs += t.coef * x[t.var];
    double excess = 0.0;
    switch (c.sense) {
      case Sense::LessEqual: excess = lhs - c.rhs; break;
      case Sense::GreaterEqual: excess = c.rhs - lhs; break;
      case Sense::Equal: excess = std::abs(lhs - c.rhs); break;
    }
    if (excess > tol) out.push_back({ViolationType::Row, c.name, excess});
  }
  return out;
}

}  // namespace aggrenet
