#include <fmt/format.h>

#include "aggrenet/analysis.hpp"

namespace aggrenet {

double bound_loss(double z_base, double z_other) {
  if (!(z_base > 0.0)) throw NonPositiveBase(fmt::format("bound loss needs a positive base, got {}", z_base));
  return 100.0 * (z_base - z_other) / z_base;
}

double size_reduction(const ModelStats& base, const ModelStats& other) {
  if (base.size <= 0) throw NonPositiveBase("size reduction needs a nonempty base model");
  return 100.0 * (1.0 - static_cast<double>(other.size) / static_cast<double>(base.size));
}

double time_reduction(double t_base, double t_other) {
  if (!(t_base > 0.0)) throw NonPositiveBase(fmt::format("time reduction needs a positive base, got {}", t_base));
  return 100.0 * (1.0 - t_other / t_base);
}

double fa_reduction(const Instance& inst) {
  const int k = inst.commodity_count();
  if (k <= 0) throw NonPositiveBase("FA reduction needs at least one commodity");
  return 100.0 * static_cast<double>(k - static_cast<int>(inst.origins().size())) / k;
}

}  // namespace aggrenet
