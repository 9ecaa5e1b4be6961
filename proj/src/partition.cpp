#include "latcount/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "latcount/errors.hpp"

namespace latcount {

DimensionPartition::DimensionPartition(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw PreconditionError("partition needs at least one block");
  offsets_.reserve(dims_.size());
  for (int dj : dims_) {
    if (dj < 1) throw PreconditionError("partition block sizes must be positive");
    offsets_.push_back(d_);
    d_ += dj;
  }
}

double DimensionPartition::leading_product() const noexcept {
  double p = 1.0;
  for (int j = 0; j + 1 < k(); ++j) p *= dims_[j];
  return p;
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
    throw PreconditionError("interval must satisfy 0 < lo < hi < inf, got (" +
                            std::to_string(lo) + ", " + std::to_string(hi) + ")");
}

double overlap_length(double lo1, double hi1, double lo2, double hi2) noexcept {
  return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

}  // namespace latcount
