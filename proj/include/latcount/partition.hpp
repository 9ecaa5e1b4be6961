#pragma once

#include <span>
#include <vector>

namespace latcount {

// Block structure (d_1, ..., d_k) of R^d with d = d_1 + ... + d_k.
class DimensionPartition {
 public:
  explicit DimensionPartition(std::vector<int> dims);

  int k() const noexcept { return static_cast<int>(dims_.size()); }
  int d() const noexcept { return d_; }
  int dim(int j) const { return dims_.at(j); }
  // First coordinate index of block j.
  int offset(int j) const { return offsets_.at(j); }
  std::span<const int> dims() const noexcept { return dims_; }
  // Product d_1 * ... * d_{k-1} (empty product is 1).
  double leading_product() const noexcept;

  bool operator==(const DimensionPartition&) const = default;

 private:
  std::vector<int> dims_;
  std::vector<int> offsets_;
  int d_ = 0;
};

// Open interval (lo, hi) with 0 < lo < hi < infinity.
class Interval {
 public:
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  bool contains(double x) const noexcept { return lo_ < x && x < hi_; }
  Interval scaled(double c) const { return Interval(c * lo_, c * hi_); }

  bool operator==(const Interval&) const = default;

 private:
  double lo_;
  double hi_;
};

// Length of the intersection of two open intervals (0 when disjoint).
double overlap_length(double lo1, double hi1, double lo2, double hi2) noexcept;

}  // namespace latcount
