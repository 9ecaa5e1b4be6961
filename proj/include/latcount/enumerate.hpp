#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "latcount/lattice.hpp"

namespace latcount {

// Fincke-Pohst enumeration of integer vectors m with
//   sum_i w_i^2 ((m B)_i - c_i)^2 <= r2,
// B the rows of `basis`, w per-coordinate weights, c the centre.
class EllipsoidEnumerator {
 public:
  EllipsoidEnumerator(const RowMatrix& basis, std::span<const double> weights,
                      std::span<const double> center, double r2);

  // visit(coeffs, approx_point) for every solution; approx_point is m B in
  // plain floating point (callers recompute canonical points as needed).
  template <typename Visit>
  void run(Visit&& visit) {
    if (n_ == 0 || !(r2_ >= 0.0)) return;
    level(n_ - 1, 0.0, visit);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  std::uint64_t solutions() const noexcept { return solutions_; }

 private:
  template <typename Visit>
  void level(int i, double partial, Visit& visit) {
    // centre of coordinate i given the chosen x_{i+1..n-1}
    double c = t_[i];
    for (int j = i + 1; j < n_; ++j) c -= static_cast<double>(x_[j]) * mu_[j * n_ + i];
    const double rem = r2_ - partial;
    if (rem < 0.0) return;
    const double width = std::sqrt(rem / bn_[i]);
    const double lo = std::ceil(c - width), hi = std::floor(c + width);
    const double* row = basis_.data() + static_cast<std::size_t>(i) * n_;
    double* pt = pts_.data() + static_cast<std::size_t>(i) * n_;
    const double* above = pts_.data() + static_cast<std::size_t>(i + 1) * n_;
    for (double xv = lo; xv <= hi; xv += 1.0) {
      ++nodes_;
      const double diff = xv - c;
      const double next = partial + diff * diff * bn_[i];
      if (next > r2_) continue;
      x_[i] = static_cast<std::int64_t>(xv);
      for (int c2 = 0; c2 < n_; ++c2) pt[c2] = above[c2] + xv * row[c2];
      if (i == 0) {
        ++solutions_;
        visit(std::span<const std::int64_t>(x_), std::span<const double>(pt, n_));
      } else {
        level(i - 1, next, visit);
      }
    }
    x_[i] = 0;
  }

  int n_;
  double r2_;
  RowMatrix basis_;
  std::vector<double> mu_, bn_, t_;
  std::vector<std::int64_t> x_;
  std::vector<double> pts_;  // (n+1) x n partial sums of x_j b_j, j >= level
  std::uint64_t nodes_ = 0, solutions_ = 0;
};

// Closed axis-aligned box lo_i <= z_i <= hi_i.
struct BoxConstraint {
  std::vector<double> lo, hi;
  static BoxConstraint symmetric(int d, double half_width);
  bool contains(std::span<const double> z) const;
};

struct LatticePoint {
  std::vector<std::int64_t> coeffs;  // with respect to the input basis
  std::vector<double> point;         // canonical coordinates
};

// Every lattice point in the box (origin excluded when asked), with
// coefficients relative to `basis`. Throws when the candidate count exceeds
// max_candidates.
std::vector<LatticePoint> enumerate_in_box(const LatticeBasis& basis, const BoxConstraint& box,
                                           bool exclude_origin = true,
                                           std::uint64_t max_candidates = 100'000'000);

}  // namespace latcount
