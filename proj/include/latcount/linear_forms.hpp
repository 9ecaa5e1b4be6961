#pragma once

#include "latcount/angular.hpp"
#include "latcount/lattice.hpp"
#include "latcount/partition.hpp"

namespace latcount {

// Counting lattice points z with L z in Omega_T(I, B) reduces to counting
// L0 Lambda in Omega_{T'}(I', B'), where L = c R L0, det L0 = 1 and R is the
// identity or (even d, det L < 0) the reflection of the first coordinate.
struct LinearFormReduction {
  double c = 1.0;          // sgn(det L) |det L|^{1/d} for odd d, |det L|^{1/d} for even d
  RowMatrix L0;            // det L0 = 1
  bool reflected = false;  // R is the first-coordinate reflection
  Interval interval;       // I / |det L|
  AngularRegion region;    // sgn(c) B, or R B when reflected
  double reduced_T(double T) const;  // T / |c|
};

LinearFormReduction reduce_linear_forms(const RowMatrix& L, const Interval& interval,
                                        const AngularRegion& region,
                                        const DimensionPartition& partition);

// B with the first coordinate of block 1 negated.
AngularRegion reflect_first_coordinate(const AngularRegion& region);

}  // namespace latcount
