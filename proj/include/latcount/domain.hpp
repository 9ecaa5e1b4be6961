#pragma once

#include <span>
#include <vector>

#include "latcount/angular.hpp"
#include "latcount/flow.hpp"
#include "latcount/partition.hpp"

namespace latcount {

// Omega_T(I, B) = { z : N(z) in I, xi(z) in B, 0 < ||z_j|| < T for all j },
// with N(z) = prod_j ||z_j||^{d_j} and xi(z) = (z_1/||z_1||, ..., z_k/||z_k||).
class DomainSpec {
 public:
  DomainSpec(DimensionPartition partition, Interval interval, AngularRegion region, double T);

  const DimensionPartition& partition() const noexcept { return partition_; }
  const Interval& interval() const noexcept { return interval_; }
  const AngularRegion& region() const noexcept { return region_; }
  double T() const noexcept { return T_; }
  double log_T() const noexcept { return log_T_; }

  // Smallest T for which the (u, s, xi) description and the volume
  // polynomial are valid: T^d > sup I.
  double validity_threshold() const noexcept;
  bool above_threshold() const noexcept { return T_ > validity_threshold(); }

  DomainSpec with_T(double T) const { return DomainSpec(partition_, interval_, region_, T); }
  DomainSpec with_region(AngularRegion region) const {
    return DomainSpec(partition_, interval_, std::move(region), T_);
  }

 private:
  DimensionPartition partition_;
  Interval interval_;
  AngularRegion region_;
  double T_;
  double log_T_;
};

// (u, s, xi) coordinates of a point with nonzero blocks.
struct CoordPoint {
  std::vector<double> u;   // log ||z_j||, j < k
  double s = 0.0;          // log N(z)
  std::vector<double> xi;  // concatenated unit blocks, length d
};

std::vector<double> block_norms(std::span<const double> z, const DimensionPartition& partition);

CoordPoint coord_forward(std::span<const double> z, const DimensionPartition& partition);
std::vector<double> coord_inverse(const CoordPoint& p, const DimensionPartition& partition);

bool domain_membership(std::span<const double> z, const DomainSpec& spec);

// Smallest distance (in log-norm, log-N and geodesic angle units) from z to
// any of the defining constraints of Omega_T; 0 for zero blocks.
double boundary_margin(std::span<const double> z, const DomainSpec& spec);
// True when z lies in the closure of Omega_T (up to tol) and within tol of its boundary.
bool near_boundary(std::span<const double> z, const DomainSpec& spec, double tol = 1e-12);

// Vol_{k-1}(S_1) = 1/(k-1)!.
double simplex_volume(int k);

// Exact volume; requires T above the validity threshold.
double domain_volume(const DomainSpec& spec);
// Volume for an arbitrary T > 0 (the s-range is clipped to s < d log T).
double domain_volume_any_T(const DimensionPartition& partition, const Interval& interval,
                           double kappa, double T);
// Coefficients c_0, ..., c_{k-1} with Vol(Omega_T) = sum_i c_i (log T)^i above threshold.
std::vector<double> volume_polynomial(const DimensionPartition& partition,
                                      const Interval& interval, const AngularRegion& region);

}  // namespace latcount
