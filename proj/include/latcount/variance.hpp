#pragma once

#include "latcount/angular.hpp"
#include "latcount/partition.hpp"

namespace latcount {

// Riemann zeta at an integer d >= 2: direct summation of `terms` terms plus
// the midpoint of the integral tail bracket. `error` bounds |zeta(d) - value|.
struct ZetaValue {
  double value = 0.0;
  double error = 0.0;
};
ZetaValue zeta(int d, long terms = 1'000'000);

// zeta(s) for real s > 1 by Euler-Maclaurin summation (about 1e-13 relative).
double zeta_real(double s);

// Limiting variance sigma(I, B)^2 of the normalized discrepancy,
//   (1/zeta(d)) sum_{p,q} Leb(p^d I cap q^d I) / (p^d q^d Leb(I)) * (1 + kappa(B cap -B)/kappa(B)),
// with the double sum truncated to max(p, q) <= truncation_order.
struct VarianceResult {
  double value = 0.0;      // truncated series
  int truncation_order = 0;
  double tail_bound = 0.0; // rigorous bound on (true series - value) >= 0
  double partial_sum = 0.0;      // sum_{p,q <= P} of the Leb-ratio terms
  double symmetry_factor = 1.0;  // 1 + kappa(B cap -B)/kappa(B)
  ZetaValue zeta;
};

VarianceResult variance_series(const Interval& interval, const AngularRegion& region,
                               const DimensionPartition& partition, int truncation_order);

// Series limit: truncated sum plus the midpoint of a rigorous bracket for
// the omitted terms; `error` bounds the distance to the true limit.
struct VarianceLimit {
  double value = 0.0;
  double error = 0.0;
  int truncation_order = 0;
};
VarianceLimit variance_limit(const Interval& interval, const AngularRegion& region,
                             const DimensionPartition& partition, int truncation_order);

// Single term Leb(p^d I cap q^d I) / (p^d q^d Leb(I)).
double variance_term(const Interval& interval, int d, long p, long q);

}  // namespace latcount
