#include "latcount/variance.hpp"

#include <cmath>
#include <string>

#include "latcount/errors.hpp"

namespace latcount {

namespace {

// Neumaier-compensated accumulator.
struct Accumulator {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct TailBracket {
  double lower = 0.0, upper = 0.0;
};

// Bracket for the Leb-ratio terms with max(p, q) > P. For q the larger index,
// the diagonal term is q^{-d} and each off-diagonal inner sum over p < q is
// the sum of the increasing function g(x) = (hi q^{-d} - lo x^{-d})_+ / Leb(I),
// bracketed by C q^{1-d} - q^{-d} <= inner(q) <= C q^{1-d}.
TailBracket series_tail(const Interval& I, int d, long P) {
  const double rho = std::pow(I.lo() / I.hi(), 1.0 / d);
  const double C =
      (I.hi() * (1.0 - rho) - I.lo() * (std::pow(rho, 1.0 - d) - 1.0) / (d - 1.0)) / I.length();
  const double Pd = static_cast<double>(P);
  const double diag_hi = std::pow(Pd, 1.0 - d) / (d - 1.0);
  const double diag_lo = std::pow(Pd + 1.0, 1.0 - d) / (d - 1.0);
  const double off_hi = 2.0 * C * std::pow(Pd, 2.0 - d) / (d - 2.0);
  const double off_lo = 2.0 * C * std::pow(Pd + 1.0, 2.0 - d) / (d - 2.0) - 2.0 * diag_hi;
  return {diag_lo + std::max(0.0, off_lo), diag_hi + off_hi};
}

void check_args(const Interval&, const AngularRegion& region, const DimensionPartition& partition,
                int P) {
  if (partition.d() < 3)
    throw PreconditionError("variance series needs d >= 3 (got d = " +
                            std::to_string(partition.d()) + ")");
  if (P < 1) throw PreconditionError("truncation order must be >= 1");
  region.check_compatible(partition);
  if (!(angular_measure(region) > 0.0))
    throw PreconditionError("variance series needs kappa(B) > 0");
}

double partial_sum(const Interval& I, int d, long P) {
  // Only pairs with (max/min)^d < hi/lo contribute; visit p <= q and double.
  const double ratio = I.hi() / I.lo();
  Accumulator acc;
  for (long q = 1; q <= P; ++q) {
    acc.add(variance_term(I, d, q, q));
    for (long p = q - 1; p >= 1; --p) {
      if (std::pow(static_cast<double>(q) / p, d) >= ratio) break;
      acc.add(2.0 * variance_term(I, d, p, q));
    }
  }
  return acc.value();
}

}  // namespace

ZetaValue zeta(int d, long terms) {
  if (d < 2) throw PreconditionError("zeta needs an integer argument >= 2");
  Accumulator acc;
  for (long n = terms; n >= 1; --n) acc.add(std::pow(static_cast<double>(n), -d));
  const double t = static_cast<double>(terms);
  const double hi = std::pow(t, 1.0 - d) / (d - 1.0);
  const double lo = std::pow(t + 1.0, 1.0 - d) / (d - 1.0);
  return {acc.value() + 0.5 * (hi + lo), 0.5 * (hi - lo) + 1e-16 * acc.value()};
}

double zeta_real(double s) {
  if (!(s > 1.0)) throw PreconditionError("zeta_real needs s > 1");
  constexpr int N = 20;
  double sum = 0.0;
  for (int n = N - 1; n >= 1; --n) sum += std::pow(n, -s);
  const double n = N;
  sum += std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s);
  // B_{2j} / (2j)! times the rising factorial s (s+1) ... (s+2j-2) n^{-s-2j+1}
  static constexpr double b2j[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66,
                                   -691.0 / 2730, 7.0 / 6};
  double rising = s, fact = 2.0;
  for (int j = 1; j <= 7; ++j) {
    sum += b2j[j - 1] / fact * rising * std::pow(n, -s - 2 * j + 1);
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= (2 * j + 1) * (2 * j + 2);
  }
  return sum;
}

double variance_term(const Interval& I, int d, long p, long q) {
  // Leb(p^d I cap q^d I) / (p^d q^d) = Leb(q^{-d} I cap p^{-d} I).
  const double pq = std::pow(static_cast<double>(q), -d);
  const double pp = std::pow(static_cast<double>(p), -d);
  return overlap_length(pq * I.lo(), pq * I.hi(), pp * I.lo(), pp * I.hi()) / I.length();
}

VarianceResult variance_series(const Interval& interval, const AngularRegion& region,
                               const DimensionPartition& partition, int truncation_order) {
  check_args(interval, region, partition, truncation_order);
  const int d = partition.d();
  VarianceResult r;
  r.truncation_order = truncation_order;
  r.zeta = zeta(d);
  r.symmetry_factor = 1.0 + angular_symmetric_overlap(region) / angular_measure(region);
  r.partial_sum = partial_sum(interval, d, truncation_order);
  r.value = r.partial_sum / r.zeta.value * r.symmetry_factor;
  const auto tail = series_tail(interval, d, truncation_order);
  const double zlo = r.zeta.value - r.zeta.error;
  const double upper = (r.partial_sum + tail.upper) / zlo * r.symmetry_factor;
  const double lower = r.partial_sum / (r.zeta.value + r.zeta.error) * r.symmetry_factor;
  r.tail_bound = std::max(upper - r.value, r.value - lower);
  return r;
}

VarianceLimit variance_limit(const Interval& interval, const AngularRegion& region,
                             const DimensionPartition& partition, int truncation_order) {
  const auto base = variance_series(interval, region, partition, truncation_order);
  const auto tail = series_tail(interval, partition.d(), truncation_order);
  const double z = base.zeta.value, ze = base.zeta.error;
  const double lo = (base.partial_sum + tail.lower) / (z + ze) * base.symmetry_factor;
  const double hi = (base.partial_sum + tail.upper) / (z - ze) * base.symmetry_factor;
  return {0.5 * (lo + hi), 0.5 * (hi - lo), truncation_order};
}

}  // namespace latcount
