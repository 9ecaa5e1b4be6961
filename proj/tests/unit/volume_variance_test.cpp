#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "latcount/domain.hpp"
#include "latcount/errors.hpp"
#include "latcount/variance.hpp"

namespace latcount {
namespace {

constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;

// Area of {x, y > 0 : lo < xy < hi, x < T, y < T}, assuming T^2 > hi:
// x in (lo/T, hi/T) gives y in (lo/x, T); x in (hi/T, T) gives (lo/x, hi/x).
double quadrant_area(double lo, double hi, double T) {
  return (hi - lo) - lo * std::log(hi / lo) + (hi - lo) * std::log(T * T / hi);
}

// Same area by composite Simpson on each smooth piece.
double quadrant_area_quadrature(double lo, double hi, double T) {
  auto len = [&](double x) { return std::max(0.0, std::min(hi / x, T) - lo / x); };
  auto simpson = [&](double a, double b) {
    const int n = 200000;
    const double h = (b - a) / n;
    double s = len(a) + len(b);
    for (int i = 1; i < n; ++i) s += len(a + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
  };
  // log-spaced pieces keep the 1/x behaviour resolved
  double total = simpson(lo / T, hi / T);
  double a = hi / T;
  while (a < T) {
    const double b = std::min(T, a * 2);
    total += simpson(a, b);
    a = b;
  }
  return total;
}

TEST(Volume, QuadrantExample) {
  DimensionPartition part({1, 1});
  DomainSpec spec(part, Interval(1, kE), parse_region("+,+", part), kE * kE);
  EXPECT_NEAR(domain_volume(spec), 4 * (kE - 1) - 1, 1e-12);
  EXPECT_NEAR(domain_volume(spec), 5.8731, 1e-4);
}

TEST(Volume, TwoDimensionalAnalyticOracle) {
  DimensionPartition part({1, 1});
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.1, 3.0), w(1.1, 6.0), t(1.5, 40.0);
  for (int i = 0; i < 20; ++i) {
    const double lo = u(rng), hi = lo * w(rng);
    const double T = std::sqrt(hi) * t(rng);
    for (const char* region : {"+,+", "+-,+", "+-,+-"}) {
      DomainSpec spec(part, Interval(lo, hi), parse_region(region, part), T);
      const double quadrants = angular_measure(spec.region());
      const double expected = quadrants * quadrant_area(lo, hi, T);
      EXPECT_NEAR(domain_volume(spec), expected, 1e-9 * expected);
    }
  }
  EXPECT_NEAR(quadrant_area(0.7, 2.3, 5.0), quadrant_area_quadrature(0.7, 2.3, 5.0), 1e-8);
}

TEST(Volume, SimplexVolume) {
  EXPECT_DOUBLE_EQ(simplex_volume(1), 1.0);
  EXPECT_DOUBLE_EQ(simplex_volume(2), 1.0);
  EXPECT_NEAR(simplex_volume(4), 1.0 / 6, 1e-15);
}

TEST(Volume, ThresholdEnforced) {
  DimensionPartition part({2, 1});
  DomainSpec spec(part, Interval(1, 27), parse_region("full,+-", part), 2.9);
  EXPECT_FALSE(spec.above_threshold());
  EXPECT_THROW(domain_volume(spec), PreconditionError);
  EXPECT_TRUE(spec.with_T(3.1).above_threshold());
}

double monte_carlo_volume(const DomainSpec& spec, int n, std::uint64_t seed, double& se) {
  std::mt19937_64 rng(seed);
  const int d = spec.partition().d();
  std::uniform_real_distribution<double> u(-spec.T(), spec.T());
  std::vector<double> z(d);
  long hits = 0;
  for (int i = 0; i < n; ++i) {
    for (auto& x : z) x = u(rng);
    hits += domain_membership(z, spec);
  }
  const double box = std::pow(2 * spec.T(), d), p = static_cast<double>(hits) / n;
  se = box * std::sqrt(p * (1 - p) / n);
  return box * p;
}

TEST(Volume, MonteCarloAgreement) {
  DimensionPartition p21({2, 1}), p111({1, 1, 1});
  const DomainSpec specs[] = {
      DomainSpec(p21, Interval(0.5, 3), parse_region("hemisphere:e2,+-", p21), 3.0),
      DomainSpec(p111, Interval(0.2, 1.5), parse_region("+,+-,-", p111), 2.5),
  };
  for (const auto& spec : specs) {
    double se = 0;
    const double mc = monte_carlo_volume(spec, 400000, 9, se);
    EXPECT_LT(std::abs(mc - domain_volume(spec)), 3 * se) << format_region(spec.region());
  }
}

TEST(Volume, PolynomialInLogT) {
  DimensionPartition part({2, 1, 3});
  const Interval I(0.3, 4.0);
  const AngularRegion B = parse_region("cap:e1:1.2,+1,hemisphere:e3", part);
  const auto coeffs = volume_polynomial(part, I, B);
  ASSERT_EQ(coeffs.size(), 3u);
  for (double T : {3.0, 7.5, 40.0, 1e4}) {
    const double t = std::log(T);
    const double poly = coeffs[0] + coeffs[1] * t + coeffs[2] * t * t;
    const double vol = domain_volume(DomainSpec(part, I, B, T));
    EXPECT_NEAR(poly, vol, 1e-9 * vol);
  }
  // leading coefficient d^{k-1} Leb(I) Vol(S_1) kappa(B) / (d_1 ... d_k)
  const double lead = 36.0 * I.length() * 0.5 * angular_measure(B) / 6.0;
  EXPECT_NEAR(coeffs[2], lead, 1e-12 * lead);
}

TEST(Volume, ClippedBelowThreshold) {
  DimensionPartition part({1, 1});
  // T^2 <= lo: empty domain
  EXPECT_EQ(domain_volume_any_T(part, Interval(4, 9), 4.0, 1.9), 0.0);
  // lo < T^2 < hi matches the quadrant integral with hi replaced by T^2
  const double T = 2.5;
  const double expected = 4 * ((T * T - 4) - 4 * std::log(T * T / 4));
  EXPECT_NEAR(domain_volume_any_T(part, Interval(4, 9), 4.0, T), expected, 1e-12);
}

// ---------------------------------------------------------------- variance

double zeta_oracle(int d) {
  // Euler-Maclaurin free oracle: partial sum to 2e6 plus integral midpoint.
  double s = 0;
  for (long n = 2000000; n >= 1; --n) s += std::pow(double(n), -d);
  return s + std::pow(2e6, 1.0 - d) / (d - 1) - 0.5 * std::pow(2e6, -d);
}

TEST(Zeta, KnownValues) {
  EXPECT_NEAR(zeta(2).value, kPi * kPi / 6, 1e-12);
  EXPECT_NEAR(zeta(3).value, 1.2020569031595942, 1e-14);
  EXPECT_NEAR(zeta(4).value, std::pow(kPi, 4) / 90, 1e-14);
  EXPECT_LT(std::abs(zeta(3).value - 1.2020569031595942), zeta(3).error + 1e-15);
  EXPECT_NEAR(zeta_real(1.5), 2.612375348685488, 1e-12);
  EXPECT_NEAR(zeta_real(4.5), 1.0547075107614543, 1e-13);
  EXPECT_NEAR(zeta_real(3.0), zeta_oracle(3), 1e-13);
}

// Independent truncated double sum, no shortcuts.
double series_oracle(double lo, double hi, int d, int P, double symmetry) {
  double s = 0;
  for (int p = 1; p <= P; ++p)
    for (int q = 1; q <= P; ++q) {
      const double a1 = lo * std::pow(p, d), b1 = hi * std::pow(p, d);
      const double a2 = lo * std::pow(q, d), b2 = hi * std::pow(q, d);
      const double leb = std::max(0.0, std::min(b1, b2) - std::max(a1, a2));
      s += leb / (std::pow(p, d) * std::pow(q, d) * (hi - lo));
    }
  return s / zeta_oracle(d) * symmetry;
}

TEST(Variance, SpotTerm) {
  EXPECT_NEAR(variance_term(Interval(1, 16), 3, 1, 2), 1.0 / 15, 1e-16);
  EXPECT_NEAR(variance_term(Interval(1, 16), 3, 2, 1), 1.0 / 15, 1e-16);
  EXPECT_EQ(variance_term(Interval(1, 8), 3, 1, 2), 0.0);
}

TEST(Variance, MatchesTruncatedOracle) {
  DimensionPartition part({2, 1});
  const AngularRegion B = parse_region("hemisphere:e1,+1", part);
  for (auto [lo, hi] : {std::pair{1.0, 8.0}, {1.0, 16.0}, {0.5, 3.0}, {2.0, 50.0}, {1.0, 1.5}}) {
    const auto r = variance_series(Interval(lo, hi), B, part, 200);
    const double oracle = series_oracle(lo, hi, 3, 200, 1.0);
    EXPECT_NEAR(r.value, oracle, 1e-10 * oracle) << lo << "," << hi;
    EXPECT_GE(r.value, 1.0 - r.tail_bound);
  }
}

TEST(Variance, TailBoundCoversLongerTruncation) {
  DimensionPartition part({1, 2});
  const AngularRegion B = parse_region("+-,full", part);
  const Interval I(1, 16);
  const auto short_sum = variance_series(I, B, part, 100);
  const auto long_sum = variance_series(I, B, part, 3000);
  EXPECT_GE(long_sum.value, short_sum.value);
  EXPECT_LE(long_sum.value - short_sum.value, short_sum.tail_bound);
  const auto lim = variance_limit(I, B, part, 100);
  EXPECT_LE(std::abs(lim.value - long_sum.value), lim.error + long_sum.tail_bound);
}

TEST(Variance, SymmetricRegionDoubles) {
  DimensionPartition part({1, 1, 1});
  const Interval I(1, 5);
  const auto half = variance_series(I, parse_region("+,+-,+-", part), part, 50);
  const auto full = variance_series(I, parse_region("+-,+-,+-", part), part, 50);
  EXPECT_DOUBLE_EQ(full.value, 2 * half.value);
  EXPECT_DOUBLE_EQ(half.symmetry_factor, 1.0);
}

TEST(Variance, CapSymmetryFactor) {
  DimensionPartition part({3, 1});
  const AngularRegion B = parse_region("cap:e3:2.0943951023931957,+-", part);
  const auto r = variance_series(Interval(1, 2), B, part, 20);
  // band |x_3| < 1/2 has area 2 pi; cap area 3 pi; both signs kept.
  EXPECT_NEAR(r.symmetry_factor, 1 + 2.0 / 3, 1e-9);
}

TEST(Variance, NarrowIntervalAtHighDimension) {
  DimensionPartition part({5, 4});
  const auto r = variance_limit(Interval(1, 2), parse_region("hemisphere:e1,full", part), part, 200);
  EXPECT_NEAR(r.value, 1.0, 1e-9);
  EXPECT_GT(r.value, 1.0);
}

TEST(Variance, Preconditions) {
  DimensionPartition p2({1, 1});
  EXPECT_THROW(variance_series(Interval(1, 2), parse_region("+,+", p2), p2, 10), PreconditionError);
  DimensionPartition p3({2, 1});
  EXPECT_THROW(variance_series(Interval(1, 2), parse_region("full,+", p3), p3, 0), PreconditionError);
}

}  // namespace
}  // namespace latcount
