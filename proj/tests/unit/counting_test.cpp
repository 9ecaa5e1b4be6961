#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "latcount/checks.hpp"
#include "latcount/counting.hpp"
#include "latcount/errors.hpp"
#include "latcount/lll.hpp"
#include "latcount/numeric.hpp"

namespace latcount {
namespace {

DomainSpec spec_with(std::vector<int> dims, double lo, double hi, const char* region, double T) {
  DimensionPartition part(std::move(dims));
  return DomainSpec(part, Interval(lo, hi), parse_region(region, part), T);
}

TEST(Counting, PlaneExamples) {
  const auto id = LatticeBasis::identity(2);
  const auto one = spec_with({1, 1}, 0.5, 1.5, "+,+", 10);
  const auto all = spec_with({1, 1}, 0.5, 1.5, "+-,+-", 10);
  EXPECT_EQ(count_bruteforce(id, one).count, 1u);
  EXPECT_EQ(count_bruteforce(id, all).count, 4u);
  EXPECT_EQ(count_tiled(id, one).count, 1u);
  EXPECT_EQ(count_tiled(id, all).count, 4u);
  EXPECT_EQ(count_bruteforce(id, spec_with({1, 1}, 0.4, 0.6, "+-,+-", 10)).count, 0u);
}

TEST(Counting, DiscrepancyArithmetic) {
  CountResult r;
  r.count = 1;
  finish_discrepancy(r, 5.8731);
  EXPECT_DOUBLE_EQ(r.discrepancy, 1 - 5.8731);
  EXPECT_TRUE(r.normalized_defined);
  EXPECT_DOUBLE_EQ(r.normalized, r.discrepancy / std::sqrt(5.8731));

  // T^2 below inf I: the domain is empty
  const auto empty = spec_with({1, 1}, 200, 300, "+-,+-", 10);
  const CountResult z = discrepancy(LatticeBasis::identity(2), empty, CountMethod::BruteForce);
  EXPECT_EQ(z.count, 0u);
  EXPECT_EQ(z.volume, 0.0);
  EXPECT_FALSE(z.normalized_defined);
  EXPECT_TRUE(std::isnan(z.normalized));
}

TEST(Counting, BruteForceCap) {
  const auto big = spec_with({2, 1}, 1, 2, "full,+-", 1000);
  try {
    count_bruteforce(LatticeBasis::identity(3), big, 1000);
    FAIL() << "no exception";
  } catch (const CountCapExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("count_tiled"), std::string::npos);
  }
}

TEST(Counting, TiledRequiresThreshold) {
  const auto low = spec_with({1, 1}, 1, 200, "+,+", 10);
  EXPECT_THROW(count_tiled(LatticeBasis::identity(2), low), PreconditionError);
  const auto ok = spec_with({1, 1}, 1, 2, "+,+", 10);
  EXPECT_THROW(count_tiled(LatticeBasis::identity(2), ok, 0.0), PreconditionError);
}

TEST(Counting, TiledMatchesBruteForceOnRandomSpecs) {
  std::mt19937_64 rng(77);
  struct Case {
    std::vector<int> dims;
    const char* region;
  };
  const Case cases[] = {{{2, 1}, "full,+-"},           {{1, 2}, "+,hemisphere:e2"},
                        {{1, 1, 1}, "+-,+,-"},          {{2, 2}, "cap:e1:1.2,full"},
                        {{1, 3}, "+-,cap:e3:2.0"},      {{1, 1}, "+-,+-"},
                        {{2, 1, 1}, "hemisphere:e1,+-,+"}};
  std::uniform_real_distribution<double> lo(0.3, 1.5), ratio(1.2, 6), lt(2.2, 3.0);
  int trial = 0;
  for (const auto& cs : cases)
    for (int rep = 0; rep < 4; ++rep, ++trial) {
      const double a = lo(rng);
      const auto spec = spec_with(cs.dims, a, a * ratio(rng), cs.region, std::exp(lt(rng)));
      SamplerConfig cfg;
      cfg.d = spec.partition().d();
      cfg.seed = 100 + trial;
      const LatticeBasis b = sample_lattice(cfg, 0);
      for (double h : {1.0, 0.6}) {
        const auto t = count_tiled(b, spec, h);
        const auto bf = count_bruteforce(b, spec);
        EXPECT_EQ(t.count, bf.count) << cs.region << " rep " << rep << " h " << h;
      }
    }
}

TEST(Counting, ManySpecsMatchSeparateCounts) {
  SamplerConfig cfg;
  cfg.d = 4;
  const LatticeBasis b = sample_lattice(cfg, 3);
  DimensionPartition part({2, 2});
  const std::vector<DomainSpec> specs{
      DomainSpec(part, Interval(1, 2), parse_region("hemisphere:e1,full", part), std::exp(3.0)),
      DomainSpec(part, Interval(1, 2), parse_region("full,full", part), std::exp(3.0))};
  const auto many = count_tiled_many(b, specs);
  ASSERT_EQ(many.size(), 2u);
  for (int i = 0; i < 2; ++i) EXPECT_EQ(many[i].count, count_bruteforce(b, specs[i]).count);
}

TEST(Counting, InvariantUnderRebasing) {
  const auto spec = spec_with({2, 1}, 1, 3, "full,+", std::exp(3.0));
  SamplerConfig cfg;
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> mult(-2, 2);
  for (int i = 0; i < 10; ++i) {
    const LatticeBasis b = sample_lattice(cfg, i);
    IntMatrix u = IntMatrix::Identity(3, 3);
    for (int s = 0; s < 12; ++s) u.row(s % 3) += mult(rng) * u.row((s + 1) % 3);
    const LatticeBasis skew(u.cast<double>() * b.rows());
    const LatticeBasis red = lll_reduce(skew).basis;
    const auto c0 = count_tiled(b, spec).count;
    EXPECT_EQ(count_tiled(skew, spec).count, c0);
    EXPECT_EQ(count_tiled(red, spec).count, c0);
    EXPECT_EQ(count_bruteforce(red, spec).count, c0);
  }
}

TEST(Counting, MeanDiscrepancyIsNearZero) {
  const auto spec = spec_with({2, 1}, 1, 2, "full,+-", std::exp(3.0));
  SamplerConfig cfg;
  cfg.seed = 2024;
  const int n = 1000;
  std::vector<double> disc(n);
  for (int i = 0; i < n; ++i) disc[i] = count_tiled(sample_lattice(cfg, i), spec).discrepancy;
  double mean = 0, m2 = 0;
  for (double x : disc) mean += x;
  mean /= n;
  for (double x : disc) m2 += (x - mean) * (x - mean);
  const double se = std::sqrt(m2 / (n - 1) / n);
  EXPECT_LT(std::abs(mean), 3 * se);
}

TEST(Counting, WorkScalesWithVolume) {
  const DimensionPartition part({2, 1});
  SamplerConfig cfg;
  double lo_ratio = INFINITY, hi_ratio = 0;
  for (double lt : {5.0, 10.0, 15.0}) {
    const DomainSpec spec(part, Interval(1, 2), parse_region("full,+-", part), std::exp(lt));
    double cand = 0, vol = 0;
    for (int i = 0; i < 5; ++i) {
      const auto r = count_tiled(sample_lattice(cfg, i), spec);
      cand += r.candidates;
      vol += r.volume;
    }
    lo_ratio = std::min(lo_ratio, cand / vol);
    hi_ratio = std::max(hi_ratio, cand / vol);
  }
  EXPECT_LT(hi_ratio, 100.0);
  EXPECT_LT(hi_ratio / lo_ratio, 2.0);
}

}  // namespace
}  // namespace latcount
