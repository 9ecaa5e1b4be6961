#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "latcount/alpha.hpp"
#include "latcount/checks.hpp"
#include "latcount/errors.hpp"
#include "latcount/lll.hpp"
#include "latcount/sampling.hpp"

namespace latcount {
namespace {

TEST(Sampling, Primes) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(10007));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(10001));
  Rng rng(1);
  EXPECT_THROW(hecke_draw(3, 10001, rng), PreconditionError);
  EXPECT_THROW(hecke_draw(1, 5, rng), PreconditionError);
}

TEST(Sampling, IndexTwoSublatticesAreEquallyLikely) {
  Rng rng(99);
  std::map<std::vector<std::int64_t>, int> freq;
  const int n = 30000;
  for (int i = 0; i < n; ++i) {
    const HeckeDraw h = hecke_draw(2, 2, rng);
    EXPECT_EQ(std::llabs(static_cast<long long>(h.basis.cast<double>().determinant())), 2);
    ++freq[h.functional];
  }
  ASSERT_EQ(freq.size(), 3u);
  const double sd = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
  for (const auto& [a, c] : freq) EXPECT_NEAR(c, n / 3.0, 5 * sd);
}

TEST(Sampling, KernelBasisAnnihilatesFunctional) {
  Rng rng(4);
  for (int d = 2; d <= 9; ++d) {
    const std::uint64_t p = 10007;
    const HeckeDraw h = hecke_draw(d, p, rng);
    for (int r = 0; r < d; ++r) {
      __int128 s = 0;
      for (int c = 0; c < d; ++c) s += static_cast<__int128>(h.basis(r, c)) * h.functional[c];
      EXPECT_EQ(static_cast<long long>(s % static_cast<__int128>(p)), 0);
    }
    EXPECT_NEAR(std::abs(h.basis.cast<double>().determinant()), static_cast<double>(p), 1e-6 * p);
  }
}

TEST(Sampling, SampledLatticesAreUnimodular) {
  Rng rng(8);
  for (int d = 2; d <= 9; ++d) {
    EXPECT_NEAR(hecke_sample(d, 10007, rng).det_abs(), 1.0, 1e-9);
    const RowMatrix q = random_rotation(d, rng);
    EXPECT_LT((q * q.transpose() - RowMatrix::Identity(d, d)).norm(), 1e-12);
  }
  EXPECT_NEAR(exact_sample_d2(rng).det_abs(), 1.0, 1e-12);
}

TEST(Sampling, SamplerIsDeterministicPerIndex) {
  SamplerConfig cfg;
  cfg.d = 4;
  cfg.seed = 12;
  EXPECT_EQ(sample_lattice(cfg, 7).rows(), sample_lattice(cfg, 7).rows());
  EXPECT_NE(sample_lattice(cfg, 7).rows(), sample_lattice(cfg, 8).rows());
  cfg.kind = SamplerKind::ExactD2;
  EXPECT_THROW(sample_lattice(cfg, 0), PreconditionError);
}

TEST(Sampling, ExactSamplerAcceptanceRate) {
  Rng rng(2);
  ExactSampleStats st;
  for (int i = 0; i < 40000; ++i) exact_sample_d2(rng, &st);
  // area of the fundamental domain over the area of the proposal strip
  const double rate = (M_PI / 3) / (2 / std::sqrt(3.0));
  const double got = static_cast<double>(st.accepted) / st.proposals;
  EXPECT_NEAR(got, rate, 5 * std::sqrt(rate * (1 - rate) / st.proposals));
}

double shortest_2d(const LatticeBasis& b) {
  const auto r = lll_reduce(b).basis.rows();
  double best = INFINITY;
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n)
      if (m || n) best = std::min(best, (m * r.row(0) + n * r.row(1)).norm());
  return best;
}

// E[lambda_1] for a Haar-random unimodular planar lattice:
// (2/pi) int_{-1/2}^{1/2} (1 - x^2)^{-3/4} dx.
double shortest_mean_oracle() {
  const int n = 20000;
  double s = 0;
  for (int i = 0; i <= n; ++i) {
    const double x = -0.5 + static_cast<double>(i) / n;
    const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    s += w * std::pow(1 - x * x, -0.75);
  }
  return 2 / M_PI * s / (3.0 * n);
}

TEST(Sampling, ShortestVectorMeanMatchesHaar) {
  const double target = shortest_mean_oracle();
  for (SamplerKind kind : {SamplerKind::ExactD2, SamplerKind::Hecke}) {
    SamplerConfig cfg;
    cfg.d = 2;
    cfg.kind = kind;
    cfg.seed = 31;
    const int n = 20000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double l = shortest_2d(sample_lattice(cfg, i));
      s += l;
      s2 += l * l;
    }
    const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
    EXPECT_NEAR(mean, target, 5 * se) << (kind == SamplerKind::Hecke ? "hecke" : "exact");
  }
}

TEST(Alpha, Examples) {
  EXPECT_DOUBLE_EQ(alpha_proxy(LatticeBasis::identity(5)), 1.0);
  EXPECT_DOUBLE_EQ(exact_alpha_d2(LatticeBasis::identity(2)), 1.0);
  const std::vector<double> diag{4, 0.25};
  const LatticeBasis b = LatticeBasis::diagonal(diag);
  EXPECT_NEAR(exact_alpha_d2(b), 4.0, 1e-12);
  const double proxy = alpha_proxy(b);
  EXPECT_GE(proxy, 4.0 / std::sqrt(2.0));
  EXPECT_LE(proxy, 4.0 * std::sqrt(2.0));
  EXPECT_THROW(exact_alpha_d2(LatticeBasis::identity(3)), PreconditionError);
}

TEST(Alpha, ProxyTracksExactValue) {
  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    const LatticeBasis b = exact_sample_d2(rng);
    const double a = exact_alpha_d2(b), p = alpha_proxy(b);
    EXPECT_GE(p, 1.0 - 1e-12);
    EXPECT_LE(p, 2.0 * a);
    EXPECT_GE(p, a / 2.0);
  }
}

}  // namespace
}  // namespace latcount
