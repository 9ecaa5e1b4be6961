#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "latcount/checks.hpp"
#include "latcount/counting.hpp"
#include "latcount/errors.hpp"
#include "latcount/siegel.hpp"
#include "latcount/variance.hpp"

namespace latcount {
namespace {

TEST(Siegel, BallExamples) {
  const auto z2 = LatticeBasis::identity(2);
  EXPECT_EQ(siegel_transform(BallIndicator{1.5}, z2), 8.0);
  EXPECT_EQ(siegel_transform(BallIndicator{0.5}, z2), 0.0);
  EXPECT_EQ(siegel_transform(BallIndicator{1.0}, LatticeBasis::identity(3)), 6.0);
}

TEST(Siegel, DomainIndicatorMatchesBruteForce) {
  DimensionPartition part({2, 1});
  const DomainSpec spec(part, Interval(1, 3), parse_region("hemisphere:e2,+-", part), 9.0);
  SamplerConfig cfg;
  for (int i = 0; i < 20; ++i) {
    const LatticeBasis b = sample_lattice(cfg, i);
    EXPECT_EQ(siegel_transform(DomainIndicator{spec}, b),
              static_cast<double>(count_bruteforce(b, spec).count));
  }
}

TEST(Siegel, SubstitutionUnderFlow) {
  DimensionPartition part({2, 1});
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uu(-1.5, 1.5);
  const BoxConstraint box{{-1.3, -0.7, -2.1}, {1.9, 1.1, 1.6}};
  SamplerConfig cfg;
  for (int i = 0; i < 30; ++i) {
    const DiagonalFlow flow({uu(rng)}, part);
    const LatticeBasis b = sample_lattice(cfg, i);
    // (f o a(-u))^(a(u) L) = f^(L); f o a(-u) is the box scaled by a(u)
    const auto diag = flow.diagonal();
    BoxConstraint moved = box;
    for (int j = 0; j < 3; ++j) {
      moved.lo[j] *= diag[j];
      moved.hi[j] *= diag[j];
    }
    EXPECT_EQ(siegel_transform(BoxIndicator{moved}, apply_flow(flow, b)),
              siegel_transform(BoxIndicator{box}, b));
  }
}

TEST(Siegel, Integrals) {
  EXPECT_NEAR(integral(BallIndicator{2.0}, 3), 4.0 / 3 * M_PI * 8, 1e-12);
  const BoxConstraint box{{-1, 0, 2}, {1, 0.5, 5}};
  EXPECT_NEAR(integral(BoxIndicator{box}, 3), 3.0, 1e-12);
  // bump: R^d * area(S^{d-1}) * int_0^1 (1 - r^2)^m r^{d-1} dr by Simpson
  for (int d : {3, 4}) {
    for (int m : {1, 2, 3}) {
      const int n = 4000;
      double s = 0;
      for (int i = 0; i <= n; ++i) {
        const double r = static_cast<double>(i) / n;
        const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        s += w * std::pow(1 - r * r, m) * std::pow(r, d - 1);
      }
      s /= 3.0 * n;
      const double area = 2 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
      EXPECT_NEAR(integral(RadialBump{1.5, m}, d), std::pow(1.5, d) * area * s, 1e-8);
    }
  }
}

TEST(Siegel, BoxPairIntegralMatchesGrid) {
  const BoxConstraint box{{-0.4, -1.0, 0.2}, {1.0, 0.6, 1.3}};
  const BoxIndicator f{box};
  for (auto [p, q, sg] : {std::tuple{1, 1, -1}, {2, 1, 1}, {2, 3, -1}, {1, 2, -1}}) {
    const int n = 160;
    const double a = 1.3 / p;
    double hits = 0;
    std::vector<double> z(3), pz(3), qz(3);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          z = {-a + 2 * a * (i + 0.5) / n, -a + 2 * a * (j + 0.5) / n, -a + 2 * a * (k + 0.5) / n};
          for (int c = 0; c < 3; ++c) {
            pz[c] = p * z[c];
            qz[c] = sg * q * z[c];
          }
          hits += evaluate(f, pz) * evaluate(f, qz);
        }
    const double grid = hits * std::pow(2 * a / n, 3);
    EXPECT_NEAR(rogers_pair_integral(f, 3, p, q, sg), grid, 0.03 * std::pow(1.3 / p, 3) + 1e-3)
        << p << " " << q << " " << sg;
  }
}

TEST(Rogers, BallClosedForm) {
  const double V = 4.0 / 3 * M_PI;
  const double z3 = 1.2020569031595942, z2 = M_PI * M_PI / 6;
  const double exact = 2 * V * (2 * z2 - z3) / z3;
  const RogersFormula r = rogers_variance(BallIndicator{1.0}, 3, 2000);
  EXPECT_LE(r.value, exact + 1e-9);
  EXPECT_GE(r.value + r.tail_bound, exact - 1e-9);
  EXPECT_NEAR(r.value, exact, 1e-2);
  EXPECT_NEAR(rogers_pair_integral(BallIndicator{1.0}, 3, 2, 3, -1), V / 27, 1e-14);
}

TEST(Rogers, TruncationWithinTailBound) {
  const TestFunctionSpec fs[] = {BallIndicator{1.2}, RadialBump{1.5, 2},
                                 BoxIndicator{BoxConstraint{{-1, -0.5, 0}, {1, 0.5, 2}}}};
  for (const auto& f : fs) {
    const RogersFormula a = rogers_variance(f, 3, 50), b = rogers_variance(f, 3, 400);
    EXPECT_GE(b.value - a.value, -1e-12);
    EXPECT_LE(b.value - a.value, a.tail_bound);
  }
  EXPECT_THROW(rogers_variance(BallIndicator{1.0}, 2, 10), PreconditionError);
}

TEST(Rogers, L2BoundDominatesSecondMoment) {
  for (int d : {3, 4, 5}) {
    const BallIndicator f{1.0};
    const RogersFormula r = rogers_variance(f, d, 1000);
    const double second = r.value + r.tail_bound + std::pow(integral(f, d), 2);
    EXPECT_LE(second, rogers_l2_bound(f, d));
  }
}

TEST(Siegel, MeanValueSmallRun) {
  SamplerConfig cfg;
  cfg.seed = 77;
  const SiegelReport r = siegel_mvt_check(BallIndicator{1.0}, cfg, 2000);
  EXPECT_NEAR(r.expected, 4.0 / 3 * M_PI, 1e-12);
  EXPECT_LT(std::abs(r.z_score), 4.0);
  EXPECT_THROW(siegel_mvt_check(BallIndicator{1.0}, cfg, 10), PreconditionError);
}

TEST(Siegel, StandardErrorShrinksWithDoubling) {
  SamplerConfig cfg;
  cfg.seed = 78;
  const RadialBump f{1.0, 2};
  const double se1 = siegel_mvt_check(f, cfg, 20000).se;
  const double se2 = siegel_mvt_check(f, cfg, 40000).se;
  EXPECT_NEAR(se1 / se2, std::sqrt(2.0), 0.2 * std::sqrt(2.0));
}

}  // namespace
}  // namespace latcount
