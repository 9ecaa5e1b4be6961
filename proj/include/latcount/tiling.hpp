#pragma once

#include <span>
#include <vector>

#include "latcount/domain.hpp"

namespace latcount {

// S(N) = { u in R^{k-1} : u_j < 0, sum_j u_j > -N }.
bool in_scaled_simplex(std::span<const double> u, double N);
// Tile S_1 = S(1).
bool in_tile1(std::span<const double> w);
// Tile S_2 = [-1, 0)^{k-1} \ S(1).
bool in_tile2(std::span<const double> w);

struct Translate {
  std::vector<int> n;
  // S_i - n is contained in S(N) (as point sets); otherwise the tile is
  // clipped to S(N) when evaluated.
  bool contained = true;
};

// Tessellation data of Omega_T: N = floor(log T) and the translates
// P_{N,i} = { n in [0, N]^{k-1} : (S_i - n) meets S(N) }, which satisfy
// S(N) = disjoint union over i, n of (S_i - n) cap S(N).
class TilingSpec {
 public:
  TilingSpec(const DomainSpec& spec, int N, std::vector<Translate> translates1,
             std::vector<Translate> translates2);

  int N() const noexcept { return N_; }
  const DimensionPartition& partition() const noexcept { return partition_; }
  const Interval& interval() const noexcept { return interval_; }
  double log_T() const noexcept { return log_T_; }
  const std::vector<Translate>& translates(int i) const { return i == 1 ? t1_ : t2_; }

  // v_T = (log T, ..., log T).
  std::vector<double> vT() const;
  // delta_T(s)_j = (d log T - s)/d_j.
  std::vector<double> delta(double s) const;
  // tau_T(s)_j = (d log T - s)/(d_j floor(log T)).
  std::vector<double> tau(double s) const;
  // tau_inf_j = d/d_j.
  std::vector<double> tau_infinity() const;
  // beta_T(u, s) = tau_T(s) u - v_T.
  std::vector<double> beta(std::span<const double> u, double s) const;
  // beta~_T(u) = tau_inf u - v_T.
  std::vector<double> beta_tilde(std::span<const double> u) const;

 private:
  DimensionPartition partition_;
  Interval interval_;
  double log_T_;
  int N_;
  std::vector<Translate> t1_, t2_;
};

// Requires T above the validity threshold and floor(log T) >= 1.
TilingSpec tiling_build(const DomainSpec& spec);

struct TilingEval {
  int indicator_lhs = 0;
  int tile_sum_rhs = 0;
};

// lhs = chi_{Omega_T}(z); rhs = sum over both tile families of
// h_{T,i}(a(v) z) with v in Q_{T,i}(s(z)) = beta_T(P_{N,i}, s(z)).
TilingEval tiling_identity_eval(std::span<const double> z, const DomainSpec& spec,
                                const TilingSpec& tiling);

// Distance of z to the nearest tile or domain boundary, measured in the
// normalized u-coordinates w = tau_T(s)^{-1}(u - v_T), in s, and in angle.
double tile_boundary_distance(std::span<const double> z, const DomainSpec& spec,
                              const TilingSpec& tiling);

}  // namespace latcount
