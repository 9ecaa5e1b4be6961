#include "latcount/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "latcount/errors.hpp"

namespace latcount {

bool in_scaled_simplex(std::span<const double> u, double N) {
  double sum = 0.0;
  for (double x : u) {
    if (!(x < 0.0)) return false;
    sum += x;
  }
  return sum > -N;
}

bool in_tile1(std::span<const double> w) { return in_scaled_simplex(w, 1.0); }

bool in_tile2(std::span<const double> w) {
  for (double x : w) {
    if (!(x >= -1.0 && x < 0.0)) return false;
  }
  return !in_scaled_simplex(w, 1.0);
}

TilingSpec::TilingSpec(const DomainSpec& spec, int N, std::vector<Translate> translates1,
                       std::vector<Translate> translates2)
    : partition_(spec.partition()),
      interval_(spec.interval()),
      log_T_(spec.log_T()),
      N_(N),
      t1_(std::move(translates1)),
      t2_(std::move(translates2)) {}

std::vector<double> TilingSpec::vT() const {
  return std::vector<double>(partition_.k() - 1, log_T_);
}

std::vector<double> TilingSpec::delta(double s) const {
  std::vector<double> out(partition_.k() - 1);
  for (int j = 0; j + 1 < partition_.k(); ++j)
    out[j] = (partition_.d() * log_T_ - s) / partition_.dim(j);
  return out;
}

std::vector<double> TilingSpec::tau(double s) const {
  auto out = delta(s);
  for (double& x : out) x /= N_;
  return out;
}

std::vector<double> TilingSpec::tau_infinity() const {
  std::vector<double> out(partition_.k() - 1);
  for (int j = 0; j + 1 < partition_.k(); ++j)
    out[j] = static_cast<double>(partition_.d()) / partition_.dim(j);
  return out;
}

std::vector<double> TilingSpec::beta(std::span<const double> u, double s) const {
  const auto t = tau(s);
  std::vector<double> out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = t[j] * u[j] - log_T_;
  return out;
}

std::vector<double> TilingSpec::beta_tilde(std::span<const double> u) const {
  const auto t = tau_infinity();
  std::vector<double> out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = t[j] * u[j] - log_T_;
  return out;
}

namespace {

// Calls visit(n) for every n in Z_{>=0}^{dim} with sum(n) <= budget.
template <typename Visit>
void for_each_bounded(int dim, int budget, std::vector<int>& n, int pos, Visit&& visit) {
  if (pos == dim) {
    visit(n);
    return;
  }
  for (int v = 0; v <= budget; ++v) {
    n[pos] = v;
    for_each_bounded(dim, budget - v, n, pos + 1, visit);
  }
  n[pos] = 0;
}

}  // namespace

TilingSpec tiling_build(const DomainSpec& spec) {
  if (spec.partition().k() < 2) throw PreconditionError("tiling needs k >= 2 blocks");
  if (!spec.above_threshold())
    throw PreconditionError("tiling requires T > (sup I)^{1/d} = " +
                            std::to_string(spec.validity_threshold()));
  const int N = static_cast<int>(std::floor(spec.log_T()));
  if (N < 1) throw PreconditionError("tiling requires floor(log T) >= 1");
  const int dim = spec.partition().k() - 1;

  // Over [-1, 0)^{k-1}, sup of sum(w) is 0 (not attained) on S_1 and -1 on
  // S_2; the inf of sum(w) is -1 (not attained) on S_1 and -(k-1) on S_2.
  // S_i - n meets S(N) iff sup - sum(n) > -N; S_i - n lies in S(N) iff
  // inf - sum(n) > -N (strictly, when attained).
  std::vector<Translate> t1, t2;
  std::vector<int> n(dim, 0);
  for_each_bounded(dim, N, n, 0, [&](const std::vector<int>& v) {
    const int sum = std::accumulate(v.begin(), v.end(), 0);
    if (sum <= N - 1) t1.push_back({v, true});
    if (sum <= N - 2) t2.push_back({v, sum <= N - dim - 1});
  });
  return TilingSpec(spec, N, std::move(t1), std::move(t2));
}

TilingEval tiling_identity_eval(std::span<const double> z, const DomainSpec& spec,
                                const TilingSpec& tiling) {
  TilingEval out;
  out.indicator_lhs = domain_membership(z, spec) ? 1 : 0;
  const auto& part = spec.partition();
  const auto norms = block_norms(z, part);
  if (std::any_of(norms.begin(), norms.end(), [](double x) { return x == 0.0; })) return out;
  const CoordPoint p = coord_forward(z, part);
  if (!(p.s < part.d() * spec.log_T())) return out;
  const auto tau = tiling.tau(p.s);
  const int dim = part.k() - 1;
  std::vector<double> nd(dim), w(dim), w_global(dim);
  for (int i = 1; i <= 2; ++i) {
    for (const auto& t : tiling.translates(i)) {
      for (int j = 0; j < dim; ++j) nd[j] = t.n[j];
      // Q_{T,i}(s) element v = beta_T(n, s); move z along the flow.
      const auto v = tiling.beta(nd, p.s);
      const auto moved = DiagonalFlow(v, part).apply(z);
      const CoordPoint q = coord_forward(moved, part);
      for (int j = 0; j < dim; ++j) w[j] = q.u[j] / tau[j];
      bool hit = ((i == 1) ? in_tile1(w) : in_tile2(w)) &&
                 spec.interval().contains(std::exp(q.s)) && spec.region().contains(q.xi, part);
      if (hit && !t.contained) {
        for (int j = 0; j < dim; ++j) w_global[j] = w[j] - nd[j];
        hit = in_scaled_simplex(w_global, tiling.N());
      }
      out.tile_sum_rhs += hit ? 1 : 0;
    }
  }
  return out;
}

double tile_boundary_distance(std::span<const double> z, const DomainSpec& spec,
                              const TilingSpec& tiling) {
  const auto& part = spec.partition();
  const auto norms = block_norms(z, part);
  if (std::any_of(norms.begin(), norms.end(), [](double x) { return x == 0.0; })) return 0.0;
  const CoordPoint p = coord_forward(z, part);
  double dist = std::min(std::abs(p.s - std::log(spec.interval().lo())),
                         std::abs(p.s - std::log(spec.interval().hi())));
  dist = std::min(dist, spec.region().boundary_distance(p.xi, part));
  if (!(p.s < part.d() * spec.log_T())) return dist;
  const auto tau = tiling.tau(p.s);
  double sum = 0.0;
  for (std::size_t j = 0; j < p.u.size(); ++j) {
    const double w = (p.u[j] - spec.log_T()) / tau[j];
    dist = std::min(dist, std::abs(w - std::round(w)));
    sum += w;
  }
  dist = std::min(dist, std::abs(sum - std::round(sum)));
  // Block k reaches the cutoff T where its norm equals T.
  dist = std::min(dist, std::abs(std::log(norms.back()) - spec.log_T()));
  return dist;
}

}  // namespace latcount
