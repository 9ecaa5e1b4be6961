#include "latcount/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "latcount/errors.hpp"

namespace latcount {

DomainSpec::DomainSpec(DimensionPartition partition, Interval interval, AngularRegion region,
                       double T)
    : partition_(std::move(partition)),
      interval_(interval),
      region_(std::move(region)),
      T_(T),
      log_T_(std::log(T)) {
  if (!(T > 1.0) || !std::isfinite(T)) throw PreconditionError("cutoff T must satisfy T > 1");
  region_.check_compatible(partition_);
}

double DomainSpec::validity_threshold() const noexcept {
  return std::exp(std::log(interval_.hi()) / partition_.d());
}

std::vector<double> block_norms(std::span<const double> z, const DimensionPartition& partition) {
  if (static_cast<int>(z.size()) != partition.d())
    throw PreconditionError("point dimension does not match the partition");
  std::vector<double> norms(partition.k());
  for (int j = 0; j < partition.k(); ++j) {
    double s = 0.0;
    for (int i = 0; i < partition.dim(j); ++i) {
      const double x = z[partition.offset(j) + i];
      s += x * x;
    }
    norms[j] = std::sqrt(s);
  }
  return norms;
}

CoordPoint coord_forward(std::span<const double> z, const DimensionPartition& partition) {
  const auto norms = block_norms(z, partition);
  CoordPoint p;
  p.u.resize(partition.k() - 1);
  p.xi.resize(partition.d());
  for (int j = 0; j < partition.k(); ++j) {
    if (norms[j] == 0.0) throw ZeroBlockError(j);
    const double lg = std::log(norms[j]);
    if (j + 1 < partition.k()) p.u[j] = lg;
    p.s += partition.dim(j) * lg;
    for (int i = 0; i < partition.dim(j); ++i) {
      const int idx = partition.offset(j) + i;
      p.xi[idx] = z[idx] / norms[j];
    }
  }
  return p;
}

std::vector<double> coord_inverse(const CoordPoint& p, const DimensionPartition& partition) {
  const int k = partition.k();
  if (static_cast<int>(p.u.size()) != k - 1 || static_cast<int>(p.xi.size()) != partition.d())
    throw PreconditionError("coordinate point does not match the partition");
  std::vector<double> z(partition.d());
  double weighted = 0.0;
  for (int j = 0; j < k; ++j) {
    double radius;
    if (j + 1 < k) {
      radius = std::exp(p.u[j]);
      weighted += partition.dim(j) * p.u[j];
    } else {
      radius = std::exp((p.s - weighted) / partition.dim(k - 1));
    }
    for (int i = 0; i < partition.dim(j); ++i) {
      const int idx = partition.offset(j) + i;
      z[idx] = radius * p.xi[idx];
    }
  }
  return z;
}

namespace {

// Unit blocks of z given nonzero norms.
std::vector<double> unit_blocks(std::span<const double> z, const std::vector<double>& norms,
                                const DimensionPartition& partition) {
  std::vector<double> xi(z.size());
  for (int j = 0; j < partition.k(); ++j) {
    for (int i = 0; i < partition.dim(j); ++i) {
      const int idx = partition.offset(j) + i;
      xi[idx] = z[idx] / norms[j];
    }
  }
  return xi;
}

}  // namespace

bool domain_membership(std::span<const double> z, const DomainSpec& spec) {
  const auto& part = spec.partition();
  const auto norms = block_norms(z, part);
  double n = 1.0;
  for (int j = 0; j < part.k(); ++j) {
    if (!(norms[j] > 0.0) || !(norms[j] < spec.T())) return false;
    n *= std::pow(norms[j], part.dim(j));
  }
  if (!spec.interval().contains(n)) return false;
  return spec.region().contains(unit_blocks(z, norms, part), part);
}

double boundary_margin(std::span<const double> z, const DomainSpec& spec) {
  const auto& part = spec.partition();
  const auto norms = block_norms(z, part);
  double margin = std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (int j = 0; j < part.k(); ++j) {
    if (norms[j] == 0.0) return 0.0;
    const double lg = std::log(norms[j]);
    s += part.dim(j) * lg;
    margin = std::min(margin, std::abs(lg - spec.log_T()));
  }
  margin = std::min({margin, std::abs(s - std::log(spec.interval().lo())),
                     std::abs(s - std::log(spec.interval().hi()))});
  return std::min(margin, spec.region().boundary_distance(unit_blocks(z, norms, part), part));
}

bool near_boundary(std::span<const double> z, const DomainSpec& spec, double tol) {
  const auto& part = spec.partition();
  const auto norms = block_norms(z, part);
  double s = 0.0;
  for (int j = 0; j < part.k(); ++j) {
    if (norms[j] == 0.0) return false;
    const double lg = std::log(norms[j]);
    if (lg > spec.log_T() + tol) return false;
    s += part.dim(j) * lg;
  }
  if (s < std::log(spec.interval().lo()) - tol || s > std::log(spec.interval().hi()) + tol)
    return false;
  const auto xi = unit_blocks(z, norms, part);
  for (int j = 0; j < part.k(); ++j) {
    const auto block = std::span<const double>(xi).subspan(part.offset(j), part.dim(j));
    const auto& f = spec.region().factor(j);
    if (!factor_contains(f, block) && factor_boundary_distance(f, block) > tol) return false;
  }
  return boundary_margin(z, spec) < tol;
}

double simplex_volume(int k) { return 1.0 / std::tgamma(static_cast<double>(k)); }

namespace {

// Antiderivative of (D - s)^m e^s: e^s sum_j m!/(m-j)! (D - s)^{m-j}.
double shifted_power_antiderivative(int m, double D, double s) {
  double sum = 0.0, coef = 1.0;
  for (int j = 0; j <= m; ++j) {
    sum += coef * std::pow(D - s, m - j);
    coef *= (m - j);
  }
  return std::exp(s) * sum;
}

// Antiderivative of s^m e^s: e^s sum_j (-1)^j m!/(m-j)! s^{m-j}.
double power_antiderivative(int m, double s) {
  double sum = 0.0, coef = 1.0;
  for (int j = 0; j <= m; ++j) {
    sum += ((j % 2) ? -coef : coef) * std::pow(s, m - j);
    coef *= (m - j);
  }
  return std::exp(s) * sum;
}

double volume_prefactor(const DimensionPartition& partition, double kappa) {
  const int k = partition.k();
  return kappa / partition.dim(k - 1) * simplex_volume(k) / partition.leading_product();
}

}  // namespace

double domain_volume_any_T(const DimensionPartition& partition, const Interval& interval,
                           double kappa, double T) {
  const int m = partition.k() - 1;
  const double D = partition.d() * std::log(T);
  const double a = std::log(interval.lo());
  const double b = std::min(std::log(interval.hi()), D);
  if (!(b > a) || kappa == 0.0) return 0.0;
  const double integral =
      shifted_power_antiderivative(m, D, b) - shifted_power_antiderivative(m, D, a);
  return volume_prefactor(partition, kappa) * integral;
}

double domain_volume(const DomainSpec& spec) {
  if (!spec.above_threshold())
    throw PreconditionError("domain_volume requires T > (sup I)^{1/d} = " +
                            std::to_string(spec.validity_threshold()) + ", got T = " +
                            std::to_string(spec.T()));
  return domain_volume_any_T(spec.partition(), spec.interval(), angular_measure(spec.region()),
                             spec.T());
}

std::vector<double> volume_polynomial(const DimensionPartition& partition,
                                      const Interval& interval, const AngularRegion& region) {
  region.check_compatible(partition);
  const int m = partition.k() - 1;
  const double d = partition.d();
  const double a = std::log(interval.lo()), b = std::log(interval.hi());
  const double pre = volume_prefactor(partition, angular_measure(region));
  std::vector<double> coeffs(m + 1);
  double binom = 1.0;
  for (int i = 0; i <= m; ++i) {
    // (d t - s)^m = sum_i C(m, i) d^i t^i (-s)^{m-i}
    const int p = m - i;
    const double moment = power_antiderivative(p, b) - power_antiderivative(p, a);
    coeffs[i] = pre * binom * std::pow(d, i) * ((p % 2) ? -moment : moment);
    binom = binom * (m - i) / (i + 1);
  }
  return coeffs;
}

}  // namespace latcount
