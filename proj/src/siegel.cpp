#include "latcount/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <type_traits>

#include "latcount/errors.hpp"
#include "latcount/numeric.hpp"
#include "latcount/variance.hpp"

namespace latcount {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double norm_sq(std::span<const double> z) {
  double s = 0.0;
  for (double x : z) s += x * x;
  return s;
}

void check_dim(const TestFunctionSpec& f, int d) {
  if (const auto* b = std::get_if<BoxIndicator>(&f)) {
    if (static_cast<int>(b->box.lo.size()) != d) throw PreconditionError("box dimension mismatch");
  } else if (const auto* s = std::get_if<DomainIndicator>(&f)) {
    if (s->spec.partition().d() != d) throw PreconditionError("domain dimension mismatch");
  }
}

// int_{R^d} (1 - |x|^2)^a (1 - t^2 |x|^2)^b over |x| < 1, t >= 1 (support |x| < 1/t).
double bump_product(int d, int a, double t, int b) {
  auto g = [&](double r) {
    return std::pow(1 - r * r, a) * std::pow(1 - t * t * r * r, b) * std::pow(r, d - 1);
  };
  return numeric::sphere_area(d) * numeric::adaptive_simpson(g, 0.0, 1.0 / t, 1e-13);
}

}  // namespace

double evaluate(const TestFunctionSpec& f, std::span<const double> z) {
  return std::visit(
      overloaded{
          [&](const BallIndicator& b) { return norm_sq(z) <= b.radius * b.radius ? 1.0 : 0.0; },
          [&](const BoxIndicator& b) { return b.box.contains(z) ? 1.0 : 0.0; },
          [&](const DomainIndicator& s) { return domain_membership(z, s.spec) ? 1.0 : 0.0; },
          [&](const RadialBump& b) {
            const double t = 1.0 - norm_sq(z) / (b.radius * b.radius);
            return t > 0.0 ? std::pow(t, b.smoothness) : 0.0;
          }},
      f);
}

double sup_norm(const TestFunctionSpec&) { return 1.0; }

double support_radius(const TestFunctionSpec& f, int d) {
  check_dim(f, d);
  return std::visit(overloaded{[](const BallIndicator& b) { return b.radius; },
                               [](const RadialBump& b) { return b.radius; },
                               [](const BoxIndicator& b) {
                                 double s = 0.0;
                                 for (std::size_t i = 0; i < b.box.lo.size(); ++i) {
                                   const double m = std::max(std::abs(b.box.lo[i]),
                                                             std::abs(b.box.hi[i]));
                                   s += m * m;
                                 }
                                 return std::sqrt(s);
                               },
                               [](const DomainIndicator& s) {
                                 return s.spec.T() * std::sqrt(static_cast<double>(s.spec.partition().k()));
                               }},
                    f);
}

BoxConstraint support_box(const TestFunctionSpec& f, int d) {
  check_dim(f, d);
  if (const auto* b = std::get_if<BoxIndicator>(&f)) return b->box;
  if (const auto* s = std::get_if<DomainIndicator>(&f))
    return BoxConstraint::symmetric(d, s->spec.T() * (1 + 1e-9));
  return BoxConstraint::symmetric(d, support_radius(f, d));
}

double integral(const TestFunctionSpec& f, int d) {
  check_dim(f, d);
  return std::visit(
      overloaded{[d](const BallIndicator& b) { return numeric::ball_volume(d) * std::pow(b.radius, d); },
                 [](const BoxIndicator& b) {
                   double v = 1.0;
                   for (std::size_t i = 0; i < b.box.lo.size(); ++i) v *= b.box.hi[i] - b.box.lo[i];
                   return v;
                 },
                 [](const DomainIndicator& s) {
                   return domain_volume_any_T(s.spec.partition(), s.spec.interval(),
                                              angular_measure(s.spec.region()), s.spec.T());
                 },
                 [d](const RadialBump& b) {
                   // R^d |S^{d-1}| Gamma(d/2) m! / (2 Gamma(d/2 + m + 1))
                   const double m = b.smoothness;
                   return std::pow(b.radius, d) * numeric::sphere_area(d) *
                          std::exp(std::lgamma(d / 2.0) + std::lgamma(m + 1) -
                                   std::lgamma(d / 2.0 + m + 1)) /
                          2.0;
                 }},
      f);
}

double l2_norm_sq(const TestFunctionSpec& f, int d) {
  if (const auto* b = std::get_if<RadialBump>(&f))
    return integral(RadialBump{b->radius, 2 * b->smoothness}, d);
  return integral(f, d);  // indicators
}

double siegel_transform(const TestFunctionSpec& f, const LatticeBasis& basis) {
  const int d = basis.dim();
  const auto pts = enumerate_in_box(basis, support_box(f, d), true);
  std::vector<double> vals;
  vals.reserve(pts.size());
  for (const auto& p : pts) vals.push_back(evaluate(f, p.point));
  // Order-independent for indicator sums; pairwise keeps smooth sums stable.
  std::sort(vals.begin(), vals.end());
  return numeric::pairwise_sum(vals);
}

double rogers_pair_integral(const TestFunctionSpec& f, int d, long p, long q, int sign) {
  check_dim(f, d);
  if (p < 1 || q < 1) throw PreconditionError("Rogers scalings must be positive");
  const double m = static_cast<double>(std::max(p, q));
  return std::visit(
      overloaded{
          [&](const BallIndicator& b) { return numeric::ball_volume(d) * std::pow(b.radius / m, d); },
          [&](const RadialBump& b) {
            const double lo = static_cast<double>(std::min(p, q));
            // substitute x = lo z / R
            return std::pow(b.radius / lo, d) * bump_product(d, b.smoothness, m / lo, b.smoothness);
          },
          [&](const BoxIndicator& b) {
            double v = 1.0;
            for (int i = 0; i < d; ++i) {
              const double l1 = b.box.lo[i] / p, h1 = b.box.hi[i] / p;
              double l2 = b.box.lo[i] / q, h2 = b.box.hi[i] / q;
              if (sign < 0) std::tie(l2, h2) = std::pair(-h2, -l2);
              v *= std::max(0.0, std::min(h1, h2) - std::max(l1, l2));
            }
            return v;
          },
          [&](const DomainIndicator& s) {
            // Omega/p cap (sign Omega)/q: N in I/p^d cap I/q^d, xi in B (cap -B),
            // block norms below T / max(p, q).
            const auto& I = s.spec.interval();
            const double ap = std::pow(static_cast<double>(p), -d), aq = std::pow(static_cast<double>(q), -d);
            const double lo = std::max(I.lo() * ap, I.lo() * aq), hi = std::min(I.hi() * ap, I.hi() * aq);
            if (!(hi > lo)) return 0.0;
            const double kappa = sign > 0 ? angular_measure(s.spec.region())
                                          : angular_symmetric_overlap(s.spec.region());
            return domain_volume_any_T(s.spec.partition(), Interval(lo, hi), kappa, s.spec.T() / m);
          }},
      f);
}

RogersFormula rogers_variance(const TestFunctionSpec& f, int d, int P) {
  if (d < 3) throw PreconditionError("Rogers' formula needs d >= 3");
  if (P < 1) throw PreconditionError("truncation order must be >= 1");
  check_dim(f, d);
  const ZetaValue z = zeta(d);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(P) * 2);
  for (long n = 1; n <= P; ++n) {
    // all pairs with max(p, q) = n
    double row = 0.0;
    for (long t = 1; t <= n; ++t) {
      const double a = rogers_pair_integral(f, d, n, t, +1) + rogers_pair_integral(f, d, n, t, -1);
      row += (t == n) ? a : 2 * a;  // (n, t) and (t, n) by symmetry of the integrand
    }
    terms.push_back(row);
  }
  const double sum = numeric::pairwise_sum(terms);
  // Pairs with max(p, q) = n > P: each integral is at most sup^2 V_d (R/n)^d,
  // 2n - 1 pairs, two signs; sum_{n > P} (2n - 1) n^{-d} <= 2 P^{2-d} / (d - 2).
  const double s = sup_norm(f), R = support_radius(f, d);
  const double tail_terms = 2.0 * s * s * numeric::ball_volume(d) * std::pow(R, d) * 2.0 *
                            std::pow(static_cast<double>(P), 2.0 - d) / (d - 2.0);
  RogersFormula out;
  out.truncation_order = P;
  out.value = sum / z.value;
  out.tail_bound = tail_terms / (z.value - z.error) + sum * z.error / (z.value * (z.value - z.error));
  return out;
}

double rogers_l2_bound(const TestFunctionSpec& f, int d) {
  if (d < 3) throw PreconditionError("the L2 bound needs d >= 3");
  const double l1 = integral(f, d);
  const double zh = zeta_real(d / 2.0);
  return l1 * l1 + 2.0 * zh * zh / zeta(d).value * l2_norm_sq(f, d);
}

}  // namespace latcount
