#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace latcount::numeric {

inline constexpr double kPi = 3.14159265358979323846;

// Error-free transformations (Knuth TwoSum, FMA-based TwoProduct).
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

// Compensated dot product (Ogita-Rump-Oishi Dot2): result is as accurate as
// if computed in twice the working precision, then rounded.
template <typename Int>
double dot2(std::span<const Int> coeffs, const double* column, std::size_t stride) {
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    double p, ep, t, et;
    two_prod(static_cast<double>(coeffs[i]), column[i * stride], p, ep);
    two_sum(s, p, t, et);
    s = t;
    c += ep + et;
  }
  return s + c;
}

// Pairwise summation: order of operations depends only on the input length.
double pairwise_sum(std::span<const double> xs);

// Adaptive Simpson quadrature on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 50);

// Surface measure of the unit sphere S^{n-1} in R^n; for n = 1 this is the
// counting measure of {-1, +1}, i.e. 2.
double sphere_area(int n);

// Volume of the unit ball in R^n.
double ball_volume(int n);

// Integral of sin(t)^m over [0, theta], by the standard reduction formula.
double sin_power_integral(int m, double theta);

// SplitMix64 mixing step; used to derive per-sample generator seeds.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for sample `index` under master seed `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace latcount::numeric
