#pragma once

#include <span>
#include <variant>

#include "latcount/domain.hpp"
#include "latcount/enumerate.hpp"
#include "latcount/lattice.hpp"

namespace latcount {

struct BallIndicator {
  double radius = 1.0;  // closed ball |z| <= radius
};
struct BoxIndicator {
  BoxConstraint box;  // closed box
};
struct DomainIndicator {
  DomainSpec spec;
};
// (1 - |z|^2 / R^2)^m on |z| < R, zero outside.
struct RadialBump {
  double radius = 1.0;
  int smoothness = 2;
};

using TestFunctionSpec = std::variant<BallIndicator, BoxIndicator, DomainIndicator, RadialBump>;

double evaluate(const TestFunctionSpec& f, std::span<const double> z);
double sup_norm(const TestFunctionSpec& f);
// Radius of a centred ball containing the support.
double support_radius(const TestFunctionSpec& f, int d);
BoxConstraint support_box(const TestFunctionSpec& f, int d);

// ||f||_1 and ||f||_2^2 over R^d, in closed form.
double integral(const TestFunctionSpec& f, int d);
double l2_norm_sq(const TestFunctionSpec& f, int d);

// Sum of f over the nonzero points of the lattice.
double siegel_transform(const TestFunctionSpec& f, const LatticeBasis& basis);

// int f(p z) f(sign * q z) dz.
double rogers_pair_integral(const TestFunctionSpec& f, int d, long p, long q, int sign);

// Variance of f^ over the space of unimodular lattices,
//   (1/zeta(d)) sum_{p,q >= 1} int f(pz) f(qz) + f(pz) f(-qz) dz,
// with max(p, q) <= P and a bound on the omitted part.
struct RogersFormula {
  double value = 0.0;
  double tail_bound = 0.0;
  int truncation_order = 0;
};
RogersFormula rogers_variance(const TestFunctionSpec& f, int d, int P);

// ||f||_1^2 + 2 zeta(d/2)^2 / zeta(d) ||f||_2^2, valid for nonnegative f, d >= 3.
double rogers_l2_bound(const TestFunctionSpec& f, int d);

}  // namespace latcount
