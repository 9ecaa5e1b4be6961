#include "latcount/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "latcount/errors.hpp"
#include "latcount/lll.hpp"

namespace latcount {

double alpha_proxy(const LatticeBasis& basis) {
  const LllResult red = lll_reduce(basis, 0.99);
  const std::vector<double> bn = gram_schmidt_sq_norms(red.basis.rows());
  // Work with logs; the m = d term is det^{-1} = 1 for unimodular input.
  double log_prod = 0.0, best = 0.0;
  for (double b : bn) {
    log_prod += 0.5 * std::log(b);
    best = std::max(best, -log_prod);
  }
  return std::exp(best);
}

double exact_alpha_d2(const LatticeBasis& basis, int height) {
  if (basis.dim() != 2) throw PreconditionError("exact alpha is only available for d = 2");
  const LllResult red = lll_reduce(basis, 0.99);
  const auto& b = red.basis.rows();
  double shortest = INFINITY;
  for (long m = -height; m <= height; ++m) {
    for (long n = 0; n <= height; ++n) {
      if (n == 0 && m <= 0) continue;
      if (std::gcd(m, n) != 1) continue;
      const double x = m * b(0, 0) + n * b(1, 0), y = m * b(0, 1) + n * b(1, 1);
      shortest = std::min(shortest, std::hypot(x, y));
    }
  }
  // alpha = max over rational subspaces: {0}, lines (1/length of primitive
  // vector), the plane (1/covolume).
  return std::max({1.0, 1.0 / shortest, 1.0 / basis.det_abs()});
}

}  // namespace latcount
