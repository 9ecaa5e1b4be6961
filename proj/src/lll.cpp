#include "latcount/lll.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>

#include "latcount/errors.hpp"
#include "latcount/numeric.hpp"

namespace latcount {

void gram_schmidt(const RowMatrix& rows, RowMatrix& mu, std::vector<double>& sq_norms) {
  const int n = static_cast<int>(rows.rows());
  mu = RowMatrix::Zero(n, n);
  sq_norms.assign(n, 0.0);
  RowMatrix star = rows;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      mu(i, j) = rows.row(i).dot(star.row(j)) / sq_norms[j];
      star.row(i) -= mu(i, j) * star.row(j);
    }
    mu(i, i) = 1.0;
    sq_norms[i] = star.row(i).squaredNorm();
  }
}

std::vector<double> gram_schmidt_sq_norms(const RowMatrix& rows) {
  RowMatrix mu;
  std::vector<double> b;
  gram_schmidt(rows, mu, b);
  return b;
}

namespace {

// Recompute row k of the Gram-Schmidt data given rows 0..k-1 already valid.
void update_gs_row(const RowMatrix& b, RowMatrix& star, RowMatrix& mu, std::vector<double>& bn,
                   int k) {
  star.row(k) = b.row(k);
  for (int j = 0; j < k; ++j) {
    mu(k, j) = b.row(k).dot(star.row(j)) / bn[j];
    star.row(k) -= mu(k, j) * star.row(j);
  }
  bn[k] = star.row(k).squaredNorm();
}

}  // namespace

LllResult lll_reduce(const LatticeBasis& basis, double delta) {
  if (!(delta > 0.25 && delta < 1.0)) throw PreconditionError("LLL delta must lie in (0.25, 1)");
  const int n = basis.dim();
  RowMatrix b = basis.rows();
  IntMatrix u = IntMatrix::Identity(n, n);
  RowMatrix star(n, n), mu = RowMatrix::Zero(n, n);
  std::vector<double> bn(n);
  for (int i = 0; i < n; ++i) update_gs_row(b, star, mu, bn, i);

  constexpr double kMaxCoeff = 9.0e15;
  long guard = 0;
  int k = 1;
  while (k < n) {
    if (++guard > 10'000'000) throw std::runtime_error("LLL failed to converge");
    // Rows below k are kept current; row k may be stale after earlier swaps.
    update_gs_row(b, star, mu, bn, k);
    // Size reduction, repeated while floating-point drift leaves |mu| > 1/2.
    for (int pass = 0; pass < 8; ++pass) {
      bool changed = false;
      for (int j = k - 1; j >= 0; --j) {
        const double q = std::nearbyint(mu(k, j));
        if (q == 0.0) continue;
        if (std::abs(q) > kMaxCoeff) throw std::runtime_error("LLL coefficient overflow");
        changed = true;
        const auto qi = static_cast<std::int64_t>(q);
        b.row(k) -= q * b.row(j);
        u.row(k) -= qi * u.row(j);
        for (int l = 0; l < j; ++l) mu(k, l) -= q * mu(j, l);
        mu(k, j) -= q;
      }
      if (!changed) break;
      update_gs_row(b, star, mu, bn, k);
    }
    if (bn[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bn[k - 1]) {
      ++k;
    } else {
      b.row(k).swap(b.row(k - 1));
      u.row(k).swap(u.row(k - 1));
      update_gs_row(b, star, mu, bn, k - 1);
      k = std::max(k - 1, 1);
    }
  }

  // Exact rows from the integer transform.
  const RowMatrix& in = basis.rows();
  RowMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    std::span<const std::int64_t> coeffs(u.row(r).data(), static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c)
      out(r, c) = numeric::dot2<std::int64_t>(coeffs, in.data() + c, static_cast<std::size_t>(n));
  }
  return LllResult{LatticeBasis(std::move(out)), std::move(u)};
}

}  // namespace latcount
