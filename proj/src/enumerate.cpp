#include "latcount/enumerate.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "latcount/errors.hpp"
#include "latcount/lll.hpp"

namespace latcount {

EllipsoidEnumerator::EllipsoidEnumerator(const RowMatrix& basis, std::span<const double> weights,
                                         std::span<const double> center, double r2)
    : n_(static_cast<int>(basis.rows())), r2_(r2), basis_(basis) {
  if (static_cast<int>(weights.size()) != n_ || static_cast<int>(center.size()) != n_)
    throw PreconditionError("enumerator: weights and centre must have the lattice dimension");
  RowMatrix scaled = basis;
  for (int c = 0; c < n_; ++c) scaled.col(c) *= weights[c];
  RowMatrix mu;
  gram_schmidt(scaled, mu, bn_);
  mu_.assign(mu.data(), mu.data() + static_cast<std::size_t>(n_) * n_);

  // Coordinates t of the scaled centre in the scaled basis: t B' = w c.
  Eigen::VectorXd wc(n_);
  for (int c = 0; c < n_; ++c) wc(c) = weights[c] * center[c];
  Eigen::VectorXd t = scaled.transpose().partialPivLu().solve(wc);
  t_.assign(t.data(), t.data() + n_);
  // t is expressed in the b basis; the recursion needs GS coordinates:
  // centre_i = t_i + sum_{j>i} t_j mu_{j,i}, which the loop reproduces by
  // subtracting x_j mu_{j,i}; fold the t_j mu_{j,i} part in here.
  std::vector<double> g(n_);
  for (int i = 0; i < n_; ++i) {
    g[i] = t_[i];
    for (int j = i + 1; j < n_; ++j) g[i] += t_[j] * mu_[j * n_ + i];
  }
  t_ = std::move(g);
  x_.assign(n_, 0);
  pts_.assign(static_cast<std::size_t>(n_ + 1) * n_, 0.0);
}

BoxConstraint BoxConstraint::symmetric(int d, double half_width) {
  return BoxConstraint{std::vector<double>(d, -half_width), std::vector<double>(d, half_width)};
}

bool BoxConstraint::contains(std::span<const double> z) const {
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] < lo[i] || z[i] > hi[i]) return false;
  return true;
}

std::vector<LatticePoint> enumerate_in_box(const LatticeBasis& basis, const BoxConstraint& box,
                                           bool exclude_origin, std::uint64_t max_candidates) {
  const int d = basis.dim();
  if (static_cast<int>(box.lo.size()) != d || static_cast<int>(box.hi.size()) != d)
    throw PreconditionError("box dimension does not match lattice dimension");
  std::vector<double> center(d), weights(d);
  for (int i = 0; i < d; ++i) {
    if (!(box.hi[i] >= box.lo[i])) throw PreconditionError("box has hi < lo");
    center[i] = 0.5 * (box.lo[i] + box.hi[i]);
    const double half = 0.5 * (box.hi[i] - box.lo[i]);
    weights[i] = 1.0 / std::max(half * (1.0 + 1e-9) + 1e-12, 1e-300);
  }
  const LllResult red = lll_reduce(basis, 0.99);
  EllipsoidEnumerator en(red.basis.rows(), weights, center, static_cast<double>(d));

  std::vector<LatticePoint> out;
  std::vector<std::int64_t> coeffs(d);
  std::vector<double> z(d);
  std::uint64_t seen = 0;
  en.run([&](std::span<const std::int64_t> m, std::span<const double>) {
    if (++seen > max_candidates)
      throw std::runtime_error("box enumeration exceeded " + std::to_string(max_candidates) +
                               " candidates");
    for (int c = 0; c < d; ++c) {
      std::int64_t acc = 0;
      for (int r = 0; r < d; ++r) acc += m[r] * red.transform(r, c);
      coeffs[c] = acc;
    }
    if (exclude_origin && std::all_of(coeffs.begin(), coeffs.end(), [](auto v) { return v == 0; }))
      return;
    basis.point(coeffs, z);
    if (!box.contains(z)) return;
    out.push_back(LatticePoint{coeffs, z});
  });
  return out;
}

}  // namespace latcount
