#include "latcount/sampling.hpp"

#include <cmath>
#include <string>

#include "latcount/errors.hpp"
#include "latcount/lll.hpp"
#include "latcount/numeric.hpp"

namespace latcount {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

HeckeDraw hecke_draw(int d, std::uint64_t p, Rng& rng) {
  if (d < 2) throw PreconditionError("Hecke sampling needs d >= 2");
  if (!is_prime(p)) throw PreconditionError("Hecke sampling needs a prime p, got " +
                                            std::to_string(p));
  if (p > (1ULL << 40)) throw PreconditionError("Hecke prime too large");
  // Uniform point of P^{d-1}(F_p): draw a nonzero vector, normalise so that
  // the last nonzero coordinate is 1. Each projective point has exactly p-1
  // nonzero representatives, so the result is uniform.
  std::uniform_int_distribution<std::uint64_t> coord(0, p - 1);
  std::vector<std::uint64_t> a(d);
  int pivot = -1;
  do {
    for (auto& x : a) x = coord(rng);
    pivot = -1;
    for (int i = d - 1; i >= 0; --i)
      if (a[i] != 0) { pivot = i; break; }
  } while (pivot < 0);
  // inverse of a[pivot] mod p by Fermat
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
  };
  std::uint64_t inv = 1, base = a[pivot], e = p - 2;
  while (e) {
    if (e & 1) inv = mulmod(inv, base);
    base = mulmod(base, base);
    e >>= 1;
  }
  HeckeDraw out;
  out.functional.resize(d);
  for (int i = 0; i < d; ++i) out.functional[i] = static_cast<std::int64_t>(mulmod(a[i], inv));

  // Kernel of m -> <a, m> mod p with a_pivot = 1: m_pivot = -sum_{j != pivot} a_j m_j.
  out.basis = IntMatrix::Zero(d, d);
  int r = 0;
  for (int j = 0; j < d; ++j) {
    if (j == pivot) continue;
    out.basis(r, j) = 1;
    out.basis(r, pivot) = -out.functional[j];
    ++r;
  }
  out.basis(r, pivot) = static_cast<std::int64_t>(p);
  return out;
}

RowMatrix random_rotation(int d, Rng& rng) {
  std::normal_distribution<double> gauss;
  RowMatrix g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = gauss(rng);
  Eigen::HouseholderQR<RowMatrix> qr(g);
  RowMatrix q = qr.householderQ();
  const RowMatrix rr = qr.matrixQR();
  // Fix column signs so that R has a positive diagonal (Haar on O(d)).
  for (int c = 0; c < d; ++c)
    if (rr(c, c) < 0) q.col(c) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

LatticeBasis hecke_sample(int d, std::uint64_t p, Rng& rng, bool rotate) {
  const HeckeDraw draw = hecke_draw(d, p, rng);
  // Reduce the integer basis first (exact in doubles for entries < 2^53),
  // then scale to covolume one.
  RowMatrix m = draw.basis.cast<double>();
  const LllResult red = lll_reduce(LatticeBasis(std::move(m)), 0.99);
  const double scale = std::pow(static_cast<double>(p), -1.0 / d);
  RowMatrix rows = red.basis.rows() * scale;
  // Rows are vectors: z -> k z maps rows to rows k^T.
  if (rotate) rows = rows * random_rotation(d, rng).transpose();
  return LatticeBasis(std::move(rows));
}

LatticeBasis exact_sample_d2(Rng& rng, ExactSampleStats* stats) {
  // Fundamental domain F = {|x| <= 1/2, x^2 + y^2 >= 1} with measure dx dy / y^2.
  // Proposal: x uniform, y = y0 / U has density y0 / y^2 on y > y0 = sqrt(3)/2,
  // which covers F; accept when inside F.
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double y0 = std::sqrt(3.0) / 2.0;
  double x = 0.0, y = 0.0;
  for (;;) {
    x = unif(rng) - 0.5;
    double v = unif(rng);
    if (v <= 0.0) continue;
    y = y0 / v;
    if (stats) ++stats->proposals;
    if (x * x + y * y >= 1.0) break;
  }
  if (stats) ++stats->accepted;
  const double theta = 2.0 * numeric::kPi * unif(rng);
  const double c = std::cos(theta), s = std::sin(theta);
  const double r = 1.0 / std::sqrt(y);
  // Basis (1, 0), (x, y) scaled to determinant one, rotated.
  RowMatrix b(2, 2);
  const double v1[2] = {r, 0.0}, v2[2] = {r * x, r * y};
  b << c * v1[0] - s * v1[1], s * v1[0] + c * v1[1], c * v2[0] - s * v2[1], s * v2[0] + c * v2[1];
  return LatticeBasis(std::move(b));
}

}  // namespace latcount
