#include "latcount/lattice.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "latcount/errors.hpp"
#include "latcount/numeric.hpp"

namespace latcount {

LatticeBasis::LatticeBasis(RowMatrix basis) : basis_(std::move(basis)) {
  if (basis_.rows() == 0 || basis_.rows() != basis_.cols())
    throw PreconditionError("lattice basis must be a non-empty square matrix");
  if (!basis_.allFinite()) throw PreconditionError("lattice basis has non-finite entries");
  det_abs_ = std::abs(basis_.partialPivLu().determinant());
  if (!(det_abs_ > 0.0)) throw PreconditionError("lattice basis rows are linearly dependent");
}

std::vector<double> LatticeBasis::point(std::span<const std::int64_t> coeffs) const {
  std::vector<double> out(dim());
  point(coeffs, out);
  return out;
}

void LatticeBasis::point(std::span<const std::int64_t> coeffs, std::span<double> out) const {
  const int d = dim();
  for (int i = 0; i < d; ++i)
    out[i] = numeric::dot2<std::int64_t>(coeffs, basis_.data() + i, static_cast<std::size_t>(d));
}

LatticeBasis LatticeBasis::identity(int d) { return LatticeBasis(RowMatrix::Identity(d, d)); }

LatticeBasis LatticeBasis::diagonal(std::span<const double> entries) {
  const int d = static_cast<int>(entries.size());
  RowMatrix m = RowMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = entries[i];
  return LatticeBasis(std::move(m));
}

LatticeBasis apply_flow(const DiagonalFlow& flow, const LatticeBasis& basis) {
  if (flow.partition().d() != basis.dim())
    throw PreconditionError("flow dimension " + std::to_string(flow.partition().d()) +
                            " does not match lattice dimension " + std::to_string(basis.dim()));
  RowMatrix m = basis.rows();
  const auto diag = flow.diagonal();
  for (int c = 0; c < basis.dim(); ++c) m.col(c) *= diag[c];
  return LatticeBasis(std::move(m));
}

LatticeBasis apply_linear(const RowMatrix& L, const LatticeBasis& basis) {
  if (L.rows() != basis.dim() || L.cols() != basis.dim())
    throw PreconditionError("linear map dimension does not match lattice dimension");
  return LatticeBasis(basis.rows() * L.transpose());
}

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

void write_lattice(std::ostream& os, const LatticeBasis& basis) {
  const int d = basis.dim();
  os << d << "\n";
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) os << (c ? " " : "") << format_double(basis.rows()(r, c));
    os << "\n";
  }
}

LatticeBasis read_lattice(std::istream& is) {
  int d = 0;
  if (!(is >> d) || d < 1) throw PreconditionError("lattice file: missing or invalid dimension");
  RowMatrix m(d, d);
  std::string tok;
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      if (!(is >> tok)) throw PreconditionError("lattice file: expected " + std::to_string(d * d) +
                                                " entries");
      double v = 0.0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size())
        throw PreconditionError("lattice file: bad number '" + tok + "'");
      m(r, c) = v;
    }
  }
  return LatticeBasis(std::move(m));
}

}  // namespace latcount
