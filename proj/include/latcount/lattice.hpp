#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "latcount/flow.hpp"

namespace latcount {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// A full-rank lattice in R^d; the ROWS of the matrix are the basis vectors and
// lattice points are m * basis for integer row vectors m.
class LatticeBasis {
 public:
  explicit LatticeBasis(RowMatrix basis);

  int dim() const noexcept { return static_cast<int>(basis_.rows()); }
  const RowMatrix& rows() const noexcept { return basis_; }
  double det_abs() const noexcept { return det_abs_; }
  bool is_unimodular(double tol = 1e-9) const noexcept { return std::abs(det_abs_ - 1.0) <= tol; }

  // m * basis with a compensated dot product per coordinate; identical
  // coefficient vectors always produce bit-identical points.
  std::vector<double> point(std::span<const std::int64_t> coeffs) const;
  void point(std::span<const std::int64_t> coeffs, std::span<double> out) const;

  static LatticeBasis identity(int d);
  static LatticeBasis diagonal(std::span<const double> entries);

 private:
  RowMatrix basis_;
  double det_abs_;
};

// a(u) Lambda: block j of every basis row is scaled by the flow factor.
LatticeBasis apply_flow(const DiagonalFlow& flow, const LatticeBasis& basis);

// L Lambda for a d x d matrix L acting on column vectors (rows map to b L^T).
LatticeBasis apply_linear(const RowMatrix& L, const LatticeBasis& basis);

// Text format: first line d, then d lines of d numbers (rows are basis
// vectors), written in shortest round-trip decimal form.
void write_lattice(std::ostream& os, const LatticeBasis& basis);
LatticeBasis read_lattice(std::istream& is);

// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

}  // namespace latcount
