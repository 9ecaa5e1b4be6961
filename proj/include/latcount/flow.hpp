#pragma once

#include <span>
#include <vector>

#include "latcount/partition.hpp"

namespace latcount {

// The diagonal flow a(u) = diag(e^{u_1} I_{d_1}, ..., e^{u_{k-1}} I_{d_{k-1}},
// e^{-(sum_j d_j u_j)/d_k} I_{d_k}); a(u) a(v) = a(u + v), det a(u) = 1.
class DiagonalFlow {
 public:
  DiagonalFlow(std::vector<double> u, DimensionPartition partition);

  std::span<const double> u() const noexcept { return u_; }
  const DimensionPartition& partition() const noexcept { return partition_; }
  // Scale factor applied to block j.
  double block_scale(int j) const { return scales_.at(j); }
  // Diagonal entries of a(u), length d.
  std::vector<double> diagonal() const;
  DiagonalFlow inverse() const;
  DiagonalFlow compose(const DiagonalFlow& other) const;

  // a(u) z for a point z of R^d.
  std::vector<double> apply(std::span<const double> z) const;

 private:
  std::vector<double> u_;
  DimensionPartition partition_;
  std::vector<double> scales_;
};

}  // namespace latcount
