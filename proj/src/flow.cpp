#include "latcount/flow.hpp"

#include <cmath>

#include "latcount/errors.hpp"

namespace latcount {

DiagonalFlow::DiagonalFlow(std::vector<double> u, DimensionPartition partition)
    : u_(std::move(u)), partition_(std::move(partition)) {
  const int k = partition_.k();
  if (static_cast<int>(u_.size()) != k - 1)
    throw PreconditionError("flow parameter must have length k-1");
  double weighted = 0.0;
  scales_.resize(k);
  for (int j = 0; j + 1 < k; ++j) {
    scales_[j] = std::exp(u_[j]);
    weighted += partition_.dim(j) * u_[j];
  }
  scales_[k - 1] = std::exp(-weighted / partition_.dim(k - 1));
}

std::vector<double> DiagonalFlow::diagonal() const {
  std::vector<double> diag(partition_.d());
  for (int j = 0; j < partition_.k(); ++j) {
    for (int i = 0; i < partition_.dim(j); ++i) diag[partition_.offset(j) + i] = scales_[j];
  }
  return diag;
}

DiagonalFlow DiagonalFlow::inverse() const {
  std::vector<double> v(u_.size());
  for (std::size_t i = 0; i < u_.size(); ++i) v[i] = -u_[i];
  return DiagonalFlow(std::move(v), partition_);
}

DiagonalFlow DiagonalFlow::compose(const DiagonalFlow& other) const {
  if (!(other.partition_ == partition_)) throw PreconditionError("flows over different partitions");
  std::vector<double> v(u_.size());
  for (std::size_t i = 0; i < u_.size(); ++i) v[i] = u_[i] + other.u_[i];
  return DiagonalFlow(std::move(v), partition_);
}

std::vector<double> DiagonalFlow::apply(std::span<const double> z) const {
  if (static_cast<int>(z.size()) != partition_.d())
    throw PreconditionError("point dimension does not match the flow");
  std::vector<double> out(z.begin(), z.end());
  for (int j = 0; j < partition_.k(); ++j) {
    for (int i = 0; i < partition_.dim(j); ++i) out[partition_.offset(j) + i] *= scales_[j];
  }
  return out;
}

}  // namespace latcount
