#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace latcount {

using SetPartition = std::vector<std::vector<int>>;

// All partitions of {1, ..., r}, 1 <= r <= 8, in restricted-growth order.
std::vector<SetPartition> set_partitions(int r);

// r-th sample cumulant, r >= 2: the moment-cumulant inversion
//   sum_P (-1)^{|P|-1} (|P|-1)! prod_{b in P} m_{|b|}
// over centred moments m_j = (1/n) sum (x - mean)^j. cum2 is the
// (population) variance.
double cumulant(std::span<const double> samples, int r);

// Phi(x / sigma); uses erfc so both tails keep full relative accuracy.
double normal_cdf(double x, double sigma2);
double normal_pdf(double x, double sigma2);

// sup_i max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|) over the sorted samples.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

// Batch-means standard error of a statistic: the samples are split into
// `batches` contiguous groups; NaN when a batch is too small.
double batch_means_se(std::span<const double> samples,
                      const std::function<double(std::span<const double>)>& statistic,
                      int batches = 20, std::size_t min_batch = 2);

struct SampleSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // cum2
  double cum3 = 0.0;
  double cum4 = 0.0;
  bool variance_defined = false;  // false for n < 2 (fields are NaN)
  double ks_distance = 0.0;
  double target_sigma2 = 1.0;
  double se_mean = 0.0;
  double se_variance = 0.0;
  double se_cum3 = 0.0;
  double se_cum4 = 0.0;
};

SampleSummary summarize(std::span<const double> samples, double target_sigma2);

}  // namespace latcount
