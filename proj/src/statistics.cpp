#include "latcount/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "latcount/errors.hpp"
#include "latcount/numeric.hpp"

namespace latcount {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void grow(int i, int r, std::vector<int>& label, int blocks, std::vector<SetPartition>& out) {
  if (i == r) {
    SetPartition p(blocks);
    for (int e = 0; e < r; ++e) p[label[e]].push_back(e + 1);
    out.push_back(std::move(p));
    return;
  }
  for (int b = 0; b <= blocks; ++b) {
    label[i] = b;
    grow(i + 1, r, label, std::max(blocks, b + 1), out);
  }
}

double mean_of(std::span<const double> xs) { return numeric::pairwise_sum(xs) / xs.size(); }

std::vector<double> centred_moments(std::span<const double> xs, int r) {
  const double mu = mean_of(xs);
  std::vector<double> m(r + 1, 0.0), pw(xs.size());
  m[0] = 1.0;
  std::vector<double> c(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) c[i] = xs[i] - mu;
  std::fill(pw.begin(), pw.end(), 1.0);
  for (int j = 1; j <= r; ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) pw[i] *= c[i];
    m[j] = numeric::pairwise_sum(pw) / xs.size();
  }
  return m;
}

}  // namespace

std::vector<SetPartition> set_partitions(int r) {
  if (r < 1 || r > 8) throw PreconditionError("set_partitions supports 1 <= r <= 8");
  std::vector<SetPartition> out;
  std::vector<int> label(r, 0);
  label[0] = 0;
  grow(1, r, label, 1, out);
  return out;
}

double cumulant(std::span<const double> samples, int r) {
  if (r < 2 || r > 8) throw PreconditionError("cumulant order must lie in [2, 8]");
  if (samples.size() < static_cast<std::size_t>(r))
    throw PreconditionError("cumulant of order " + std::to_string(r) + " needs at least " +
                            std::to_string(r) + " samples");
  const auto m = centred_moments(samples, r);
  double total = 0.0;
  for (const auto& p : set_partitions(r)) {
    double prod = 1.0;
    for (const auto& b : p) prod *= m[b.size()];
    if (prod == 0.0) continue;
    const int nb = static_cast<int>(p.size());
    const double coeff = ((nb - 1) % 2 ? -1.0 : 1.0) * std::tgamma(nb);
    total += coeff * prod;
  }
  return total;
}

double normal_cdf(double x, double sigma2) {
  if (!(sigma2 > 0.0)) throw PreconditionError("normal_cdf needs sigma2 > 0");
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * sigma2));
}

double normal_pdf(double x, double sigma2) {
  if (!(sigma2 > 0.0)) throw PreconditionError("normal_pdf needs sigma2 > 0");
  return std::exp(-x * x / (2.0 * sigma2)) / std::sqrt(2.0 * numeric::kPi * sigma2);
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw PreconditionError("ks_statistic needs at least one sample");
  std::vector<double> xs(samples.begin(), samples.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double best = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = cdf(xs[i]);
    best = std::max({best, std::abs((i + 1) / n - F), std::abs(i / n - F)});
  }
  return std::min(best, 1.0);
}

double batch_means_se(std::span<const double> samples,
                      const std::function<double(std::span<const double>)>& statistic,
                      int batches, std::size_t min_batch) {
  if (batches < 2 || samples.size() / batches < min_batch) return kNaN;
  const std::size_t n = samples.size(), per = n / batches;
  std::vector<double> stats(batches);
  for (int b = 0; b < batches; ++b) {
    const std::size_t begin = b * per;
    const std::size_t len = (b + 1 == batches) ? n - begin : per;
    stats[b] = statistic(samples.subspan(begin, len));
  }
  const double mu = mean_of(stats);
  double ss = 0.0;
  for (double s : stats) ss += (s - mu) * (s - mu);
  // Each batch statistic has variance ~ B sigma^2 / n, so the full-sample
  // statistic has standard error sd(batch) / sqrt(B).
  return std::sqrt(ss / (batches - 1) / batches);
}

SampleSummary summarize(std::span<const double> samples, double target_sigma2) {
  SampleSummary s;
  s.n = samples.size();
  s.target_sigma2 = target_sigma2;
  if (s.n == 0) throw PreconditionError("summary of an empty sample");
  s.mean = mean_of(samples);
  s.ks_distance = ks_statistic(samples, [&](double x) { return normal_cdf(x, target_sigma2); });
  s.variance_defined = s.n >= 2;
  s.variance = s.variance_defined ? cumulant(samples, 2) : kNaN;
  s.cum3 = s.n >= 3 ? cumulant(samples, 3) : kNaN;
  s.cum4 = s.n >= 4 ? cumulant(samples, 4) : kNaN;
  s.se_mean = batch_means_se(samples, [](auto xs) { return mean_of(xs); });
  s.se_variance = batch_means_se(samples, [](auto xs) { return cumulant(xs, 2); });
  s.se_cum3 = batch_means_se(samples, [](auto xs) { return cumulant(xs, 3); }, 20, 3);
  s.se_cum4 = batch_means_se(samples, [](auto xs) { return cumulant(xs, 4); }, 20, 4);
  return s;
}

}  // namespace latcount
