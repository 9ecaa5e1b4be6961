#include "latcount/cli/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "latcount/errors.hpp"
#include "latcount/lattice.hpp"
#include "latcount/statistics.hpp"

namespace latcount::cli {

std::vector<HistogramBin> histogram(std::span<const double> samples, int bins, double sigma2) {
  if (bins < 1) throw PreconditionError("histogram needs at least one bin");
  if (samples.empty()) throw PreconditionError("histogram of an empty sample list");
  for (double x : samples)
    if (!std::isfinite(x)) throw PreconditionError("histogram samples must be finite");
  auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  double lo = *mn, hi = *mx;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bins;
  std::vector<std::size_t> counts(bins, 0);
  for (double x : samples) {
    auto b = static_cast<long>(std::floor((x - lo) / width));
    b = std::clamp(b, 0L, static_cast<long>(bins - 1));
    ++counts[b];
  }
  std::vector<HistogramBin> out(bins);
  const double n = static_cast<double>(samples.size());
  for (int b = 0; b < bins; ++b) {
    out[b].center = lo + (b + 0.5) * width;
    out[b].density = counts[b] / (n * width);
    out[b].reference = normal_pdf(out[b].center, sigma2);
  }
  return out;
}

void emit_histogram(std::span<const double> samples, int bins, const std::string& path,
                    double sigma2) {
  const auto h = histogram(samples, bins, sigma2);
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write histogram file '" + path + "'");
  os << "# center density normal_density\n";
  for (const auto& b : h)
    os << format_double(b.center) << ' ' << format_double(b.density) << ' '
       << format_double(b.reference) << '\n';
  if (!os) throw std::runtime_error("write failed for histogram file '" + path + "'");
}

}  // namespace latcount::cli
