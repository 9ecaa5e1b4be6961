#pragma once

#include <span>
#include <string>
#include <vector>

namespace latcount::cli {

struct HistogramBin {
  double center = 0.0;
  double density = 0.0;    // count / (n * width)
  double reference = 0.0;  // normal(0, sigma2) density at the centre
};

// Equal-width bins over [min, max] of the samples (min +- 0.5 when all
// samples coincide).
std::vector<HistogramBin> histogram(std::span<const double> samples, int bins, double sigma2);

// Three whitespace-separated columns per line: centre, density, reference.
void emit_histogram(std::span<const double> samples, int bins, const std::string& path,
                    double sigma2 = 1.0);

}  // namespace latcount::cli
