#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "latcount/partition.hpp"

namespace latcount {

// Per-block factors of an angular region B in S^{d_1-1} x ... x S^{d_k-1}.
// All non-discrete factors are open sets.
struct FullSphere {
  int dim = 1;
};
struct Hemisphere {
  std::vector<double> axis;  // unit vector; the factor is {xi : <xi, axis> > 0}
};
struct Cap {
  std::vector<double> axis;  // unit vector
  double angle = 0.0;        // in (0, pi); the factor is {xi : <xi, axis> > cos(angle)}
};
struct SignSet {
  bool plus = true;
  bool minus = true;
};

using SphereFactor = std::variant<FullSphere, Hemisphere, Cap, SignSet>;

int factor_dim(const SphereFactor& f);
bool factor_contains(const SphereFactor& f, std::span<const double> xi);
// Geodesic distance from xi to the factor boundary; +inf when there is none.
double factor_boundary_distance(const SphereFactor& f, std::span<const double> xi);
// kappa_j of the factor (surface measure, counting measure on S^0).
double factor_measure(const SphereFactor& f);
// kappa_j(F cap -F).
double factor_symmetric_overlap(const SphereFactor& f);
SphereFactor negated(const SphereFactor& f);

// Band {xi : |<xi, v>| > cos(theta)}-type intersection C(v,theta) cap C(-v,theta)
// on S^{n-1}, via adaptive Simpson on the polar angle.
double cap_symmetric_overlap_quadrature(int n, double angle, double tol = 1e-12);

class AngularRegion {
 public:
  explicit AngularRegion(std::vector<SphereFactor> factors);

  int k() const noexcept { return static_cast<int>(factors_.size()); }
  const SphereFactor& factor(int j) const { return factors_.at(j); }
  std::span<const SphereFactor> factors() const noexcept { return factors_; }
  // Throws unless the factor dimensions match the partition block sizes.
  void check_compatible(const DimensionPartition& partition) const;
  // xi is the concatenation of the k unit blocks.
  bool contains(std::span<const double> xi, const DimensionPartition& partition) const;
  double boundary_distance(std::span<const double> xi, const DimensionPartition& partition) const;
  AngularRegion negated() const;

 private:
  std::vector<SphereFactor> factors_;
};

double angular_measure(const AngularRegion& region);
double angular_symmetric_overlap(const AngularRegion& region);

// Parses the comma-separated per-factor grammar: "full", "+1"/"+", "-1"/"-",
// "+-1"/"±1" (sign sets), "hemisphere:eK", "cap:eK:THETA" (K is 1-based).
AngularRegion parse_region(std::string_view text, const DimensionPartition& partition);
std::string format_region(const AngularRegion& region);

}  // namespace latcount
