#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "latcount/domain.hpp"
#include "latcount/enumerate.hpp"
#include "latcount/lattice.hpp"

namespace latcount {

struct CountResult {
  std::uint64_t count = 0;
  double volume = 0.0;
  double discrepancy = 0.0;  // count - volume
  double normalized = 0.0;   // discrepancy / sqrt(volume); NaN when volume is 0
  bool normalized_defined = false;
  std::uint64_t boundary_flags = 0;  // points of the closure within 1e-12 of the boundary
  // instrumentation
  std::uint64_t cells_visited = 0;
  std::uint64_t candidates = 0;
};

// Raised when the brute-force bounding box would hold too many points.
class CountCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CountMethod { BruteForce, Tiled };

inline constexpr std::uint64_t kBruteForceCap = 100'000'000;
inline constexpr double kBoundaryTolerance = 1e-12;

// Exact count of Lambda cap Omega_T by scanning [-T, T]^d.
CountResult count_bruteforce(const LatticeBasis& basis, const DomainSpec& spec,
                             std::uint64_t cap = kBruteForceCap);

// Exact count by cells of side h in the u-coordinates: each cell is flowed
// back to a fixed compact box and enumerated there.
CountResult count_tiled(const LatticeBasis& basis, const DomainSpec& spec, double h = 1.0);

// Several specs sharing partition, interval and T (regions may differ),
// counted in a single sweep of the cells. Volume fields are filled.
std::vector<CountResult> count_tiled_many(const LatticeBasis& basis,
                                          std::span<const DomainSpec> specs, double h = 1.0);

// Fills volume, discrepancy and normalized from a raw count.
void finish_discrepancy(CountResult& r, double volume);

CountResult discrepancy(const LatticeBasis& basis, const DomainSpec& spec, CountMethod method,
                        double h = 1.0);

// Vol(Omega_T) for any T > 1 (zero when T^d <= inf I).
double domain_volume_exact(const DomainSpec& spec);

}  // namespace latcount
