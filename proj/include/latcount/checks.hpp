#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latcount/counting.hpp"
#include "latcount/sampling.hpp"
#include "latcount/siegel.hpp"
#include "latcount/statistics.hpp"
#include "latcount/tiling.hpp"

namespace latcount {

enum class SamplerKind { Hecke, ExactD2 };

struct SamplerConfig {
  int d = 3;
  SamplerKind kind = SamplerKind::Hecke;
  std::uint64_t p = 10007;
  std::uint64_t seed = 1;
  int workers = 1;
};

// Lattice number `index` of the stream; depends only on (config, index).
LatticeBasis sample_lattice(const SamplerConfig& cfg, std::uint64_t index);

struct SiegelReport {
  std::size_t n = 0;
  double mean = 0.0;
  double se = 0.0;        // batch means
  double expected = 0.0;  // integral of f
  double z_score = 0.0;
  std::vector<double> values;
};

SiegelReport siegel_mvt_check(const TestFunctionSpec& f, const SamplerConfig& cfg, std::size_t n);

struct RogersReport {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // empirical
  double variance_se = 0.0;
  double formula = 0.0;
  double formula_tail = 0.0;
  double relative_gap = 0.0;  // (variance - formula) / formula
  double z_score = 0.0;
  double second_moment = 0.0;
  double l2_bound = 0.0;
  std::vector<double> values;
};

RogersReport rogers_check(const TestFunctionSpec& f, const SamplerConfig& cfg, std::size_t n,
                          int truncation = 2000);

struct CltConfig {
  DimensionPartition partition{std::vector<int>{1, 2}};
  Interval interval{1.0, 2.0};
  std::vector<AngularRegion> regions;  // counted on the same lattices
  std::vector<double> T_values;
  SamplerConfig sampler;
  std::size_t n = 100;
  double h = 1.0;
  int truncation = 2000;
};

struct CltRow {
  std::uint64_t index = 0;
  CountResult result;
  double alpha = 0.0;
};

struct CltRun {
  double T = 0.0;
  int region_index = 0;
  bool exploratory = true;  // d < 9
  std::vector<CltRow> rows;
  SampleSummary summary;
};

struct TileCheckReport {
  std::size_t evaluated = 0;
  std::size_t inside = 0;      // points of Omega_T among the evaluated ones
  std::size_t skipped = 0;     // too close to a tile or domain boundary
  std::size_t mismatches = 0;  // indicator != tile sum
};

// Draws points in a neighbourhood of Omega_T (uniform in the (u, s) box
// around the domain, uniform angles) and compares the indicator with the
// tile sum. Points within `margin` of any tile boundary are skipped.
TileCheckReport tile_identity_check(const DomainSpec& spec, std::size_t points, std::uint64_t seed,
                                    double margin = 1e-9);

// For each T (outer) and region (inner): n normalized discrepancies by the
// tiled counter on a shared stream of sampled lattices, summarised against
// normal(0, sigma(I, B)^2).
std::vector<CltRun> clt_experiment(const CltConfig& cfg);

}  // namespace latcount
