#include "latcount/checks.hpp"

#include <cmath>
#include <random>

#include "latcount/alpha.hpp"
#include "latcount/errors.hpp"
#include "latcount/numeric.hpp"
#include "latcount/parallel.hpp"
#include "latcount/variance.hpp"

namespace latcount {

LatticeBasis sample_lattice(const SamplerConfig& cfg, std::uint64_t index) {
  Rng rng(numeric::derive_seed(cfg.seed, index));
  if (cfg.kind == SamplerKind::ExactD2) {
    if (cfg.d != 2) throw PreconditionError("the exact sampler is only available for d = 2");
    return exact_sample_d2(rng);
  }
  return hecke_sample(cfg.d, cfg.p, rng);
}

namespace {

double mean_of(std::span<const double> xs) { return numeric::pairwise_sum(xs) / xs.size(); }

std::vector<double> transform_samples(const TestFunctionSpec& f, const SamplerConfig& cfg,
                                      std::size_t n) {
  std::vector<double> values(n);
  parallel_for(n, cfg.workers, [&](std::size_t i) {
    values[i] = siegel_transform(f, sample_lattice(cfg, i));
  });
  return values;
}

}  // namespace

SiegelReport siegel_mvt_check(const TestFunctionSpec& f, const SamplerConfig& cfg, std::size_t n) {
  if (n < 40) throw PreconditionError("siegel_mvt_check needs at least 40 samples");
  SiegelReport r;
  r.n = n;
  r.values = transform_samples(f, cfg, n);
  r.mean = mean_of(r.values);
  r.se = batch_means_se(r.values, [](auto xs) { return mean_of(xs); });
  r.expected = integral(f, cfg.d);
  r.z_score = (r.mean - r.expected) / r.se;
  return r;
}

RogersReport rogers_check(const TestFunctionSpec& f, const SamplerConfig& cfg, std::size_t n,
                          int truncation) {
  if (cfg.d < 3) throw PreconditionError("rogers_check needs d >= 3");
  if (n < 40) throw PreconditionError("rogers_check needs at least 40 samples");
  auto values = transform_samples(f, cfg, n);
  RogersReport r;
  r.n = n;
  r.mean = mean_of(values);
  r.variance = cumulant(values, 2);
  r.variance_se = batch_means_se(values, [](auto xs) { return cumulant(xs, 2); });
  const RogersFormula formula = rogers_variance(f, cfg.d, truncation);
  r.formula = formula.value;
  r.formula_tail = formula.tail_bound;
  r.relative_gap = (r.variance - r.formula) / r.formula;
  r.z_score = (r.variance - r.formula) / r.variance_se;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = values[i] * values[i];
  r.second_moment = mean_of(sq);
  r.l2_bound = rogers_l2_bound(f, cfg.d);
  r.values = std::move(values);
  return r;
}

TileCheckReport tile_identity_check(const DomainSpec& spec, std::size_t points, std::uint64_t seed,
                                    double margin) {
  const TilingSpec tiling = tiling_build(spec);
  const auto& part = spec.partition();
  const int k = part.k();
  const double logT = spec.log_T();
  const double a = std::log(spec.interval().lo()), b = std::log(spec.interval().hi());
  const double reach = (part.d() * logT - a) / part.dim(0);
  Rng rng(numeric::derive_seed(seed, 0));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss;
  TileCheckReport r;
  CoordPoint p;
  p.u.resize(k - 1);
  p.xi.resize(part.d());
  for (std::size_t i = 0; i < points; ++i) {
    for (int j = 0; j + 1 < k; ++j) p.u[j] = logT + 0.5 - (reach + 1.0) * unif(rng);
    p.s = a - 0.25 + (b - a + 0.5) * unif(rng);
    for (int j = 0; j < k; ++j) {
      double n2 = 0.0;
      do {
        n2 = 0.0;
        for (int c = 0; c < part.dim(j); ++c) {
          const double g = gauss(rng);
          p.xi[part.offset(j) + c] = g;
          n2 += g * g;
        }
      } while (n2 == 0.0);
      const double nrm = std::sqrt(n2);
      for (int c = 0; c < part.dim(j); ++c) p.xi[part.offset(j) + c] /= nrm;
    }
    const auto z = coord_inverse(p, part);
    if (tile_boundary_distance(z, spec, tiling) < margin) {
      ++r.skipped;
      continue;
    }
    const TilingEval e = tiling_identity_eval(z, spec, tiling);
    ++r.evaluated;
    if (e.indicator_lhs) ++r.inside;
    if (e.indicator_lhs != e.tile_sum_rhs) ++r.mismatches;
  }
  return r;
}

std::vector<CltRun> clt_experiment(const CltConfig& cfg) {
  const int d = cfg.partition.d();
  if (d < 3) throw PreconditionError("clt_experiment needs d >= 3");
  if (cfg.sampler.d != d) throw PreconditionError("sampler dimension does not match the partition");
  if (cfg.regions.empty() || cfg.T_values.empty())
    throw PreconditionError("clt_experiment needs at least one region and one T");
  if (cfg.n == 0) throw PreconditionError("clt_experiment needs n >= 1");

  const std::size_t nT = cfg.T_values.size(), nR = cfg.regions.size();
  std::vector<std::vector<DomainSpec>> specs(nT);
  for (std::size_t t = 0; t < nT; ++t)
    for (const auto& reg : cfg.regions)
      specs[t].emplace_back(cfg.partition, cfg.interval, reg, cfg.T_values[t]);
  for (const auto& s : specs)
    if (!s.front().above_threshold())
      throw PreconditionError("T = " + std::to_string(s.front().T()) +
                              " is below the tiling threshold " +
                              std::to_string(s.front().validity_threshold()));

  // results[i][t][r]
  std::vector<std::vector<std::vector<CountResult>>> results(cfg.n);
  std::vector<double> alphas(cfg.n);
  parallel_for(cfg.n, cfg.sampler.workers, [&](std::size_t i) {
    const LatticeBasis lattice = sample_lattice(cfg.sampler, i);
    alphas[i] = alpha_proxy(lattice);
    results[i].resize(nT);
    for (std::size_t t = 0; t < nT; ++t) results[i][t] = count_tiled_many(lattice, specs[t], cfg.h);
  });

  std::vector<CltRun> runs;
  for (std::size_t t = 0; t < nT; ++t) {
    for (std::size_t r = 0; r < nR; ++r) {
      CltRun run;
      run.T = cfg.T_values[t];
      run.region_index = static_cast<int>(r);
      run.exploratory = d < 9;
      std::vector<double> xs;
      xs.reserve(cfg.n);
      for (std::size_t i = 0; i < cfg.n; ++i) {
        run.rows.push_back(CltRow{i, results[i][t][r], alphas[i]});
        xs.push_back(results[i][t][r].normalized);
      }
      const double sigma2 =
          variance_limit(cfg.interval, cfg.regions[r], cfg.partition, cfg.truncation).value;
      run.summary = summarize(xs, sigma2);
      runs.push_back(std::move(run));
    }
  }
  return runs;
}

}  // namespace latcount
