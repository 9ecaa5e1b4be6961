#include "latcount/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latcount/errors.hpp"
#include "latcount/lll.hpp"
#include "latcount/numeric.hpp"

namespace latcount {

double domain_volume_exact(const DomainSpec& spec) {
  return domain_volume_any_T(spec.partition(), spec.interval(), angular_measure(spec.region()),
                             spec.T());
}

void finish_discrepancy(CountResult& r, double volume) {
  r.volume = volume;
  r.discrepancy = static_cast<double>(r.count) - volume;
  if (volume > 0.0) {
    r.normalized = r.discrepancy / std::sqrt(volume);
    r.normalized_defined = true;
  } else {
    r.normalized = std::numeric_limits<double>::quiet_NaN();
    r.normalized_defined = false;
  }
}

CountResult count_bruteforce(const LatticeBasis& basis, const DomainSpec& spec,
                             std::uint64_t cap) {
  const int d = basis.dim();
  if (spec.partition().d() != d)
    throw PreconditionError("spec dimension does not match lattice dimension");
  const double expected = std::pow(2.0 * spec.T(), d) / basis.det_abs();
  if (!(expected <= static_cast<double>(cap)))
    throw CountCapExceeded("bounding box holds about " + std::to_string(expected) +
                           " lattice points (cap " + std::to_string(cap) + "); use count_tiled");
  CountResult r;
  const BoxConstraint box = BoxConstraint::symmetric(d, spec.T() * (1 + 1e-9));
  std::vector<LatticePoint> pts;
  try {
    pts = enumerate_in_box(basis, box, true, 4 * cap);
  } catch (const std::runtime_error& e) {
    throw CountCapExceeded(std::string(e.what()) + "; use count_tiled");
  }
  r.candidates = pts.size();
  for (const auto& p : pts) {
    if (domain_membership(p.point, spec)) ++r.count;
    if (near_boundary(p.point, spec, kBoundaryTolerance)) ++r.boundary_flags;
  }
  return r;
}

namespace {

struct CellGeometry {
  std::vector<double> weights;  // per-coordinate 1/R_j
  double r2 = 0.0;
  std::vector<double> lo_norm, hi_norm;  // prefilter bounds per block
};

CellGeometry cell_geometry(const DomainSpec& spec, double h) {
  const auto& part = spec.partition();
  const int k = part.k(), d = part.d();
  CellGeometry g;
  g.weights.resize(d);
  g.lo_norm.assign(k, 0.0);
  g.hi_norm.resize(k);
  constexpr double slack = 1e-7;
  for (int j = 0; j < k; ++j) {
    double R;
    if (j + 1 < k) {
      R = std::exp(h / 2);
      g.lo_norm[j] = std::exp(-h / 2) * (1 - slack);
    } else {
      R = std::exp((std::log(spec.interval().hi()) + (d - part.dim(k - 1)) * h / 2) /
                   part.dim(k - 1));
    }
    g.hi_norm[j] = R * (1 + slack);
    for (int i = 0; i < part.dim(j); ++i) g.weights[part.offset(j) + i] = 1.0 / R;
  }
  g.r2 = k * (1 + 4 * slack);
  return g;
}

}  // namespace

std::vector<CountResult> count_tiled_many(const LatticeBasis& basis,
                                          std::span<const DomainSpec> specs, double h) {
  if (specs.empty()) return {};
  const DomainSpec& spec = specs.front();
  const auto& part = spec.partition();
  const int d = part.d(), k = part.k();
  if (d != basis.dim()) throw PreconditionError("spec dimension does not match lattice dimension");
  for (const auto& s : specs)
    if (!(s.partition() == part) || !(s.interval() == spec.interval()) || s.T() != spec.T())
      throw PreconditionError("count_tiled_many: specs must share partition, interval and T");
  if (!(h > 0.0) || !std::isfinite(h)) throw PreconditionError("cell side h must be positive");
  if (k < 2) throw PreconditionError("tiled counting needs k >= 2 blocks");
  if (!spec.above_threshold())
    throw PreconditionError("count_tiled requires T > (sup I)^{1/d} = " +
                            std::to_string(spec.validity_threshold()));

  std::vector<CountResult> out(specs.size());
  const double logT = spec.log_T();
  // Cells with sum_j d_j i_j h >= d log T - log inf I carry no domain points.
  const double M = d * logT - std::log(spec.interval().lo());
  const double reach = M + 1e-6 * (1 + std::abs(M));
  const CellGeometry geo = cell_geometry(spec, h);

  // Warm-started reduction: W holds the integer transform from the input
  // basis to the current reduced basis.
  LllResult start = lll_reduce(basis, 0.99);
  IntMatrix W = start.transform;
  const RowMatrix& B = basis.rows();

  std::vector<int> idx(k - 1, 0);
  std::vector<double> uc(k - 1), coeffs_d(d), z(d), zp(d);
  std::vector<std::int64_t> coeffs(d);
  std::vector<double> norms(k);
  std::uint64_t cells = 0, candidates = 0;

  auto weighted_index = [&] {
    double s = 0.0;
    for (int j = 0; j + 1 < k; ++j) s += part.dim(j) * idx[j] * h;
    return s;
  };

  for (;;) {
    if (weighted_index() <= reach) {
      ++cells;
      for (int j = 0; j + 1 < k; ++j) uc[j] = logT - (idx[j] + 0.5) * h;
      std::vector<double> neg(uc.size());
      for (std::size_t j = 0; j < uc.size(); ++j) neg[j] = -uc[j];
      const DiagonalFlow back(neg, part);
      const auto diag = back.diagonal();

      // Current basis W B, recomputed exactly, then flowed.
      RowMatrix cur(d, d);
      for (int r = 0; r < d; ++r) {
        std::span<const std::int64_t> w(W.row(r).data(), static_cast<std::size_t>(d));
        for (int c = 0; c < d; ++c)
          cur(r, c) = numeric::dot2<std::int64_t>(w, B.data() + c, static_cast<std::size_t>(d)) *
                      diag[c];
      }
      LllResult red = lll_reduce(LatticeBasis(std::move(cur)), 0.99);
      IntMatrix Wn = red.transform * W;
      if (Wn.cwiseAbs().maxCoeff() > (std::int64_t{1} << 40)) {
        // Transform growing: restart from a fresh reduction of the flowed input.
        LatticeBasis flowed = apply_flow(back, basis);
        red = lll_reduce(flowed, 0.99);
        Wn = red.transform;
      }
      W = Wn;

      EllipsoidEnumerator en(red.basis.rows(), geo.weights, std::vector<double>(d, 0.0), geo.r2);
      en.run([&](std::span<const std::int64_t> m, std::span<const double> approx) {
        ++candidates;
        // Prefilter in the flowed frame.
        for (int j = 0; j < k; ++j) {
          double s2 = 0.0;
          for (int i = 0; i < part.dim(j); ++i) {
            const double x = approx[part.offset(j) + i];
            s2 += x * x;
          }
          const double nrm = std::sqrt(s2);
          if (nrm < geo.lo_norm[j] || nrm > geo.hi_norm[j]) return;
        }
        // Coefficients relative to the input basis and the canonical point.
        for (int c = 0; c < d; ++c) {
          std::int64_t acc = 0;
          for (int r = 0; r < d; ++r) acc += m[r] * W(r, c);
          coeffs[c] = acc;
        }
        for (int c = 0; c < d; ++c)
          z[c] = numeric::dot2<std::int64_t>(coeffs, B.data() + c, static_cast<std::size_t>(d));
        // Cell ownership by the floor of the log-norms.
        for (int j = 0; j < k; ++j) {
          double s2 = 0.0;
          for (int i = 0; i < part.dim(j); ++i) {
            const double x = z[part.offset(j) + i];
            s2 += x * x;
          }
          norms[j] = std::sqrt(s2);
          if (norms[j] == 0.0) return;
        }
        for (int j = 0; j + 1 < k; ++j) {
          // Clamped so that points just outside |z_j| < T still get a cell
          // (they only matter for the boundary tally).
          const double cell = std::max(0.0, std::floor((logT - std::log(norms[j])) / h));
          if (cell != static_cast<double>(idx[j])) return;
        }
        for (std::size_t t = 0; t < specs.size(); ++t) {
          if (domain_membership(z, specs[t])) ++out[t].count;
          if (near_boundary(z, specs[t], kBoundaryTolerance)) ++out[t].boundary_flags;
        }
      });
    }
    // odometer over idx, pruning on the weighted sum
    int j = 0;
    for (; j + 1 < k; ++j) {
      ++idx[j];
      if (weighted_index() <= reach) break;
      idx[j] = 0;
    }
    if (j + 1 >= k) break;
  }

  for (std::size_t t = 0; t < specs.size(); ++t) {
    out[t].cells_visited = cells;
    out[t].candidates = candidates;
    finish_discrepancy(out[t], domain_volume_exact(specs[t]));
  }
  return out;
}

CountResult count_tiled(const LatticeBasis& basis, const DomainSpec& spec, double h) {
  return count_tiled_many(basis, std::span<const DomainSpec>(&spec, 1), h).front();
}

CountResult discrepancy(const LatticeBasis& basis, const DomainSpec& spec, CountMethod method,
                        double h) {
  if (method == CountMethod::Tiled) return count_tiled(basis, spec, h);
  CountResult r = count_bruteforce(basis, spec);
  finish_discrepancy(r, domain_volume_exact(spec));
  return r;
}

}  // namespace latcount
