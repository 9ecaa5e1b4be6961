#include "latcount/linear_forms.hpp"

#include <cmath>
#include <type_traits>

#include "latcount/errors.hpp"

namespace latcount {

double LinearFormReduction::reduced_T(double T) const { return T / std::abs(c); }

AngularRegion reflect_first_coordinate(const AngularRegion& region) {
  std::vector<SphereFactor> fs(region.factors().begin(), region.factors().end());
  fs[0] = std::visit(
      [](const auto& f) -> SphereFactor {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, SignSet>) {
          return SignSet{f.minus, f.plus};
        } else if constexpr (std::is_same_v<F, FullSphere>) {
          return f;
        } else {
          F g = f;
          g.axis[0] = -g.axis[0];
          return g;
        }
      },
      fs[0]);
  return AngularRegion(std::move(fs));
}

LinearFormReduction reduce_linear_forms(const RowMatrix& L, const Interval& interval,
                                        const AngularRegion& region,
                                        const DimensionPartition& partition) {
  const int d = partition.d();
  if (L.rows() != d || L.cols() != d)
    throw PreconditionError("linear form matrix must be d x d");
  region.check_compatible(partition);
  const double det = L.partialPivLu().determinant();
  if (!(std::abs(det) > 0.0) || !std::isfinite(det))
    throw PreconditionError("linear form matrix is singular");
  const double mag = std::pow(std::abs(det), 1.0 / d);
  const bool negative = det < 0.0;
  LinearFormReduction out{1.0, RowMatrix(), false, interval.scaled(1.0 / std::abs(det)), region};
  if (!negative) {
    out.c = mag;
    out.L0 = L / mag;
  } else if (d % 2 == 1) {
    out.c = -mag;
    out.L0 = L / out.c;
    out.region = region.negated();
  } else {
    // (-1)^d = 1 leaves det L0 = -1 under a signed scale; absorb the sign
    // into a reflection instead.
    out.c = mag;
    out.reflected = true;
    out.L0 = L / mag;
    out.L0.row(0) *= -1.0;
    out.region = reflect_first_coordinate(region);
  }
  return out;
}

}  // namespace latcount
