#include "latcount/angular.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "latcount/errors.hpp"
#include "latcount/numeric.hpp"

namespace latcount {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_axis(const std::vector<double>& axis) {
  if (axis.empty()) throw PreconditionError("axis must be non-empty");
  const double n = std::sqrt(dot(axis, axis));
  if (std::abs(n - 1.0) > 1e-12) throw PreconditionError("axis must have unit norm");
}

// Geodesic angle between unit vectors.
double angle_between(std::span<const double> a, std::span<const double> b) {
  return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
}

std::vector<double> negate(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  std::transform(v.begin(), v.end(), r.begin(), [](double x) { return -x; });
  return r;
}

}  // namespace

int factor_dim(const SphereFactor& f) {
  return std::visit(overloaded{[](const FullSphere& s) { return s.dim; },
                               [](const Hemisphere& h) { return static_cast<int>(h.axis.size()); },
                               [](const Cap& c) { return static_cast<int>(c.axis.size()); },
                               [](const SignSet&) { return 1; }},
                    f);
}

bool factor_contains(const SphereFactor& f, std::span<const double> xi) {
  return std::visit(overloaded{[](const FullSphere&) { return true; },
                               [&](const Hemisphere& h) { return dot(h.axis, xi) > 0.0; },
                               [&](const Cap& c) { return dot(c.axis, xi) > std::cos(c.angle); },
                               [&](const SignSet& s) { return xi[0] > 0.0 ? s.plus : s.minus; }},
                    f);
}

double factor_boundary_distance(const SphereFactor& f, std::span<const double> xi) {
  return std::visit(
      overloaded{[](const FullSphere&) { return kInf; },
                 [&](const Hemisphere& h) {
                   if (h.axis.size() == 1) return kInf;
                   return std::abs(angle_between(h.axis, xi) - 0.5 * numeric::kPi);
                 },
                 [&](const Cap& c) {
                   if (c.axis.size() == 1) return kInf;
                   return std::abs(angle_between(c.axis, xi) - c.angle);
                 },
                 [](const SignSet&) { return kInf; }},
      f);
}

double cap_symmetric_overlap_quadrature(int n, double angle, double tol) {
  if (n == 1) return 0.0;  // on S^0 a cap of angle < pi is one point
  if (angle <= 0.5 * numeric::kPi) return 0.0;
  const double lo = numeric::kPi - angle;
  auto integrand = [n](double t) { return std::pow(std::sin(t), n - 2); };
  return numeric::sphere_area(n - 1) * numeric::adaptive_simpson(integrand, lo, angle, tol);
}

double factor_measure(const SphereFactor& f) {
  return std::visit(
      overloaded{[](const FullSphere& s) { return numeric::sphere_area(s.dim); },
                 [](const Hemisphere& h) {
                   return 0.5 * numeric::sphere_area(static_cast<int>(h.axis.size()));
                 },
                 [](const Cap& c) {
                   const int n = static_cast<int>(c.axis.size());
                   if (n == 1) return 1.0;
                   return numeric::sphere_area(n - 1) *
                          numeric::sin_power_integral(n - 2, c.angle);
                 },
                 [](const SignSet& s) { return double(s.plus) + double(s.minus); }},
      f);
}

double factor_symmetric_overlap(const SphereFactor& f) {
  return std::visit(
      overloaded{[](const FullSphere& s) { return numeric::sphere_area(s.dim); },
                 [](const Hemisphere&) { return 0.0; },
                 [](const Cap& c) {
                   return cap_symmetric_overlap_quadrature(static_cast<int>(c.axis.size()),
                                                           c.angle);
                 },
                 [](const SignSet& s) { return (s.plus && s.minus) ? 2.0 : 0.0; }},
      f);
}

SphereFactor negated(const SphereFactor& f) {
  return std::visit(overloaded{[](const FullSphere& s) -> SphereFactor { return s; },
                               [](const Hemisphere& h) -> SphereFactor {
                                 return Hemisphere{negate(h.axis)};
                               },
                               [](const Cap& c) -> SphereFactor {
                                 return Cap{negate(c.axis), c.angle};
                               },
                               [](const SignSet& s) -> SphereFactor {
                                 return SignSet{s.minus, s.plus};
                               }},
                    f);
}

AngularRegion::AngularRegion(std::vector<SphereFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw PreconditionError("angular region needs at least one factor");
  for (const auto& f : factors_) {
    if (const auto* h = std::get_if<Hemisphere>(&f)) check_axis(h->axis);
    if (const auto* c = std::get_if<Cap>(&f)) {
      check_axis(c->axis);
      if (!(c->angle > 0.0 && c->angle < numeric::kPi))
        throw PreconditionError("cap angle must lie in (0, pi)");
    }
    if (const auto* s = std::get_if<FullSphere>(&f); s && s->dim < 1)
      throw PreconditionError("sphere dimension must be positive");
  }
}

void AngularRegion::check_compatible(const DimensionPartition& partition) const {
  if (k() != partition.k())
    throw PreconditionError("angular region has " + std::to_string(k()) +
                            " factors but the partition has " + std::to_string(partition.k()) +
                            " blocks");
  for (int j = 0; j < k(); ++j) {
    if (factor_dim(factors_[j]) != partition.dim(j))
      throw PreconditionError("factor " + std::to_string(j) +
                              " does not match its block dimension");
  }
}

bool AngularRegion::contains(std::span<const double> xi,
                             const DimensionPartition& partition) const {
  for (int j = 0; j < k(); ++j) {
    if (!factor_contains(factors_[j], xi.subspan(partition.offset(j), partition.dim(j))))
      return false;
  }
  return true;
}

double AngularRegion::boundary_distance(std::span<const double> xi,
                                        const DimensionPartition& partition) const {
  double dist = kInf;
  for (int j = 0; j < k(); ++j) {
    dist = std::min(dist, factor_boundary_distance(
                              factors_[j], xi.subspan(partition.offset(j), partition.dim(j))));
  }
  return dist;
}

AngularRegion AngularRegion::negated() const {
  std::vector<SphereFactor> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(latcount::negated(f));
  return AngularRegion(std::move(out));
}

double angular_measure(const AngularRegion& region) {
  double m = 1.0;
  for (const auto& f : region.factors()) m *= factor_measure(f);
  return m;
}

double angular_symmetric_overlap(const AngularRegion& region) {
  double m = 1.0;
  for (const auto& f : region.factors()) m *= factor_symmetric_overlap(f);
  return m;
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<double> coordinate_axis(const std::string& token, int dim) {
  if (token.size() < 2 || token[0] != 'e')
    throw PreconditionError("axis must be written eK, got '" + token + "'");
  int idx = 0;
  auto [p, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), idx);
  if (ec != std::errc() || p != token.data() + token.size() || idx < 1 || idx > dim)
    throw PreconditionError("axis index out of range in '" + token + "'");
  std::vector<double> axis(dim, 0.0);
  axis[idx - 1] = 1.0;
  return axis;
}

std::string axis_name(const std::vector<double>& axis) {
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (axis[i] == 1.0) return "e" + std::to_string(i + 1);
  }
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < axis.size(); ++i) os << (i ? " " : "") << axis[i];
  os << "]";
  return os.str();
}

}  // namespace

AngularRegion parse_region(std::string_view text, const DimensionPartition& partition) {
  const auto tokens = split(text, ',');
  if (static_cast<int>(tokens.size()) != partition.k())
    throw PreconditionError("region needs one factor per block (" +
                            std::to_string(partition.k()) + "), got '" + std::string(text) + "'");
  std::vector<SphereFactor> factors;
  for (int j = 0; j < partition.k(); ++j) {
    const std::string& tok = tokens[j];
    const int dim = partition.dim(j);
    if (tok == "full") {
      factors.emplace_back(FullSphere{dim});
    } else if (tok == "+1" || tok == "+" || tok == "-1" || tok == "-" || tok == "+-1" ||
               tok == "+-" || tok == "±1" || tok == "±") {
      if (dim != 1) throw PreconditionError("sign sets need a block of dimension 1");
      const bool plus = tok[0] == '+' || tok.rfind("±", 0) == 0;
      const bool minus = tok[0] == '-' || tok.find('-') != std::string::npos ||
                         tok.rfind("±", 0) == 0;
      factors.emplace_back(SignSet{plus, minus});
    } else if (tok.rfind("hemisphere:", 0) == 0) {
      factors.emplace_back(Hemisphere{coordinate_axis(tok.substr(11), dim)});
    } else if (tok.rfind("cap:", 0) == 0) {
      const auto parts = split(tok, ':');
      if (parts.size() != 3) throw PreconditionError("cap factor must be cap:eK:THETA");
      double theta = 0.0;
      auto [p, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), theta);
      if (ec != std::errc() || p != parts[2].data() + parts[2].size())
        throw PreconditionError("bad cap angle '" + parts[2] + "'");
      factors.emplace_back(Cap{coordinate_axis(parts[1], dim), theta});
    } else {
      throw PreconditionError("unknown region factor '" + tok + "'");
    }
  }
  AngularRegion region(std::move(factors));
  region.check_compatible(partition);
  return region;
}

std::string format_region(const AngularRegion& region) {
  std::ostringstream os;
  for (int j = 0; j < region.k(); ++j) {
    if (j) os << ",";
    std::visit(overloaded{[&](const FullSphere&) { os << "full"; },
                          [&](const Hemisphere& h) { os << "hemisphere:" << axis_name(h.axis); },
                          [&](const Cap& c) {
                            os << "cap:" << axis_name(c.axis) << ":" << c.angle;
                          },
                          [&](const SignSet& s) {
                            os << (s.plus && s.minus ? "+-1" : s.plus ? "+1" : s.minus ? "-1" : "none");
                          }},
               region.factor(j));
  }
  return os.str();
}

}  // namespace latcount
