#include "latcount/cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "latcount/alpha.hpp"
#include "latcount/checks.hpp"
#include "latcount/cli/histogram.hpp"
#include "latcount/counting.hpp"
#include "latcount/errors.hpp"
#include "latcount/variance.hpp"
#include "latcount/version.hpp"

namespace latcount::cli {

namespace {

using nlohmann::json;

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  return format_double(x);
}

json jnum(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

DimensionPartition partition_of(const ExperimentConfig& cfg) {
  return DimensionPartition(cfg.int_list("partition"));
}

Interval interval_of(const ExperimentConfig& cfg) {
  const auto v = cfg.real_list("interval");
  if (v.size() != 2) throw PreconditionError("interval: expected lo,hi");
  return Interval(v[0], v[1]);
}

DomainSpec spec_of(const ExperimentConfig& cfg, double T) {
  const DimensionPartition part = partition_of(cfg);
  return DomainSpec(part, interval_of(cfg), parse_region(cfg.str("region"), part), T);
}

SamplerConfig sampler_of(const ExperimentConfig& cfg, int d) {
  SamplerConfig s;
  s.d = d;
  s.p = cfg.unsigned_integer("p");
  s.seed = cfg.unsigned_integer("seed");
  s.workers = static_cast<int>(cfg.integer("workers"));
  if (s.workers < 1) throw PreconditionError("workers must be >= 1");
  const std::string& kind = cfg.str("sampler");
  if (kind == "hecke") {
    s.kind = SamplerKind::Hecke;
    if (!is_prime(s.p)) throw PreconditionError("p must be prime, got " + std::to_string(s.p));
  } else if (kind == "exact") {
    s.kind = SamplerKind::ExactD2;
    if (d != 2) throw PreconditionError("sampler=exact needs d = 2");
  } else {
    throw PreconditionError("sampler must be hecke or exact, got '" + kind + "'");
  }
  return s;
}

TestFunctionSpec function_of(const ExperimentConfig& cfg, int d) {
  const std::string& text = cfg.str("function");
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  auto number = [&](std::size_t i) {
    if (i >= parts.size()) throw PreconditionError("function: missing parameter in '" + text + "'");
    try {
      std::size_t used = 0;
      const double v = std::stod(parts[i], &used);
      if (used != parts[i].size() || !(v > 0)) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw PreconditionError("function: bad positive number '" + parts[i] + "'");
    }
  };
  if (parts.empty()) throw PreconditionError("function: empty specification");
  if (parts[0] == "ball" && parts.size() == 2) return BallIndicator{number(1)};
  if (parts[0] == "box" && parts.size() == 2) return BoxIndicator{BoxConstraint::symmetric(d, number(1))};
  if (parts[0] == "bump" && parts.size() == 3) {
    const double m = number(2);
    if (m != std::floor(m) || m > 64) throw PreconditionError("bump smoothness must be an integer <= 64");
    return RadialBump{number(1), static_cast<int>(m)};
  }
  throw PreconditionError("function must be ball:R, box:W or bump:R:M, got '" + text + "'");
}

json config_json(const ExperimentConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.values()) j[k] = v;
  return j;
}

void write_json(const ExperimentConfig& cfg, json results, std::ostream& out) {
  json doc;
  doc["version"] = kVersion;
  doc["subcommand"] = cfg.subcommand();
  doc["config"] = config_json(cfg);
  doc["results"] = std::move(results);
  const std::string& path = cfg.str("json");
  if (path.empty()) {
    out << doc.dump(2) << "\n";
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write JSON summary '" + path + "'");
  os << doc.dump(2) << "\n";
}

std::string suffixed(const std::string& path, const std::string& tag) {
  if (tag.empty()) return path;
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
  return path.substr(0, dot) + tag + path.substr(dot);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write '" + path + "'");
  return os;
}

int cmd_volume(const ExperimentConfig& cfg, std::ostream& out) {
  const DomainSpec spec = spec_of(cfg, cfg.real("T"));
  const double vol = domain_volume_exact(spec);
  const auto poly = volume_polynomial(spec.partition(), spec.interval(), spec.region());
  out << "volume = " << num(vol) << "\n";
  out << "polynomial in log T (ascending) =";
  for (double c : poly) out << " " << num(c);
  out << "\n";
  out << "above_threshold = " << (spec.above_threshold() ? "true" : "false") << "\n";
  json r;
  r["volume"] = vol;
  r["polynomial"] = poly;
  r["above_threshold"] = spec.above_threshold();
  r["validity_threshold"] = spec.validity_threshold();
  if (!cfg.str("json").empty()) write_json(cfg, r, out);
  return kExitOk;
}

int cmd_variance(const ExperimentConfig& cfg, std::ostream& out) {
  const DimensionPartition part = partition_of(cfg);
  const Interval I = interval_of(cfg);
  const AngularRegion B = parse_region(cfg.str("region"), part);
  const int P = static_cast<int>(cfg.integer("P"));
  const VarianceResult v = variance_series(I, B, part, P);
  const VarianceLimit lim = variance_limit(I, B, part, P);
  out << "sigma^2 (truncated, P = " << P << ") = " << num(v.value) << "\n";
  out << "tail_bound = " << num(v.tail_bound) << "\n";
  out << "sigma^2 (limit estimate) = " << num(lim.value) << " +- " << num(lim.error) << "\n";
  out << "symmetry_factor = " << num(v.symmetry_factor) << "\n";
  json r;
  r["value"] = v.value;
  r["tail_bound"] = v.tail_bound;
  r["limit"] = lim.value;
  r["limit_error"] = lim.error;
  r["symmetry_factor"] = v.symmetry_factor;
  r["truncation_order"] = P;
  if (!cfg.str("json").empty()) write_json(cfg, r, out);
  return kExitOk;
}

int cmd_count(const ExperimentConfig& cfg, std::ostream& out) {
  const DomainSpec spec = spec_of(cfg, cfg.real("T"));
  const int d = spec.partition().d();
  LatticeBasis lattice = LatticeBasis::identity(d);
  if (!cfg.str("lattice").empty()) {
    std::ifstream in(cfg.str("lattice"));
    if (!in) throw PreconditionError("cannot open lattice file '" + cfg.str("lattice") + "'");
    lattice = read_lattice(in);
  } else {
    if (cfg.integer("d") != d) throw PreconditionError("d does not match the partition");
    lattice = sample_lattice(sampler_of(cfg, d), cfg.unsigned_integer("index"));
  }
  if (lattice.dim() != d) throw PreconditionError("lattice dimension does not match the partition");
  const std::string& method = cfg.str("method");
  if (method != "tiled" && method != "brute" && method != "both")
    throw PreconditionError("method must be tiled, brute or both");
  json r;
  auto report = [&](const char* name, const CountResult& c) {
    out << name << ": count = " << c.count << ", volume = " << num(c.volume)
        << ", discrepancy = " << num(c.discrepancy) << ", normalized = " << num(c.normalized)
        << ", boundary_flags = " << c.boundary_flags << ", cells = " << c.cells_visited
        << ", candidates = " << c.candidates << "\n";
    r[name] = {{"count", c.count},
               {"volume", c.volume},
               {"discrepancy", c.discrepancy},
               {"normalized", jnum(c.normalized)},
               {"boundary_flags", c.boundary_flags},
               {"cells_visited", c.cells_visited},
               {"candidates", c.candidates}};
  };
  std::optional<CountResult> tiled, brute;
  if (method != "brute") tiled = discrepancy(lattice, spec, CountMethod::Tiled, cfg.real("h"));
  if (method != "tiled") brute = discrepancy(lattice, spec, CountMethod::BruteForce);
  if (tiled) report("tiled", *tiled);
  if (brute) report("brute", *brute);
  r["alpha_proxy"] = alpha_proxy(lattice);
  int code = kExitOk;
  if (tiled && brute) {
    const bool agree = tiled->count == brute->count;
    r["agree"] = agree;
    out << "agree = " << (agree ? "true" : "false") << "\n";
    if (!agree) code = kExitCheckFailed;
  }
  if (!cfg.str("json").empty()) write_json(cfg, r, out);
  return code;
}

int cmd_tile_check(const ExperimentConfig& cfg, std::ostream& out) {
  const DomainSpec spec = spec_of(cfg, cfg.real("T"));
  const TileCheckReport rep =
      tile_identity_check(spec, cfg.unsigned_integer("points"), cfg.unsigned_integer("seed"));
  out << "evaluated = " << rep.evaluated << ", inside = " << rep.inside
      << ", skipped = " << rep.skipped << ", mismatches = " << rep.mismatches << "\n";
  json r = {{"evaluated", rep.evaluated},
            {"inside", rep.inside},
            {"skipped", rep.skipped},
            {"mismatches", rep.mismatches},
            {"pass", rep.mismatches == 0}};
  if (!cfg.str("json").empty()) write_json(cfg, r, out);
  return rep.mismatches == 0 ? kExitOk : kExitCheckFailed;
}

void write_values_csv(const std::string& path, const std::vector<double>& values) {
  if (path.empty()) return;
  auto os = open_out(path);
  os << "sample_index,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) os << i << "," << num(values[i]) << "\n";
}

int cmd_siegel_check(const ExperimentConfig& cfg, std::ostream& out) {
  const int d = static_cast<int>(cfg.integer("d"));
  if (d < 2) throw PreconditionError("d must be >= 2");
  const TestFunctionSpec f = function_of(cfg, d);
  const SiegelReport rep = siegel_mvt_check(f, sampler_of(cfg, d), cfg.unsigned_integer("n"));
  const double zmax = cfg.real("z-max");
  const bool pass = std::abs(rep.z_score) < zmax;
  out << "mean = " << num(rep.mean) << " +- " << num(rep.se) << ", integral = " << num(rep.expected)
      << ", z = " << num(rep.z_score) << ", pass = " << (pass ? "true" : "false") << "\n";
  write_values_csv(cfg.str("csv"), rep.values);
  json r = {{"n", rep.n},      {"mean", rep.mean},       {"se", jnum(rep.se)},
            {"integral", rep.expected}, {"z_score", jnum(rep.z_score)}, {"pass", pass}};
  if (!cfg.str("json").empty()) write_json(cfg, r, out);
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_rogers_check(const ExperimentConfig& cfg, std::ostream& out) {
  const int d = static_cast<int>(cfg.integer("d"));
  const TestFunctionSpec f = function_of(cfg, d);
  const RogersReport rep = rogers_check(f, sampler_of(cfg, d), cfg.unsigned_integer("n"),
                                        static_cast<int>(cfg.integer("P")));
  const double tol = cfg.real("rel-tol");
  const bool pass = std::abs(rep.relative_gap) <= tol;
  out << "variance = " << num(rep.variance) << " +- " << num(rep.variance_se)
      << ", formula = " << num(rep.formula) << " (tail <= " << num(rep.formula_tail) << ")"
      << ", relative_gap = " << num(rep.relative_gap) << ", pass = " << (pass ? "true" : "false")
      << "\n";
  out << "second_moment = " << num(rep.second_moment) << ", l2_bound = " << num(rep.l2_bound) << "\n";
  write_values_csv(cfg.str("csv"), rep.values);
  json r = {{"n", rep.n},
            {"mean", rep.mean},
            {"variance", rep.variance},
            {"variance_se", jnum(rep.variance_se)},
            {"formula", rep.formula},
            {"formula_tail_bound", rep.formula_tail},
            {"relative_gap", rep.relative_gap},
            {"z_score", jnum(rep.z_score)},
            {"second_moment", rep.second_moment},
            {"l2_bound", rep.l2_bound},
            {"pass", pass}};
  if (!cfg.str("json").empty()) write_json(cfg, r, out);
  return pass ? kExitOk : kExitCheckFailed;
}

AngularRegion symmetric_union(const AngularRegion& region) {
  // B u -B up to a null set: hemispheres become full spheres, one-sided sign
  // sets become both signs; other factors are kept and the union is then
  // only taken on the first factor that is not already symmetric.
  std::vector<SphereFactor> fs(region.factors().begin(), region.factors().end());
  for (auto& f : fs) {
    if (const auto* h = std::get_if<Hemisphere>(&f)) {
      f = FullSphere{static_cast<int>(h->axis.size())};
      return AngularRegion(std::move(fs));
    }
    if (auto* s = std::get_if<SignSet>(&f); s && s->plus != s->minus) {
      f = SignSet{true, true};
      return AngularRegion(std::move(fs));
    }
  }
  throw PreconditionError("paired runs need a hemisphere or one-sided sign factor in the region");
}

int cmd_clt(const ExperimentConfig& cfg, std::ostream& out) {
  const DimensionPartition part = partition_of(cfg);
  CltConfig c;
  c.partition = part;
  c.interval = interval_of(cfg);
  c.regions.push_back(parse_region(cfg.str("region"), part));
  const std::string& paired = cfg.str("paired");
  if (paired != "true" && paired != "false") throw PreconditionError("paired must be true or false");
  if (paired == "true") c.regions.push_back(symmetric_union(c.regions.front()));
  c.T_values = cfg.real_list("T");
  c.sampler = sampler_of(cfg, part.d());
  c.n = cfg.unsigned_integer("n");
  c.h = cfg.real("h");
  c.truncation = static_cast<int>(cfg.integer("P"));
  const int bins = static_cast<int>(cfg.integer("bins"));
  if (bins < 1) throw PreconditionError("bins must be >= 1");

  const auto runs = clt_experiment(c);
  const bool gating = part.d() >= 9;
  bool pass = true;
  json jruns = json::array();
  const bool tag = c.T_values.size() > 1 || c.regions.size() > 1;
  for (const auto& run : runs) {
    const std::size_t ti =
        std::find(c.T_values.begin(), c.T_values.end(), run.T) - c.T_values.begin();
    const std::string suffix =
        tag ? "_T" + std::to_string(ti) + "_R" + std::to_string(run.region_index) : "";
    if (!cfg.str("csv").empty()) {
      auto os = open_out(suffixed(cfg.str("csv"), suffix));
      os << "sample_index,raw_count,volume,discrepancy,normalized,boundary_flags,alpha_proxy\n";
      for (const auto& row : run.rows)
        os << row.index << "," << row.result.count << "," << num(row.result.volume) << ","
           << num(row.result.discrepancy) << "," << num(row.result.normalized) << ","
           << row.result.boundary_flags << "," << num(row.alpha) << "\n";
    }
    std::vector<double> xs;
    std::uint64_t flags = 0;
    for (const auto& row : run.rows) {
      xs.push_back(row.result.normalized);
      flags += row.result.boundary_flags;
    }
    if (!cfg.str("histogram").empty())
      emit_histogram(xs, bins, suffixed(cfg.str("histogram"), suffix), run.summary.target_sigma2);

    const auto& s = run.summary;
    const bool var_ok = s.variance_defined &&
                        std::abs(s.variance / s.target_sigma2 - 1.0) <= 0.15;
    const bool c3_ok = std::abs(s.cum3) < 4 * s.se_cum3;
    const bool c4_ok = std::abs(s.cum4) < 4 * s.se_cum4;
    const bool ks_ok = s.ks_distance < 0.05;
    if (!(var_ok && c3_ok && c4_ok && ks_ok)) pass = false;
    out << "T = " << num(run.T) << ", region = " << format_region(c.regions[run.region_index])
        << (run.exploratory ? " [exploratory]" : "") << "\n";
    out << "  n = " << s.n << ", mean = " << num(s.mean) << " +- " << num(s.se_mean)
        << ", variance = " << num(s.variance) << " +- " << num(s.se_variance)
        << " (target " << num(s.target_sigma2) << ")\n";
    out << "  cum3 = " << num(s.cum3) << " +- " << num(s.se_cum3) << ", cum4 = " << num(s.cum4)
        << " +- " << num(s.se_cum4) << ", ks = " << num(s.ks_distance)
        << ", boundary_flags = " << flags << "\n";
    jruns.push_back({{"T", run.T},
                     {"region", format_region(c.regions[run.region_index])},
                     {"exploratory", run.exploratory},
                     {"n", s.n},
                     {"mean", jnum(s.mean)},
                     {"se_mean", jnum(s.se_mean)},
                     {"variance", jnum(s.variance)},
                     {"se_variance", jnum(s.se_variance)},
                     {"cum3", jnum(s.cum3)},
                     {"se_cum3", jnum(s.se_cum3)},
                     {"cum4", jnum(s.cum4)},
                     {"se_cum4", jnum(s.se_cum4)},
                     {"ks_distance", jnum(s.ks_distance)},
                     {"target_sigma2", s.target_sigma2},
                     {"boundary_flags", flags},
                     {"checks",
                      {{"variance", var_ok}, {"cum3", c3_ok}, {"cum4", c4_ok}, {"ks", ks_ok}}}});
  }
  json r;
  r["runs"] = jruns;
  if (c.regions.size() == 2) {
    json ratios = json::array();
    for (std::size_t t = 0; t < c.T_values.size(); ++t) {
      const double ratio = runs[2 * t + 1].summary.variance / runs[2 * t].summary.variance;
      const bool ok = std::abs(ratio / 2.0 - 1.0) <= 0.2;
      if (!ok) pass = false;
      out << "T = " << num(c.T_values[t]) << ": variance ratio (B u -B) / B = " << num(ratio)
          << "\n";
      ratios.push_back({{"T", c.T_values[t]}, {"ratio", jnum(ratio)}, {"pass", ok}});
    }
    r["variance_ratios"] = ratios;
  }
  r["gating"] = gating;
  r["pass"] = pass;
  out << (gating ? "" : "exploratory run (d < 9): ") << "pass = " << (pass ? "true" : "false")
      << "\n";
  if (!cfg.str("json").empty()) write_json(cfg, r, out);
  return (gating && !pass) ? kExitCheckFailed : kExitOk;
}

}  // namespace

int run_command(const ExperimentConfig& cfg, std::ostream& out) {
  const std::string& s = cfg.subcommand();
  if (s == "volume") return cmd_volume(cfg, out);
  if (s == "variance") return cmd_variance(cfg, out);
  if (s == "count") return cmd_count(cfg, out);
  if (s == "tile-check") return cmd_tile_check(cfg, out);
  if (s == "siegel-check") return cmd_siegel_check(cfg, out);
  if (s == "rogers-check") return cmd_rogers_check(cfg, out);
  if (s == "clt") return cmd_clt(cfg, out);
  throw PreconditionError("unknown subcommand '" + s + "'");
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice point counting in norm-form domains: discrepancy experiments"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  std::map<std::string, std::map<std::string, std::string>> flag_values;
  std::map<std::string, std::string> config_paths;
  std::map<std::string, std::map<std::string, CLI::Option*>> handles;
  for (const auto& name : subcommand_names()) {
    auto* sub = app.add_subcommand(name, "");
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--config", config_paths[name], "key=value configuration file");
    for (const auto& o : subcommand_options(name)) {
      std::string desc = o.help;
      if (!o.default_value.empty()) desc += " (default " + o.default_value + ")";
      handles[name][o.key] = sub->add_option("--" + o.key, flag_values[name][o.key], desc);
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitValidation;
  }
  try {
    const std::string name = app.get_subcommands().front()->get_name();
    std::map<std::string, std::string> flags;
    for (const auto& [key, opt] : handles[name])
      if (opt->count() > 0) flags[key] = flag_values[name][key];
    std::map<std::string, std::string> file;
    if (!config_paths[name].empty()) file = read_config_file(config_paths[name]);
    const ExperimentConfig cfg = resolve_config(name, file, flags);
    return run_command(cfg, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CountCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace latcount::cli
