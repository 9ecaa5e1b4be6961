#include "latcount/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "latcount/errors.hpp"

namespace latcount::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

const std::vector<OptionSpec> kDomain = {
    {"partition", "2,1", "block sizes d_1,...,d_k"},
    {"interval", "1,2", "norm interval lo,hi"},
    {"region", "full,full", "angular region, one token per block"},
};

std::vector<OptionSpec> with(std::vector<OptionSpec> base, const std::vector<OptionSpec>& more) {
  base.insert(base.end(), more.begin(), more.end());
  return base;
}

const std::vector<OptionSpec> kSampling = {
    {"p", "10007", "Hecke prime"},
    {"seed", "1", "master seed"},
    {"sampler", "hecke", "hecke or exact (d = 2 only)"},
    {"workers", "1", "worker threads"},
};

const std::map<std::string, std::vector<OptionSpec>>& table() {
  static const std::map<std::string, std::vector<OptionSpec>> t = {
      {"volume", with(kDomain, {{"T", "7.38905609893065", "cutoff T"},
                                {"json", "", "summary JSON path"}})},
      {"variance", with(kDomain, {{"P", "200", "truncation order"},
                                  {"json", "", "summary JSON path"}})},
      {"count", with(with(kDomain, kSampling),
                     {{"T", "20.085536923187668", "cutoff T"},
                      {"lattice", "", "lattice file (default: sample number `index`)"},
                      {"index", "0", "sample index when no lattice file is given"},
                      {"d", "3", "dimension of sampled lattices (must match partition)"},
                      {"method", "both", "tiled, brute or both"},
                      {"h", "1", "cell side"},
                      {"json", "", "summary JSON path"}})},
      {"tile-check", with(kDomain, {{"T", "148.4131591025766", "cutoff T"},
                                    {"points", "100000", "sampled points"},
                                    {"seed", "1", "master seed"},
                                    {"json", "", "summary JSON path"}})},
      {"siegel-check", with(kSampling, {{"d", "3", "dimension"},
                                        {"function", "ball:1", "ball:R, box:W, bump:R:M"},
                                        {"n", "10000", "sample count"},
                                        {"z-max", "3", "tolerated |z-score|"},
                                        {"csv", "", "per-sample CSV path"},
                                        {"json", "", "summary JSON path"}})},
      {"rogers-check", with(kSampling, {{"d", "3", "dimension"},
                                        {"function", "ball:1", "ball:R, box:W, bump:R:M"},
                                        {"n", "10000", "sample count"},
                                        {"P", "2000", "truncation order of the formula"},
                                        {"rel-tol", "0.1", "tolerated relative variance gap"},
                                        {"csv", "", "per-sample CSV path"},
                                        {"json", "", "summary JSON path"}})},
      {"clt", with(with(kDomain, kSampling),
                   {{"T", "22026.465794806718", "cutoff T, or a comma list"},
                    {"n", "2000", "sample count"},
                    {"h", "1", "cell side"},
                    {"P", "2000", "truncation order of the target variance"},
                    {"paired", "false", "also count B union -B on the same lattices"},
                    {"csv", "", "per-sample CSV path (suffixed per T and region)"},
                    {"json", "", "summary JSON path"},
                    {"histogram", "", "histogram path (suffixed per T and region)"},
                    {"bins", "40", "histogram bins"}})},
  };
  return t;
}

}  // namespace

const std::vector<OptionSpec>& subcommand_options(const std::string& subcommand) {
  const auto& t = table();
  const auto it = t.find(subcommand);
  if (it == t.end()) throw PreconditionError("unknown subcommand '" + subcommand + "'");
  return it->second;
}

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {"volume",       "variance",     "count", "tile-check",
                                                 "siegel-check", "rogers-check", "clt"};
  return names;
}

std::map<std::string, std::string> parse_config_text(std::istream& in, const std::string& origin) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw PreconditionError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty()) throw PreconditionError(origin + ":" + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open config file '" + path + "'");
  return parse_config_text(in, path);
}

ExperimentConfig::ExperimentConfig(std::string subcommand, std::map<std::string, std::string> values)
    : subcommand_(std::move(subcommand)), values_(std::move(values)) {}

const std::string& ExperimentConfig::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw PreconditionError("missing configuration key '" + key + "'");
  return it->second;
}

double ExperimentConfig::real(const std::string& key) const {
  const std::string& s = str(key);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw PreconditionError(key + ": expected a number, got '" + s + "'");
  return v;
}

long ExperimentConfig::integer(const std::string& key) const {
  const std::string& s = str(key);
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw PreconditionError(key + ": expected an integer, got '" + s + "'");
  return v;
}

std::uint64_t ExperimentConfig::unsigned_integer(const std::string& key) const {
  const std::string& s = str(key);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw PreconditionError(key + ": expected a non-negative integer, got '" + s + "'");
  return v;
}

std::vector<double> ExperimentConfig::real_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& tok : split(str(key), ',')) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size() || tok.empty())
      throw PreconditionError(key + ": bad number '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw PreconditionError(key + ": empty list");
  return out;
}

std::vector<int> ExperimentConfig::int_list(const std::string& key) const {
  std::vector<int> out;
  for (const auto& tok : split(str(key), ',')) {
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size() || tok.empty())
      throw PreconditionError(key + ": bad integer '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw PreconditionError(key + ": empty list");
  return out;
}

ExperimentConfig resolve_config(const std::string& subcommand,
                                const std::map<std::string, std::string>& file_values,
                                const std::map<std::string, std::string>& flag_values) {
  const auto& opts = subcommand_options(subcommand);
  std::map<std::string, std::string> values;
  for (const auto& o : opts) values[o.key] = o.default_value;
  for (const auto* src : {&file_values, &flag_values}) {
    for (const auto& [k, v] : *src) {
      if (!values.count(k))
        throw PreconditionError("unknown configuration key '" + k + "' for subcommand " + subcommand);
      values[k] = v;
    }
  }
  return ExperimentConfig(subcommand, std::move(values));
}

}  // namespace latcount::cli
