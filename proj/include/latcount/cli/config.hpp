#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace latcount::cli {

struct OptionSpec {
  std::string key;
  std::string default_value;
  std::string help;
};

// Known keys and documented defaults of a subcommand.
const std::vector<OptionSpec>& subcommand_options(const std::string& subcommand);
const std::vector<std::string>& subcommand_names();

// key=value lines; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> parse_config_text(std::istream& in, const std::string& origin);
std::map<std::string, std::string> read_config_file(const std::string& path);

// Resolved key/value configuration of one invocation.
class ExperimentConfig {
 public:
  ExperimentConfig(std::string subcommand, std::map<std::string, std::string> values);

  const std::string& subcommand() const noexcept { return subcommand_; }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  const std::string& str(const std::string& key) const;
  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  std::uint64_t unsigned_integer(const std::string& key) const;
  std::vector<double> real_list(const std::string& key) const;
  std::vector<int> int_list(const std::string& key) const;

 private:
  std::string subcommand_;
  std::map<std::string, std::string> values_;
};

// Merges defaults < config file < explicit flags. Throws on keys the
// subcommand does not know.
ExperimentConfig resolve_config(const std::string& subcommand,
                                const std::map<std::string, std::string>& file_values,
                                const std::map<std::string, std::string>& flag_values);

}  // namespace latcount::cli
