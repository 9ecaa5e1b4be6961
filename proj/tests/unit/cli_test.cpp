#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "latcount/cli/commands.hpp"
#include "latcount/cli/config.hpp"
#include "latcount/cli/histogram.hpp"
#include "latcount/errors.hpp"

namespace latcount::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "latcount_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "latcount");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

TEST(Config, ParsesKeyValueText) {
  std::istringstream in("# comment\n\nT = 12.5\n--seed=3  # trailing\n");
  const auto kv = parse_config_text(in, "test");
  EXPECT_EQ(kv.at("T"), "12.5");
  EXPECT_EQ(kv.at("seed"), "3");
  std::istringstream bad("no equals sign\n");
  EXPECT_THROW(parse_config_text(bad, "test"), PreconditionError);
}

TEST(Config, FlagsOverrideFileOverrideDefaults) {
  const ExperimentConfig c = resolve_config("clt", {{"n", "50"}, {"seed", "9"}}, {{"n", "70"}});
  EXPECT_EQ(c.integer("n"), 70);
  EXPECT_EQ(c.unsigned_integer("seed"), 9u);
  EXPECT_EQ(c.unsigned_integer("p"), 10007u);
  EXPECT_EQ(c.int_list("partition"), (std::vector<int>{2, 1}));
  EXPECT_THROW(resolve_config("clt", {{"bogus", "1"}}, {}), PreconditionError);
  EXPECT_THROW(resolve_config("nope", {}, {}), PreconditionError);
}

TEST(Config, EveryOptionHasADefaultEntry) {
  for (const auto& name : subcommand_names()) {
    const auto& opts = subcommand_options(name);
    EXPECT_FALSE(opts.empty()) << name;
    for (const auto& o : opts) EXPECT_FALSE(o.help.empty()) << name << " " << o.key;
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"frobnicate"}), kExitValidation);
  EXPECT_EQ(run({"volume", "--bogus", "1"}), kExitValidation);
  EXPECT_EQ(run({"volume", "--interval", "2,1"}), kExitValidation);
  EXPECT_EQ(run({"count", "--lattice", scratch("missing.txt").string()}), kExitValidation);
}

TEST(Cli, VolumeExample) {
  std::string text;
  ASSERT_EQ(run({"volume", "--partition", "1,1", "--interval", "1,2.71828182845904523536",
                 "--region", "+,+", "--T", "7.389056"},
                &text),
            kExitOk);
  EXPECT_NE(text.find("5.873"), std::string::npos) << text;
}

TEST(Cli, ConfigFileIsRead) {
  const auto cfg = scratch("vol.cfg");
  std::ofstream(cfg) << "partition=1,1\ninterval=1,2.718281828459045\nregion=+,+\nT=7.389056\n";
  std::string text;
  ASSERT_EQ(run({"volume", "--config", cfg.string()}, &text), kExitOk);
  EXPECT_NE(text.find("5.873"), std::string::npos) << text;
}

TEST(Cli, JsonEmbedsConfigAndVersion) {
  const auto js = scratch("var.json");
  ASSERT_EQ(run({"variance", "--partition", "2,1", "--interval", "1,8", "--region",
                 "hemisphere:e1,+1", "--P", "50", "--json", js.string()}),
            kExitOk);
  const std::string text = slurp(js);
  EXPECT_NE(text.find("\"version\""), std::string::npos);
  EXPECT_NE(text.find("hemisphere:e1,+1"), std::string::npos);
}

TEST(Cli, CltCsvIsIndependentOfWorkerCount) {
  std::string first;
  for (int w : {1, 3, 8}) {
    const auto csv = scratch("clt_w" + std::to_string(w) + ".csv");
    ASSERT_EQ(run({"clt", "--partition", "2,1", "--interval", "1,2", "--region", "full,+",
                   "--T", "20.085536923187668", "--n", "60", "--seed", "5", "--workers",
                   std::to_string(w), "--csv", csv.string()}),
              kExitOk);
    const std::string text = slurp(csv);
    EXPECT_EQ(text.rfind("sample_index,raw_count,volume,discrepancy,normalized,boundary_flags,alpha_proxy\n", 0), 0u);
    if (first.empty()) first = text;
    EXPECT_EQ(text, first) << "workers " << w;
  }
}

TEST(Histogram, EqualSamplesFillOneBin) {
  const std::vector<double> s(10, 2.5);
  const auto h = histogram(s, 5, 1.0);
  int occupied = 0;
  for (const auto& b : h)
    if (b.density > 0) {
      ++occupied;
      EXPECT_NEAR(b.density, 1 / 0.2, 1e-12);
    }
  EXPECT_EQ(occupied, 1);
}

TEST(Histogram, NormalDrawsTrackReference) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> s(100000);
  for (auto& x : s) x = g(rng);
  for (const auto& b : histogram(s, 40, 1.0)) EXPECT_LT(std::abs(b.density - b.reference), 0.05);
}

TEST(Histogram, EmptyInputWritesNothing) {
  const auto path = scratch("empty_hist.txt");
  fs::remove(path);
  EXPECT_THROW(emit_histogram(std::vector<double>{}, 10, path.string()), PreconditionError);
  EXPECT_FALSE(fs::exists(path));
  EXPECT_THROW(histogram(std::vector<double>{1.0}, 0, 1.0), PreconditionError);
}

TEST(Histogram, FileHasThreeColumns) {
  const auto path = scratch("hist.txt");
  emit_histogram(std::vector<double>{0.1, 0.2, 0.4}, 3, path.string());
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double a, b, c;
    EXPECT_TRUE(static_cast<bool>(ls >> a >> b >> c)) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 3);
  EXPECT_THROW(emit_histogram(std::vector<double>{1.0}, 2, "/nonexistent/dir/h.txt"), std::exception);
}

}  // namespace
}  // namespace latcount::cli
