#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <sys/wait.h>

#include "speclab/harness/config.hpp"
#include "speclab/harness/experiments.hpp"
#include "speclab/harness/output.hpp"
#include "speclab/harness/pool.hpp"

using namespace speclab;
using namespace speclab::harness;
namespace fs = std::filesystem;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SPECLAB_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("speclab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

ExperimentConfig small_smooth() {
  auto c = default_config("burgers-smooth-rate");
  c.n_list = {8, 16, 32};
  c.t_end = 0.2;
  return c;
}

}  // namespace

TEST(Config, ParsesValuesListsAndComments) {
  const auto c = parse_config(
      "# sweep\n"
      "experiment = burgers-sv\n"
      "N = 16, 32,64   # inline comment\n"
      "\n"
      "snapshots = 0,0.5,2\n"
      "zero_last_mode = true\n"
      "seed = 18446744073709551615\n");
  EXPECT_EQ(c.experiment, "burgers-sv");
  EXPECT_EQ(c.n_list, (std::vector<int>{16, 32, 64}));
  EXPECT_EQ(c.snapshots, (std::vector<double>{0.0, 0.5, 2.0}));
  EXPECT_TRUE(c.zero_last_mode);
  EXPECT_EQ(c.seed, 18446744073709551615ull);
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_NE(error_of("N = 8\n\nbogus = 1\n").find("line 3"), std::string::npos);
  EXPECT_NE(error_of("N = 8\nbogus = 1\n").find("unknown key 'bogus'"), std::string::npos);
  EXPECT_NE(error_of("t_end = 1\nno equals sign\n").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("t_end = fast\n").find("line 1"), std::string::npos);
  EXPECT_NE(error_of("N = 8,x\n").find("line 1"), std::string::npos);
  EXPECT_NE(error_of("zero_last_mode = maybe\n").find("line 1"), std::string::npos);
}

TEST(Config, EmitParseRoundTripIsByteIdentical) {
  for (const auto& info : registry()) {
    const auto text = emit_config(info.defaults);
    const auto back = parse_config(text);
    EXPECT_EQ(back, info.defaults) << info.name;
    EXPECT_EQ(emit_config(back), text) << info.name;
  }
  auto c = small_smooth();
  c.dt = 0.1 + 0.2;  // not exactly representable as a short decimal
  c.amplitude = 1.0 / 3.0;
  c.snapshots = {1e-300, 0.7};
  EXPECT_EQ(parse_config(emit_config(c)), c);
  EXPECT_EQ(emit_config(parse_config(emit_config(c))), emit_config(c));
}

TEST(Config, EmitsKeysInCanonicalOrder) {
  const auto text = emit_config(default_config("isentropic-entropy"));
  std::size_t pos = 0;
  for (const auto& key : config_keys()) {
    const auto at = text.find(key + " = ", pos);
    ASSERT_NE(at, std::string::npos) << key;
    pos = at;
  }
}

TEST(Registry, NamesAndDefaultsValidate) {
  EXPECT_EQ(registry().size(), 8u);
  for (const auto& info : registry()) {
    EXPECT_NO_THROW(validate(info.defaults)) << info.name;
    EXPECT_EQ(info.defaults.experiment, info.name);
  }
  try {
    find_experiment("nope");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("burgers-sv"), std::string::npos);
  }
}

TEST(Registry, ValidateRejectsBadValues) {
  auto c = small_smooth();
  c.variant = "weird";
  EXPECT_THROW(validate(c), ConfigError);
  c = small_smooth();
  c.n_list = {};
  EXPECT_THROW(validate(c), ConfigError);
  c = small_smooth();
  c.t_end = 5.0;  // past the critical time 1/amplitude
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(Output, CsvAndDigests) {
  EXPECT_EQ(csv_text({"a", "b"}, {{1.0, 0.1}}), "a,b\n1,0.10000000000000001\n");
  EXPECT_THROW(csv_text({"a"}, {{1.0, 2.0}}), InvalidArgument);
  EXPECT_EQ(hex64(fnv1a("")), "cbf29ce484222325");
  EXPECT_EQ(hex64(fnv1a("a")), "af63dc4c8601ec8c");
}

TEST(Output, ManifestListsConfigDigestsAndWallTimeLast) {
  Manifest m{"N = 8\n", "1.0.0", "ok", 1.5, {{"note", "x"}}};
  const auto text = m.text({{"a.csv", "hello"}});
  EXPECT_NE(text.find("config.N = 8\n"), std::string::npos);
  EXPECT_NE(text.find("outcome = ok\n"), std::string::npos);
  EXPECT_NE(text.find("digest.a.csv = fnv1a:" + hex64(fnv1a("hello"))), std::string::npos);
  EXPECT_EQ(text.substr(text.rfind("wall_time_seconds")), "wall_time_seconds = 1.5\n");
}

TEST(Pool, PreservesOrderAndPropagatesErrors) {
  std::vector<int> items(50);
  for (int i = 0; i < 50; ++i) items[i] = i;
  const auto sq = parallel_map(items, 4, [](int i) { return i * i; });
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sq[i], i * i);
  std::atomic<int> calls{0};
  EXPECT_THROW(parallel_map(items, 3,
                            [&](int i) {
                              ++calls;
                              if (i == 7) throw std::runtime_error("boom");
                              return i;
                            }),
               std::runtime_error);
  EXPECT_EQ(resolve_workers(8, 2), 2);
  EXPECT_EQ(resolve_workers(0, 0), 1);
}

TEST(Experiments, RunsAreByteIdentical) {
  auto c = small_smooth();
  c.workers = 2;
  const auto a = run_experiment(c);
  c.workers = 1;
  const auto b = run_experiment(c);
  EXPECT_EQ(a.files, b.files);
  EXPECT_TRUE(a.files.count("burgers-smooth-rate_summary.csv"));
  EXPECT_TRUE(a.files.count("burgers-smooth-rate_rate_fit.csv"));
  EXPECT_TRUE(a.files.count("burgers-smooth-rate_N16_series.csv"));
}

TEST(Experiments, ZeroEndTimeGivesProjectionErrors) {
  auto c = small_smooth();
  c.t_end = 0.0;
  const auto r = run_experiment(c);
  std::istringstream ss(r.files.at("burgers-smooth-rate_summary.csv"));
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "N,error_uN,error_um");
  int rows = 0;
  while (std::getline(ss, line)) {
    ++rows;
    const double err = std::stod(line.substr(line.find(',') + 1));
    EXPECT_LT(err, 1e-14);  // the sine is resolved exactly
  }
  EXPECT_EQ(rows, 3);
}

TEST(Experiments, BlowupIsReportedNotThrown) {
  auto c = default_config("burgers-postshock-tv");
  c.variant = "spectral";
  c.n_list = {32};
  c.dt = 5.0;  // far beyond stability
  c.t_end = 500.0;
  ExperimentResult r;
  ASSERT_NO_THROW(r = run_experiment(c));
  EXPECT_TRUE(r.blew_up);
  EXPECT_TRUE(r.notes.count("blowup_time.N32"));
}

TEST(Cli, ListAndConfigSucceed) {
  EXPECT_EQ(run_cli("list"), 0);
  EXPECT_EQ(run_cli("config euler2d-taylor-green"), 0);
}

TEST(Cli, ConfigErrorsExitTwo) {
  const auto dir = scratch("cli_errors");
  std::ofstream(dir / "bad.cfg") << "experiment = burgers-smooth-rate\nbogus = 1\n";
  EXPECT_EQ(run_cli("run --config " + (dir / "bad.cfg").string()), 2);
  EXPECT_EQ(run_cli("run no-such-experiment"), 2);
  EXPECT_EQ(run_cli("run burgers-smooth-rate --set N=abc"), 2);
  EXPECT_EQ(run_cli("run burgers-smooth-rate --bogus-flag"), 2);
  fs::remove_all(dir);
}

TEST(Cli, BlowupExitsThree) {
  const auto dir = scratch("cli_blowup");
  EXPECT_EQ(run_cli("run burgers-postshock-tv --N 32 --tend 500 --set variant=spectral --set dt=5"
                    " --out " + dir.string()),
            3);
  EXPECT_NE(slurp(dir / "manifest.txt").find("outcome = blowup\n"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, RunWritesFilesAndManifestMatchesDigests) {
  const auto dir = scratch("cli_run");
  ASSERT_EQ(run_cli("run burgers-smooth-rate --N 8,16,32 --tend 0.1 --out " + dir.string()), 0);
  const auto manifest = slurp(dir / "manifest.txt");
  EXPECT_NE(manifest.find("config.N = 8,16,32\n"), std::string::npos);
  EXPECT_NE(manifest.find("config.t_end = 0.1\n"), std::string::npos);
  int digests = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name == "manifest.txt") continue;
    ++digests;
    EXPECT_NE(manifest.find("digest." + name + " = fnv1a:" + hex64(fnv1a(slurp(entry.path())))),
              std::string::npos)
        << name;
  }
  EXPECT_EQ(digests, 5);  // three series, summary and rate fit
  fs::remove_all(dir);
}

TEST(Cli, OverridesApplyInOrder) {
  const auto dir = scratch("cli_override");
  std::ofstream(dir / "run.cfg") << "experiment = isentropic-entropy\nN = 8\nt_end = 0.5\n";
  ASSERT_EQ(run_cli("run --config " + (dir / "run.cfg").string() + " --tend 0.25 --set law=linear"
                    " --out " + (dir / "o").string()),
            0);
  const auto manifest = slurp(dir / "o" / "manifest.txt");
  EXPECT_NE(manifest.find("config.N = 8\n"), std::string::npos);
  EXPECT_NE(manifest.find("config.t_end = 0.25\n"), std::string::npos);
  EXPECT_NE(manifest.find("config.law = linear\n"), std::string::npos);
  fs::remove_all(dir);
}
