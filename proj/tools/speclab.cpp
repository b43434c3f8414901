// speclab: run the named experiments and write CSV output plus a manifest.
//
//   speclab list
//   speclab config <experiment>
//   speclab run <experiment> [--config FILE] [--N 16,32] [--tend T] [--out DIR]
//                            [--set key=value ...]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical blow-up.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "speclab/harness/config.hpp"
#include "speclab/harness/experiments.hpp"
#include "speclab/harness/output.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBlowup = 3;

namespace h = speclab::harness;

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw h::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct RunOptions {
  std::string experiment;
  std::string config_file;
  std::string n_list;
  std::string t_end;
  std::string out;
  std::vector<std::string> sets;
};

/// Defaults of the experiment, then the file, then flags.
h::ExperimentConfig build_config(const RunOptions& o) {
  std::string file_text;
  std::string name = o.experiment;
  if (!o.config_file.empty()) {
    file_text = read_file(o.config_file);
    for (const auto& e : h::parse_entries(file_text))
      if (e.key == "experiment") {
        if (!name.empty() && e.value != name)
          throw h::ConfigError("config file names experiment '" + e.value +
                               "' but the command line names '" + name + "'");
        name = e.value;
      }
  }
  if (name.empty()) throw h::ConfigError("no experiment given; registered: " + h::registered_names());
  auto c = h::parse_config(file_text, h::default_config(name));
  c.experiment = name;
  if (!o.n_list.empty()) h::set_value(c, "N", o.n_list);
  if (!o.t_end.empty()) h::set_value(c, "t_end", o.t_end);
  if (!o.out.empty()) h::set_value(c, "out", o.out);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw h::ConfigError("--set expects key=value, got '" + kv + "'");
    h::set_value(c, h::detail::trim(kv.substr(0, eq)), h::detail::trim(kv.substr(eq + 1)));
  }
  h::validate(c);
  return c;
}

int run(const RunOptions& o) {
  const auto c = build_config(o);
  const auto start = std::chrono::steady_clock::now();
  const auto result = h::run_experiment(c);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  h::Manifest manifest{h::emit_config(c), h::kVersion, result.blew_up ? "blowup" : "ok", wall,
                       result.notes};
  h::FileSet files = result.files;
  files["manifest.txt"] = manifest.text(result.files);
  h::write_files(c.out, files);
  std::cout << c.experiment << ": wrote " << files.size() << " files to " << c.out << "\n";
  if (result.blew_up) {
    std::cerr << c.experiment << ": numerical blow-up (see manifest.txt)\n";
    return kExitBlowup;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"speclab: Fourier spectral, 2/3 de-aliased and spectral-viscosity experiments"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "print the registered experiments");

  std::string config_name;
  auto* config = app.add_subcommand("config", "print the default configuration of an experiment");
  config->add_option("experiment", config_name, "experiment name")->required();

  RunOptions opts;
  auto* runcmd = app.add_subcommand("run", "run an experiment sweep");
  runcmd->add_option("experiment", opts.experiment, "experiment name");
  runcmd->add_option("--config", opts.config_file, "key = value configuration file");
  runcmd->add_option("--N", opts.n_list, "comma-separated resolutions, e.g. 16,32,64");
  runcmd->add_option("--tend", opts.t_end, "final time");
  runcmd->add_option("--out", opts.out, "output directory");
  runcmd->add_option("--set", opts.sets, "override any configuration key: key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*list) {
      for (const auto& e : h::registry()) std::cout << e.name << "  " << e.description << "\n";
      return kExitOk;
    }
    if (*config) {
      std::cout << h::emit_config(h::default_config(config_name));
      return kExitOk;
    }
    return run(opts);
  } catch (const h::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const speclab::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
