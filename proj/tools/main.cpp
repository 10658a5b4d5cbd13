// mobcav — vacuum field fluctuations and energy densities in a cavity with a
// harmonically bound mobile wall. Subcommands drive the 1D electromagnetic and
// 3D scalar models and emit CSV data plus a JSON metadata sidecar.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mobcav/runner.hpp"
#include "mobcav/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;

struct CommonOpts {
  std::string config_path;
  std::string preset_name;
  std::string out_dir;
  int threads = -1;
  int grid = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "JSON run configuration file");
  cmd->add_option("--preset", opts.preset_name,
                  "bundled parameter set (fig1, fig2, fig3, fig3-desk)");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--threads", opts.threads, "worker threads (0 = hardware concurrency)");
  cmd->add_option("--grid", opts.grid, "override the number of uniform grid points");
}

mobcav::RunConfig load_config(const CommonOpts& opts, mobcav::Scenario scenario) {
  if (opts.config_path.empty() && opts.preset_name.empty()) {
    throw mobcav::ConfigError("provide --config <path> or --preset <name>");
  }
  if (!opts.config_path.empty() && !opts.preset_name.empty()) {
    throw mobcav::ConfigError("--config and --preset are mutually exclusive");
  }
  mobcav::RunConfig cfg;
  if (!opts.preset_name.empty()) {
    cfg = mobcav::preset(opts.preset_name);
  } else {
    std::ifstream in(opts.config_path, std::ios::binary);
    if (!in) throw mobcav::ConfigError("cannot read configuration file " + opts.config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    cfg = mobcav::parse_config(ss.str());
  }
  if (cfg.scenario != scenario) {
    throw mobcav::ConfigError("configuration scenario \"" + mobcav::to_string(cfg.scenario) +
                              "\" does not match the \"" + mobcav::to_string(scenario) +
                              "\" subcommand");
  }
  if (!opts.out_dir.empty()) cfg.output.dir = opts.out_dir;
  if (opts.threads >= 0) cfg.threads = opts.threads;
  if (opts.grid > 0) cfg.grid.points = opts.grid;
  return cfg;
}

int run_scenario(const CommonOpts& opts, mobcav::Scenario scenario) {
  const mobcav::RunConfig cfg = load_config(opts, scenario);
  const mobcav::OutputBundle bundle = mobcav::run(cfg);
  std::cout << "wrote " << bundle.data_file.string() << "\n";
  for (const auto& extra : bundle.extra_files) {
    std::cout << "wrote " << extra.string() << "\n";
  }
  std::cout << "wrote " << bundle.meta_file.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vacuum field fluctuations in a cavity with a mobile wall"};
  app.set_version_flag("--version", mobcav::kVersion);
  app.require_subcommand(1);

  CommonOpts opts;
  mobcav::Scenario scenario = mobcav::Scenario::Profile1D;

  auto* p1 = app.add_subcommand("profile1d",
                                "1D electromagnetic fluctuation and energy-density profile");
  add_common(p1, opts);
  p1->callback([&] { scenario = mobcav::Scenario::Profile1D; });

  auto* p3 = app.add_subcommand("profile3d", "3D scalar energy-density profile");
  add_common(p3, opts);
  p3->callback([&] { scenario = mobcav::Scenario::Profile3D; });

  auto* sp = app.add_subcommand("spectrum", "photon spectrum of the dressed ground state");
  add_common(sp, opts);
  sp->callback([&] { scenario = mobcav::Scenario::Spectrum3D; });

  auto* sw = app.add_subcommand("sweep", "parameter sweep with peak/width summary");
  add_common(sw, opts);
  sw->callback([&] { scenario = mobcav::Scenario::Sweep; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    return run_scenario(opts, scenario);
  } catch (const mobcav::NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const mobcav::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
