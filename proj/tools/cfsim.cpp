// cfsim: Monte Carlo downlink simulator for cell-free massive MIMO-OFDM
// with opportunistic AP selection.
//
//   cfsim run --config sim.cfg --out results/
//   cfsim plot --in results/ --out cdf.svg
//   cfsim validate --config sim.cfg

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfmimo/artifacts.hpp"
#include "cfmimo/config.hpp"
#include "cfmimo/montecarlo.hpp"
#include "cfmimo/version.hpp"

namespace fs = std::filesystem;

namespace {

struct RunOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> drops;
  std::optional<int> threads;
  std::vector<std::string> schemes;
};

std::string default_out_dir() {
  if (const char* env = std::getenv("CFSIM_OUT_DIR"); env && *env) return env;
  return ".";
}

cfmimo::SystemConfig load_config(const std::string& path) {
  if (path.empty()) return cfmimo::SystemConfig{};
  return cfmimo::parse_config_file(path);
}

cfmimo::SchemeKind scheme_from_name(const std::string& name) {
  if (name == "full_ap") return cfmimo::SchemeKind::kFullAp;
  if (name == "oas") return cfmimo::SchemeKind::kOas;
  if (name == "oas_dp") return cfmimo::SchemeKind::kOasDp;
  throw cfmimo::ConfigError("unknown scheme '" + name +
                            "' (full_ap, oas, oas_dp)");
}

int cmd_run(const RunOptions& opt) {
  cfmimo::SystemConfig cfg = load_config(opt.config_path);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.drops) cfg.drops = *opt.drops;
  if (opt.threads) cfg.threads = *opt.threads;
  if (!opt.schemes.empty()) {
    cfg.schemes.clear();
    for (const auto& s : opt.schemes) cfg.schemes.push_back(scheme_from_name(s));
  }
  cfg.validate();

  fs::create_directories(opt.out_dir);

  const auto curves = cfmimo::mc::run_experiment(cfg);

  std::vector<std::string> outputs;
  for (const auto& curve : curves) {
    const std::string path =
        (fs::path(opt.out_dir) / ("cdf_" + curve.name() + ".csv")).string();
    cfmimo::io::write_cdf_csv(path, curve.cdf);
    outputs.push_back(path);
  }
  const std::string summary_path =
      (fs::path(opt.out_dir) / "summary.csv").string();
  cfmimo::io::write_summary_csv(summary_path, curves);
  outputs.push_back(summary_path);

  const std::string manifest_path =
      (fs::path(opt.out_dir) / "manifest.cfg").string();
  cfmimo::io::write_manifest(manifest_path, cfg, outputs);

  std::printf("%-28s %10s %10s %10s %8s\n", "scheme", "95%-likely", "median",
              "mean", "power");
  for (const auto& curve : curves) {
    std::printf("%-28s %10.3f %10.3f %10.3f %7.2f%%\n", curve.name().c_str(),
                curve.cdf.percentile_05, curve.cdf.percentile_50,
                curve.cdf.mean, 100.0 * curve.active_power_fraction);
  }
  std::printf("wrote %zu artifacts to %s\n", outputs.size() + 1,
              opt.out_dir.c_str());
  return 0;
}

int cmd_plot(const std::string& in_dir, const std::string& out_file) {
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("cdf_", 0) == 0 && entry.path().extension() == ".csv") {
      files.push_back(entry.path().string());
    }
  }
  if (files.empty()) {
    std::cerr << "no cdf_*.csv files in '" << in_dir << "'\n";
    return 2;
  }
  std::sort(files.begin(), files.end());

  std::vector<cfmimo::io::PlotCurve> curves;
  for (const auto& f : files) {
    cfmimo::io::PlotCurve c;
    c.label = fs::path(f).stem().string().substr(4);  // strip "cdf_"
    c.points = cfmimo::io::read_cdf_csv(f);
    curves.push_back(std::move(c));
  }
  cfmimo::io::render_cdf_svg(out_file, curves);
  std::printf("wrote %s (%zu curves)\n", out_file.c_str(), curves.size());
  return 0;
}

int cmd_validate(const std::string& config_path) {
  const cfmimo::SystemConfig cfg = load_config(config_path);
  cfg.validate();
  std::cout << "ok: " << config_path << "\n";
  cfmimo::write_config(std::cout, cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cell-free massive MIMO-OFDM downlink simulator"};
  app.set_version_flag("--version", cfmimo::kVersion);
  app.require_subcommand(1);

  RunOptions run_opt;
  run_opt.out_dir = default_out_dir();
  auto* run = app.add_subcommand("run", "run an experiment and emit CSV results");
  run->add_option("--config", run_opt.config_path,
                  "config file (key = value); defaults used when omitted");
  run->add_option("--seed", run_opt.seed, "override the master seed");
  run->add_option("--drops", run_opt.drops, "override the number of drops");
  run->add_option("--threads", run_opt.threads, "worker threads (0 = auto)");
  run->add_option("--scheme", run_opt.schemes,
                  "schemes to evaluate (full_ap, oas, oas_dp)")
      ->delimiter(',');
  run->add_option("--out", run_opt.out_dir,
                  "output directory (default $CFSIM_OUT_DIR or '.')");

  std::string plot_in, plot_out = "cdf.svg";
  auto* plot = app.add_subcommand("plot", "render CDF curves from cdf_*.csv");
  plot->add_option("--in", plot_in, "directory containing cdf_*.csv")
      ->required();
  plot->add_option("--out", plot_out, "output SVG file");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "parse and validate a config");
  validate->add_option("--config", validate_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (plot->parsed()) return cmd_plot(plot_in, plot_out);
    if (validate->parsed()) return cmd_validate(validate_path);
  } catch (const cfmimo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
