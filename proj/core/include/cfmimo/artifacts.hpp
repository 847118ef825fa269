#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cfmimo/config.hpp"
#include "cfmimo/montecarlo.hpp"

namespace cfmimo::io {

// cdf_<scheme>.csv: header "se_bits_per_hz,cdf_probability", one row per
// sorted sample. SE values carry 6 significant digits.
void write_cdf_csv(const std::string& path, const mc::CdfSummary& cdf);

// summary.csv: header
// "scheme,power_mode,percentile_05,percentile_50,mean,active_power_fraction,samples".
void write_summary_csv(const std::string& path,
                       std::span<const mc::SchemeCurve> curves);

// Manifest: the fully resolved configuration in config-file syntax plus
// comment lines for tool version, creation time, the power-normalization
// reading in effect, and the emitted artifacts. parse_config_file() on a
// manifest reproduces the run.
void write_manifest(const std::string& path, const SystemConfig& cfg,
                    std::span<const std::string> outputs);

// Parsed CDF curve: (se, probability) pairs.
using CdfPoints = std::vector<std::pair<double, double>>;

// Reads a cdf_*.csv back; throws on a missing file, bad header or empty body.
CdfPoints read_cdf_csv(const std::string& path);

struct PlotCurve {
  std::string label;
  CdfPoints points;
};

// Step-function CDF plot as a standalone SVG file. Purely presentational;
// the numbers live in the CSVs.
void render_cdf_svg(const std::string& path,
                    std::span<const PlotCurve> curves);

}  // namespace cfmimo::io
