#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cfmimo/config.hpp"

namespace cfmimo::mc {

// Empirical CDF of a sample pool. The CDF value at the i-th order statistic
// (0-based) is (i+1)/n; percentile p is the lower empirical quantile, the
// order statistic at index ceil(p*n) - 1. The "95%-likely" figure of the
// result tables is percentile_05.
struct CdfSummary {
  std::vector<double> sorted;  // ascending
  double percentile_05 = 0.0;
  double percentile_50 = 0.0;
  double mean = 0.0;

  std::size_t count() const { return sorted.size(); }
  double probability(std::size_t i) const {
    return static_cast<double>(i + 1) / static_cast<double>(sorted.size());
  }
};

// Lower empirical quantile of an ascending sample vector.
double percentile(std::span<const double> sorted, double p);

// Sorts the samples and fills the summary. Throws on an empty pool.
CdfSummary empirical_cdf(std::vector<double> samples);

// One result curve: a scheme under a power mode.
struct SchemeCurve {
  SchemeKind scheme = SchemeKind::kFullAp;
  PowerMode mode = PowerMode::kPowerSaving;
  CdfSummary cdf;
  double active_power_fraction = 1.0;

  // File/table identifier: "full_ap", "oas_power_saving", ...
  std::string name() const;
};

// Fraction of the full-AP radiated power that stays active: M_s/M in
// PowerSaving (the full-AP baseline itself is 1), 1 in EqualTotalPower.
double active_power_fraction(const SystemConfig& cfg, SchemeKind scheme,
                             PowerMode mode);

// Unsorted sample pool of one curve, in drop-major order: samples of drop d
// occupy [d * samples_per_drop, (d+1) * samples_per_drop).
struct RawCurve {
  SchemeKind scheme = SchemeKind::kFullAp;
  PowerMode mode = PowerMode::kPowerSaving;
  std::size_t samples_per_drop = 0;
  std::vector<double> samples;

  std::string name() const;
};

// Runs the full experiment: per drop, a network realization, orthogonal
// allocation, per-user AP selection, deterministic SE for the statistical
// schemes and realization-sampled SE for OAS-DP. Deterministic in the
// config (seed included) regardless of the worker-pool size.
std::vector<RawCurve> run_experiment_raw(const SystemConfig& cfg);

// run_experiment_raw plus CDF aggregation per curve.
std::vector<SchemeCurve> run_experiment(const SystemConfig& cfg);

}  // namespace cfmimo::mc
