#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "cfmimo/montecarlo.hpp"
#include "cfmimo/rng.hpp"
#include "support/stats.hpp"

using namespace cfmimo;
using namespace cfmimo::mc;

namespace {

// Small but fully featured configuration for fast experiments.
SystemConfig small_config() {
  SystemConfig cfg;
  cfg.aps = 24;
  cfg.users = 5;
  cfg.subcarriers = 60;
  cfg.m_select = 4;
  cfg.drops = 8;
  cfg.realizations = 6;
  cfg.cp_length = 16;
  cfg.sample_rate_hz = 3e6;  // keeps the ETU span inside 60 samples
  cfg.seed = 77;
  return cfg;
}

std::map<std::string, CdfSummary> by_name(const std::vector<SchemeCurve>& v) {
  std::map<std::string, CdfSummary> out;
  for (const auto& c : v) out[c.name()] = c.cdf;
  return out;
}

}  // namespace

TEST_CASE("empirical_cdf and the lower-quantile convention") {
  const auto cdf = empirical_cdf({3.0, 1.0, 4.0, 2.0});
  CHECK(cdf.sorted == std::vector<double>{1.0, 2.0, 3.0, 4.0});
  CHECK(cdf.percentile_50 == 2.0);  // ceil(0.5*4) - 1 = index 1
  CHECK(cdf.percentile_05 == 1.0);
  CHECK(cdf.mean == doctest::Approx(2.5));
  CHECK(cdf.probability(0) == doctest::Approx(0.25));
  CHECK(cdf.probability(3) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)empirical_cdf({}), std::invalid_argument);
}

TEST_CASE("percentiles of constant samples are the constant") {
  const auto cdf = empirical_cdf(std::vector<double>(17, 3.25));
  CHECK(cdf.percentile_05 == 3.25);
  CHECK(cdf.percentile_50 == 3.25);
  CHECK(percentile(cdf.sorted, 0.95) == 3.25);
}

TEST_CASE("uniform order statistics: 5th percentile of 10k uniforms") {
  Rng rng = Rng::stream({401, 0});
  std::vector<double> u(10000);
  for (auto& v : u) v = rng.uniform();
  const auto cdf = empirical_cdf(std::move(u));
  CHECK(cdf.percentile_05 > 0.04);
  CHECK(cdf.percentile_05 < 0.06);
}

TEST_CASE("active power fraction") {
  SystemConfig cfg;
  cfg.aps = 128;
  cfg.m_select = 10;
  CHECK(active_power_fraction(cfg, SchemeKind::kOas, PowerMode::kPowerSaving) ==
        0.078125);  // exact: 10/128
  CHECK(1.0 - active_power_fraction(cfg, SchemeKind::kOas,
                                    PowerMode::kPowerSaving) ==
        0.921875);  // 92.19% saving
  CHECK(active_power_fraction(cfg, SchemeKind::kOas,
                              PowerMode::kEqualTotalPower) == 1.0);
  CHECK(active_power_fraction(cfg, SchemeKind::kFullAp,
                              PowerMode::kPowerSaving) == 1.0);
  cfg.m_select = cfg.aps;
  CHECK(active_power_fraction(cfg, SchemeKind::kOas, PowerMode::kPowerSaving) ==
        1.0);  // no saving without selection
}

TEST_CASE("curve naming") {
  SchemeCurve c;
  c.scheme = SchemeKind::kFullAp;
  CHECK(c.name() == "full_ap");
  c.scheme = SchemeKind::kOasDp;
  c.mode = PowerMode::kEqualTotalPower;
  CHECK(c.name() == "oas_dp_equal_total_power");
}

TEST_CASE("run_experiment is deterministic and thread-count independent") {
  SystemConfig cfg = small_config();
  cfg.threads = 1;
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  cfg.threads = 4;
  const auto c = run_experiment(cfg);
  REQUIRE(a.size() == 5);  // full_ap + 2x oas + 2x oas_dp
  REQUIRE(b.size() == a.size());
  REQUIRE(c.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name() == b[i].name());
    REQUIRE(a[i].cdf.sorted.size() == b[i].cdf.sorted.size());
    CHECK(a[i].cdf.sorted == b[i].cdf.sorted);  // bit identical
    CHECK(a[i].cdf.sorted == c[i].cdf.sorted);
  }
}

TEST_CASE("different seeds give different samples") {
  SystemConfig cfg = small_config();
  const auto a = run_experiment(cfg);
  cfg.seed = 78;
  const auto b = run_experiment(cfg);
  CHECK(a[0].cdf.sorted != b[0].cdf.sorted);
}

TEST_CASE("sample pool sizes follow the sampling unit") {
  SystemConfig cfg = small_config();
  const auto curves = run_experiment(cfg);
  const auto cdfs = by_name(curves);
  const std::size_t users_drops = 5 * 8;
  CHECK(cdfs.at("full_ap").count() == users_drops);
  CHECK(cdfs.at("oas_power_saving").count() == users_drops);
  CHECK(cdfs.at("oas_dp_power_saving").count() == users_drops * 6);

  SystemConfig per_sub = cfg;
  per_sub.sample_unit = SampleUnit::kPerSubcarrier;
  const auto curves2 = run_experiment(per_sub);
  const auto cdfs2 = by_name(curves2);
  // all 60 subcarriers are allocated, every realization contributes each
  CHECK(cdfs2.at("oas_dp_power_saving").count() ==
        static_cast<std::size_t>(60 * 6 * 8));
  // statistical schemes are unaffected by the sampling unit
  CHECK(cdfs2.at("oas_power_saving").sorted == cdfs.at("oas_power_saving").sorted);
}

TEST_CASE("CDF sanity: sorted samples, ordered percentiles") {
  const auto curves = run_experiment(small_config());
  for (const auto& c : curves) {
    CHECK(std::is_sorted(c.cdf.sorted.begin(), c.cdf.sorted.end()));
    CHECK(c.cdf.percentile_05 <= c.cdf.percentile_50);
    CHECK(c.cdf.percentile_50 <= percentile(c.cdf.sorted, 0.95));
    CHECK(c.cdf.sorted.front() >= 0.0);
  }
}

TEST_CASE("frequency-flat profile: per-subcarrier SE identical across the band") {
  // A single-tap profile makes every subcarrier response identical; with the
  // estimation noise pushed to the floor the per-subcarrier SE of one
  // realization collapses to a single value.
  SystemConfig cfg = small_config();
  cfg.tap_profile = "single_tap";
  cfg.users = 1;  // one user holds all 60 subcarriers
  cfg.drops = 2;
  cfg.realizations = 3;
  cfg.noise_density_dbm_hz = -320.0;
  cfg.sample_unit = SampleUnit::kPerSubcarrier;
  cfg.schemes = {SchemeKind::kOasDp};
  cfg.power_modes = {PowerMode::kPowerSaving};
  const auto raw = run_experiment_raw(cfg);
  REQUIRE(raw.size() == 1);
  // drop-major pool, 60 consecutive samples per realization
  const auto& s = raw[0].samples;
  REQUIRE(s.size() == 60u * 3u * 2u);
  for (std::size_t g = 0; g < s.size(); g += 60) {
    const auto [lo, hi] = std::minmax_element(s.begin() + g, s.begin() + g + 60);
    CHECK(*hi - *lo <= 1e-6 * std::abs(*hi));
  }
}

TEST_CASE("scheme orderings on drop means") {
  SystemConfig cfg = small_config();
  cfg.drops = 40;
  cfg.realizations = 8;
  const auto curves = run_experiment(cfg);
  const auto cdfs = by_name(curves);
  const double full = cdfs.at("full_ap").mean;
  const double oas_ps = cdfs.at("oas_power_saving").mean;
  const double oas_etp = cdfs.at("oas_equal_total_power").mean;
  const double dp_ps = cdfs.at("oas_dp_power_saving").mean;
  const double dp_etp = cdfs.at("oas_dp_equal_total_power").mean;
  CHECK(full > oas_ps);       // deactivating APs costs SE at equal per-AP power
  CHECK(oas_etp > oas_ps);    // strictly better noise term per sample
  CHECK(dp_etp > dp_ps);
  CHECK(dp_ps > oas_ps);      // coherent detection dominates statistical CSI
  CHECK(dp_etp > oas_etp);
}

TEST_CASE("K-invariance of the per-user OAS distribution (reduced)") {
  SystemConfig base = small_config();
  base.schemes = {SchemeKind::kOas};
  base.power_modes = {PowerMode::kPowerSaving};
  base.subcarriers = 120;
  base.sample_rate_hz = 3e6;

  auto samples_for = [&](int users, int drops, std::uint64_t seed) {
    SystemConfig cfg = base;
    cfg.users = users;
    cfg.drops = drops;
    cfg.seed = seed;
    return run_experiment(cfg)[0].cdf.sorted;
  };
  const auto k1 = samples_for(1, 1200, 5);
  const auto k6 = samples_for(6, 200, 6);
  CHECK(teststat::ks_two_sample(k1, k6) > 0.01);
}

TEST_CASE("invalid cyclic prefix is rejected before any drop runs") {
  SystemConfig cfg = small_config();
  cfg.cp_length = 2;  // ETU span at 3 MHz is 16 samples
  CHECK_THROWS_AS((void)run_experiment(cfg), ConfigError);
}
