#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cfmimo {

enum class SchemeKind { kFullAp, kOas, kOasDp };

// PowerSaving keeps the per-AP budget of the full-AP baseline; EqualTotalPower
// scales each selected AP's transmit SNR by M/M_s so the total radiated power
// matches the full-AP case.
enum class PowerMode { kPowerSaving, kEqualTotalPower };

// Bandwidth over which the noise power (and hence gamma_t = P_d / sigma_z^2)
// is integrated: one subcarrier spacing, or the full signal band.
enum class NoiseBandwidthMode { kSubcarrier, kFullBand };

// Full-power coefficient eta: per subcarrier (one served user, eta = 1/alpha)
// or global per AP (eta_m = 1 / sum_k alpha_mk).
enum class EtaMode { kPerSubcarrier, kGlobal };

// CDF sample granularity for realization-based schemes: one sample per
// (user, drop, realization) averaged over the user's subcarriers, or one
// sample per (user, subcarrier, drop, realization).
enum class SampleUnit { kPerUser, kPerSubcarrier };

std::string to_string(SchemeKind s);
std::string to_string(PowerMode m);
std::string to_string(NoiseBandwidthMode m);
std::string to_string(EtaMode m);
std::string to_string(SampleUnit u);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All scalar parameters of one experiment. Defaults reproduce the reference
// network: 128 APs and 20 users on a 1 km square, 1200 subcarriers at 15 kHz,
// 1.9 GHz carrier, 8 dB shadowing, P_d = 0.2 W, P_u = 0.1 W, M_s = 10.
struct SystemConfig {
  int aps = 128;
  int users = 20;
  int subcarriers = 1200;
  double subcarrier_spacing_hz = 15e3;
  double carrier_mhz = 1900.0;
  double bandwidth_hz = 20e6;
  double area_side_m = 1000.0;
  double h_ap_m = 15.0;
  double h_ue_m = 1.65;
  double shadowing_std_db = 8.0;
  double d0_km = 0.01;
  double d1_km = 0.05;
  double p_downlink_w = 0.2;
  double p_uplink_w = 0.1;
  double noise_density_dbm_hz = -174.0;
  double noise_figure_db = 9.0;
  NoiseBandwidthMode noise_bandwidth = NoiseBandwidthMode::kSubcarrier;
  int m_select = 10;
  EtaMode eta_mode = EtaMode::kPerSubcarrier;
  SampleUnit sample_unit = SampleUnit::kPerUser;
  std::vector<SchemeKind> schemes = {SchemeKind::kFullAp, SchemeKind::kOas,
                                     SchemeKind::kOasDp};
  std::vector<PowerMode> power_modes = {PowerMode::kPowerSaving,
                                        PowerMode::kEqualTotalPower};
  int drops = 200;
  int realizations = 100;
  std::uint64_t seed = 1;
  bool wrap_around = true;
  std::string tap_profile = "etu";  // built-in name or path to a profile file
  double sample_rate_hz = 0.0;      // 0 = subcarriers * spacing
  int cp_length = 160;              // samples
  int threads = 0;                  // 0 = hardware concurrency
  std::vector<double> rate_weights; // empty = equal shares

  // Noise power sigma_z^2 in watts under the configured bandwidth mode.
  double noise_power_w() const;
  // Transmit SNR gamma_t = P_d / sigma_z^2.
  double gamma_t() const;
  double sample_rate() const;

  // Throws ConfigError naming the violated constraint.
  void validate() const;
};

// Line-oriented "key = value" file with '#' comments. Unknown keys and
// malformed lines raise ConfigError with the line number. Missing keys keep
// their defaults.
SystemConfig parse_config_text(std::string_view text,
                               const std::string& source_name = "<config>");
SystemConfig parse_config_file(const std::string& path);

// Writes the fully resolved configuration in the same key = value format,
// so the output parses back to an identical SystemConfig.
void write_config(std::ostream& os, const SystemConfig& cfg);

}  // namespace cfmimo
