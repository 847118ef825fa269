#include "cfmimo/config.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace cfmimo {

namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

[[noreturn]] void fail(const std::string& src, int line, const std::string& msg) {
  throw ConfigError(src + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& src, int line, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    fail(src, line, "expected a number, got '" + v + "'");
  }
}

std::int64_t parse_int(const std::string& src, int line, const std::string& v) {
  try {
    std::size_t pos = 0;
    std::int64_t d = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    fail(src, line, "expected an integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& src, int line, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(src, line, "expected a boolean, got '" + v + "'");
}

SchemeKind parse_scheme(const std::string& src, int line, const std::string& v) {
  if (v == "full_ap") return SchemeKind::kFullAp;
  if (v == "oas") return SchemeKind::kOas;
  if (v == "oas_dp") return SchemeKind::kOasDp;
  fail(src, line, "unknown scheme '" + v + "' (full_ap, oas, oas_dp)");
}

PowerMode parse_mode(const std::string& src, int line, const std::string& v) {
  if (v == "power_saving") return PowerMode::kPowerSaving;
  if (v == "equal_total_power") return PowerMode::kEqualTotalPower;
  fail(src, line,
       "unknown power mode '" + v + "' (power_saving, equal_total_power)");
}

}  // namespace

std::string to_string(SchemeKind s) {
  switch (s) {
    case SchemeKind::kFullAp: return "full_ap";
    case SchemeKind::kOas: return "oas";
    case SchemeKind::kOasDp: return "oas_dp";
  }
  return "?";
}

std::string to_string(PowerMode m) {
  return m == PowerMode::kPowerSaving ? "power_saving" : "equal_total_power";
}

std::string to_string(NoiseBandwidthMode m) {
  return m == NoiseBandwidthMode::kSubcarrier ? "subcarrier" : "full_band";
}

std::string to_string(EtaMode m) {
  return m == EtaMode::kPerSubcarrier ? "per_subcarrier" : "global";
}

std::string to_string(SampleUnit u) {
  return u == SampleUnit::kPerUser ? "per_user" : "per_subcarrier";
}

double SystemConfig::noise_power_w() const {
  const double bw = noise_bandwidth == NoiseBandwidthMode::kSubcarrier
                        ? subcarrier_spacing_hz
                        : bandwidth_hz;
  const double dbm = noise_density_dbm_hz + noise_figure_db + 10.0 * std::log10(bw);
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double SystemConfig::gamma_t() const { return p_downlink_w / noise_power_w(); }

double SystemConfig::sample_rate() const {
  return sample_rate_hz > 0.0 ? sample_rate_hz
                              : subcarriers * subcarrier_spacing_hz;
}

void SystemConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid config: " + what);
  };
  require(aps >= 1, "aps must be >= 1");
  require(users >= 1, "users must be >= 1");
  require(subcarriers >= 1, "subcarriers must be >= 1");
  require(users <= subcarriers, "users must not exceed subcarriers");
  require(subcarrier_spacing_hz > 0, "subcarrier_spacing_hz must be positive");
  require(carrier_mhz > 0, "carrier_mhz must be positive");
  require(bandwidth_hz > 0, "bandwidth_hz must be positive");
  require(area_side_m > 0, "area_side_m must be positive");
  require(h_ap_m > 0 && h_ue_m > 0, "antenna heights must be positive");
  require(shadowing_std_db >= 0, "shadowing_std_db must be non-negative");
  require(d0_km > 0 && d1_km > d0_km, "breakpoints must satisfy 0 < d0 < d1");
  require(p_downlink_w > 0 && p_uplink_w > 0, "powers must be positive");
  require(m_select >= 1 && m_select <= aps,
          "m_select must be in [1, aps]");
  require(drops >= 1, "drops must be >= 1");
  require(realizations >= 1, "realizations must be >= 1");
  require(cp_length >= 0, "cp_length must be non-negative");
  require(threads >= 0, "threads must be non-negative");
  require(!schemes.empty(), "schemes must not be empty");
  require(!power_modes.empty(), "power_modes must not be empty");
  if (!rate_weights.empty()) {
    require(static_cast<int>(rate_weights.size()) == users,
            "rate_weights must have one entry per user");
    for (double w : rate_weights) require(w >= 0, "rate_weights must be >= 0");
  }
}

SystemConfig parse_config_text(std::string_view text,
                               const std::string& source_name) {
  SystemConfig cfg;
  using Setter = std::function<void(int, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"aps", [&](int l, const std::string& v) {
         cfg.aps = static_cast<int>(parse_int(source_name, l, v)); }},
      {"users", [&](int l, const std::string& v) {
         cfg.users = static_cast<int>(parse_int(source_name, l, v)); }},
      {"subcarriers", [&](int l, const std::string& v) {
         cfg.subcarriers = static_cast<int>(parse_int(source_name, l, v)); }},
      {"subcarrier_spacing_hz", [&](int l, const std::string& v) {
         cfg.subcarrier_spacing_hz = parse_double(source_name, l, v); }},
      {"carrier_mhz", [&](int l, const std::string& v) {
         cfg.carrier_mhz = parse_double(source_name, l, v); }},
      {"bandwidth_hz", [&](int l, const std::string& v) {
         cfg.bandwidth_hz = parse_double(source_name, l, v); }},
      {"area_side_m", [&](int l, const std::string& v) {
         cfg.area_side_m = parse_double(source_name, l, v); }},
      {"h_ap_m", [&](int l, const std::string& v) {
         cfg.h_ap_m = parse_double(source_name, l, v); }},
      {"h_ue_m", [&](int l, const std::string& v) {
         cfg.h_ue_m = parse_double(source_name, l, v); }},
      {"shadowing_std_db", [&](int l, const std::string& v) {
         cfg.shadowing_std_db = parse_double(source_name, l, v); }},
      {"d0_km", [&](int l, const std::string& v) {
         cfg.d0_km = parse_double(source_name, l, v); }},
      {"d1_km", [&](int l, const std::string& v) {
         cfg.d1_km = parse_double(source_name, l, v); }},
      {"p_downlink_w", [&](int l, const std::string& v) {
         cfg.p_downlink_w = parse_double(source_name, l, v); }},
      {"p_uplink_w", [&](int l, const std::string& v) {
         cfg.p_uplink_w = parse_double(source_name, l, v); }},
      {"noise_density_dbm_hz", [&](int l, const std::string& v) {
         cfg.noise_density_dbm_hz = parse_double(source_name, l, v); }},
      {"noise_figure_db", [&](int l, const std::string& v) {
         cfg.noise_figure_db = parse_double(source_name, l, v); }},
      {"noise_bandwidth", [&](int l, const std::string& v) {
         if (v == "subcarrier") cfg.noise_bandwidth = NoiseBandwidthMode::kSubcarrier;
         else if (v == "full_band") cfg.noise_bandwidth = NoiseBandwidthMode::kFullBand;
         else fail(source_name, l, "noise_bandwidth must be subcarrier or full_band"); }},
      {"m_select", [&](int l, const std::string& v) {
         cfg.m_select = static_cast<int>(parse_int(source_name, l, v)); }},
      {"eta_mode", [&](int l, const std::string& v) {
         if (v == "per_subcarrier") cfg.eta_mode = EtaMode::kPerSubcarrier;
         else if (v == "global") cfg.eta_mode = EtaMode::kGlobal;
         else fail(source_name, l, "eta_mode must be per_subcarrier or global"); }},
      {"sample_unit", [&](int l, const std::string& v) {
         if (v == "per_user") cfg.sample_unit = SampleUnit::kPerUser;
         else if (v == "per_subcarrier") cfg.sample_unit = SampleUnit::kPerSubcarrier;
         else fail(source_name, l, "sample_unit must be per_user or per_subcarrier"); }},
      {"schemes", [&](int l, const std::string& v) {
         cfg.schemes.clear();
         for (const auto& s : split_list(v))
           cfg.schemes.push_back(parse_scheme(source_name, l, s)); }},
      {"power_modes", [&](int l, const std::string& v) {
         cfg.power_modes.clear();
         for (const auto& s : split_list(v))
           cfg.power_modes.push_back(parse_mode(source_name, l, s)); }},
      {"drops", [&](int l, const std::string& v) {
         cfg.drops = static_cast<int>(parse_int(source_name, l, v)); }},
      {"realizations", [&](int l, const std::string& v) {
         cfg.realizations = static_cast<int>(parse_int(source_name, l, v)); }},
      {"seed", [&](int l, const std::string& v) {
         cfg.seed = static_cast<std::uint64_t>(parse_int(source_name, l, v)); }},
      {"wrap_around", [&](int l, const std::string& v) {
         cfg.wrap_around = parse_bool(source_name, l, v); }},
      {"tap_profile", [&](int, const std::string& v) { cfg.tap_profile = v; }},
      {"sample_rate_hz", [&](int l, const std::string& v) {
         cfg.sample_rate_hz = parse_double(source_name, l, v); }},
      {"cp_length", [&](int l, const std::string& v) {
         cfg.cp_length = static_cast<int>(parse_int(source_name, l, v)); }},
      {"threads", [&](int l, const std::string& v) {
         cfg.threads = static_cast<int>(parse_int(source_name, l, v)); }},
      {"rate_weights", [&](int l, const std::string& v) {
         cfg.rate_weights.clear();
         for (const auto& s : split_list(v))
           cfg.rate_weights.push_back(parse_double(source_name, l, s)); }},
  };

  std::stringstream ss{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(ss, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string stripped = trim(raw);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      fail(source_name, line, "expected 'key = value', got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) fail(source_name, line, "missing key before '='");
    const auto it = setters.find(key);
    if (it == setters.end()) fail(source_name, line, "unknown key '" + key + "'");
    it->second(line, value);
  }
  cfg.validate();
  return cfg;
}

SystemConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

// Shortest decimal form that parses back to the same double.
static std::string fmt_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_config(std::ostream& os, const SystemConfig& cfg) {
  auto list = [](const auto& items, auto name_of) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ", ";
      out += name_of(items[i]);
    }
    return out;
  };
  os << "aps = " << cfg.aps << '\n'
     << "users = " << cfg.users << '\n'
     << "subcarriers = " << cfg.subcarriers << '\n'
     << "subcarrier_spacing_hz = " << fmt_double(cfg.subcarrier_spacing_hz) << '\n'
     << "carrier_mhz = " << fmt_double(cfg.carrier_mhz) << '\n'
     << "bandwidth_hz = " << fmt_double(cfg.bandwidth_hz) << '\n'
     << "area_side_m = " << fmt_double(cfg.area_side_m) << '\n'
     << "h_ap_m = " << fmt_double(cfg.h_ap_m) << '\n'
     << "h_ue_m = " << fmt_double(cfg.h_ue_m) << '\n'
     << "shadowing_std_db = " << fmt_double(cfg.shadowing_std_db) << '\n'
     << "d0_km = " << fmt_double(cfg.d0_km) << '\n'
     << "d1_km = " << fmt_double(cfg.d1_km) << '\n'
     << "p_downlink_w = " << fmt_double(cfg.p_downlink_w) << '\n'
     << "p_uplink_w = " << fmt_double(cfg.p_uplink_w) << '\n'
     << "noise_density_dbm_hz = " << fmt_double(cfg.noise_density_dbm_hz) << '\n'
     << "noise_figure_db = " << fmt_double(cfg.noise_figure_db) << '\n'
     << "noise_bandwidth = " << to_string(cfg.noise_bandwidth) << '\n'
     << "m_select = " << cfg.m_select << '\n'
     << "eta_mode = " << to_string(cfg.eta_mode) << '\n'
     << "sample_unit = " << to_string(cfg.sample_unit) << '\n'
     << "schemes = "
     << list(cfg.schemes, [](SchemeKind s) { return to_string(s); }) << '\n'
     << "power_modes = "
     << list(cfg.power_modes, [](PowerMode m) { return to_string(m); }) << '\n'
     << "drops = " << cfg.drops << '\n'
     << "realizations = " << cfg.realizations << '\n'
     << "seed = " << cfg.seed << '\n'
     << "wrap_around = " << (cfg.wrap_around ? "true" : "false") << '\n'
     << "tap_profile = " << cfg.tap_profile << '\n'
     << "sample_rate_hz = " << fmt_double(cfg.sample_rate_hz) << '\n'
     << "cp_length = " << cfg.cp_length << '\n'
     << "threads = " << cfg.threads << '\n';
  if (!cfg.rate_weights.empty()) {
    os << "rate_weights = "
       << list(cfg.rate_weights, [](double w) { return fmt_double(w); })
       << '\n';
  }
}

}  // namespace cfmimo
