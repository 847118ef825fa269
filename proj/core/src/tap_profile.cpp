#include "cfmimo/tap_profile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cfmimo/config.hpp"

namespace cfmimo::chan {

TapProfile TapProfile::etu() {
  return {{0.0, 0.05e-6, 0.12e-6, 0.2e-6, 0.23e-6, 0.5e-6, 1.6e-6, 2.3e-6,
           5.0e-6},
          {-1.0, -1.0, -1.0, 0.0, 0.0, 0.0, -3.0, -5.0, -7.0}};
}

TapProfile TapProfile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tap profile '" + path + "'");
  TapProfile p;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    double delay, power;
    if (!(ss >> delay)) continue;  // blank line
    if (!(ss >> power)) {
      throw ConfigError(path + ":" + std::to_string(line) +
                        ": expected 'delay_seconds power_dB'");
    }
    std::string rest;
    if (ss >> rest) {
      throw ConfigError(path + ":" + std::to_string(line) +
                        ": trailing content '" + rest + "'");
    }
    p.delay_s.push_back(delay);
    p.power_db.push_back(power);
  }
  if (p.delay_s.empty()) {
    throw ConfigError("tap profile '" + path + "' contains no taps");
  }
  return p;
}

std::vector<double> TapProfile::linear_powers() const {
  if (delay_s.empty() || delay_s.size() != power_db.size()) {
    throw std::invalid_argument("tap profile must contain at least one tap");
  }
  double sum = 0.0;
  std::vector<double> lin(delay_s.size());
  for (std::size_t i = 0; i < lin.size(); ++i) {
    if (delay_s[i] < 0.0) {
      throw std::invalid_argument("tap delays must be non-negative");
    }
    if (i > 0 && delay_s[i] < delay_s[i - 1]) {
      throw std::invalid_argument("tap delays must be non-decreasing");
    }
    lin[i] = std::pow(10.0, power_db[i] / 10.0);
    sum += lin[i];
  }
  for (auto& v : lin) v /= sum;
  return lin;
}

SampledTaps sample_taps(const TapProfile& profile, double sample_rate_hz,
                        std::size_t n_fft) {
  if (sample_rate_hz <= 0.0) {
    throw std::invalid_argument("sample rate must be positive");
  }
  const auto lin = profile.linear_powers();
  SampledTaps out;
  for (std::size_t i = 0; i < lin.size(); ++i) {
    const auto idx = static_cast<std::size_t>(
        std::llround(profile.delay_s[i] * sample_rate_hz));
    if (idx >= n_fft) {
      throw ConfigError("tap delay " + std::to_string(profile.delay_s[i]) +
                        " s maps to sample " + std::to_string(idx) +
                        " beyond the FFT size " + std::to_string(n_fft));
    }
    if (!out.index.empty() && out.index.back() == idx) {
      out.variance.back() += lin[i];  // colliding taps merge
    } else {
      out.index.push_back(idx);
      out.variance.push_back(lin[i]);
    }
  }
  return out;
}

TapProfile resolve_profile(const std::string& name_or_path) {
  if (name_or_path == "etu") return TapProfile::etu();
  if (name_or_path == "single_tap") return {{0.0}, {0.0}};
  return TapProfile::load(name_or_path);
}

}  // namespace cfmimo::chan
