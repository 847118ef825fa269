#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cfmimo::chan {

// Power-delay profile of the small-scale channel. Delays in seconds,
// relative tap powers in dB; linear powers are normalized to sum to one.
struct TapProfile {
  std::vector<double> delay_s;
  std::vector<double> power_db;

  // 3GPP Extended Typical Urban: 9 taps, delays 0..5 us,
  // relative powers {-1,-1,-1,0,0,0,-3,-5,-7} dB.
  static TapProfile etu();

  // Plain-text file, one "delay_seconds power_dB" pair per line,
  // '#' starts a comment.
  static TapProfile load(const std::string& path);

  // Normalized linear powers (sum = 1). Throws if the profile is empty or
  // delays are not non-decreasing.
  std::vector<double> linear_powers() const;
};

// Profile mapped onto the sample grid: index = round(delay * sample_rate).
// Taps that collide on one index have their powers summed. Throws if the
// largest index reaches n_fft.
struct SampledTaps {
  std::vector<std::size_t> index;  // strictly increasing
  std::vector<double> variance;    // per-index linear power, sums to 1

  // Number of samples covered, i.e. largest index + 1. This is the filter
  // length L that the cyclic prefix must cover (L - 1 <= cp_length).
  std::size_t span() const { return index.empty() ? 0 : index.back() + 1; }
};

SampledTaps sample_taps(const TapProfile& profile, double sample_rate_hz,
                        std::size_t n_fft);

// Resolves a built-in profile name ("etu", "single_tap") or loads a file.
TapProfile resolve_profile(const std::string& name_or_path);

}  // namespace cfmimo::chan
