#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "cfmimo/config.hpp"
#include "cfmimo/matrix.hpp"
#include "cfmimo/ofdm.hpp"
#include "cfmimo/rng.hpp"
#include "cfmimo/tap_profile.hpp"

namespace cfmimo::chan {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Geometry {
  double side_m = 0.0;
  std::vector<Point> aps;
  std::vector<Point> users;
  double h_ap_m = 0.0;
  double h_ue_m = 0.0;
  bool wrap_around = true;
};

// AP-to-user distance in meters, torus metric when wrap_around is set.
double link_distance_m(const Geometry& g, std::size_t ap, std::size_t user);

// Fixed part of the COST-Hata path loss in dB; f_c in MHz, heights in meters.
double cost_hata_constant(double fc_mhz, double h_ap_m, double h_ue_m);

// Three-slope path loss in dB (a gain, hence negative). Distances in km.
double path_loss_db(double d_km, double l_db, double d0_km = 0.01,
                    double d1_km = 0.05);

// Per-drop large-scale state: path loss, shadowing and the resulting
// linear gain matrix B with beta_mk = 10^((PL_mk + X_mk)/10).
struct LargeScale {
  Matrix<double> pl_db;
  Matrix<double> shadow_db;
  Matrix<double> beta;
};

struct Drop {
  std::uint64_t index = 0;
  Geometry geometry;
  LargeScale large_scale;
};

// Draws one network realization. Deterministic in (config.seed, drop_index);
// drops with distinct indices are independent and may be generated
// concurrently.
Drop generate_drop(const SystemConfig& config, std::uint64_t drop_index);

// Unit-power small-scale tap gains: tap l ~ CN(0, variance_l).
ofdm::cvec draw_small_scale(const SampledTaps& taps, Rng& rng);

// Tap vector including the large-scale scaling sqrt(beta).
struct TapChannel {
  ofdm::cvec gains;  // aligned with taps.index
  double beta = 0.0;
};

TapChannel draw_tap_channel(const SampledTaps& taps, double beta, Rng& rng);

// Full N-point frequency response via DFT of the zero-padded tap vector.
struct FrequencyChannel {
  ofdm::cvec response;
  double beta = 0.0;
};

FrequencyChannel frequency_response(const TapChannel& ch,
                                    const SampledTaps& taps,
                                    const ofdm::DftPlan& plan);

// Direct evaluation on a subcarrier subset:
//   g~[n] = sum_l gains[l] * exp(-2*pi*i*n*index[l]/N).
// Agrees with the DFT route to numerical tolerance; used on the hot path
// where only a user's assigned subcarriers are needed.
ofdm::cvec response_at(std::span<const std::complex<double>> gains,
                       const SampledTaps& taps,
                       std::span<const int> subcarriers, std::size_t n_fft);

}  // namespace cfmimo::chan
