#include "cfmimo/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cfmimo/streams.hpp"

namespace cfmimo::chan {

double link_distance_m(const Geometry& g, std::size_t ap, std::size_t user) {
  double dx = std::abs(g.aps[ap].x - g.users[user].x);
  double dy = std::abs(g.aps[ap].y - g.users[user].y);
  if (g.wrap_around) {
    dx = std::min(dx, g.side_m - dx);
    dy = std::min(dy, g.side_m - dy);
  }
  return std::hypot(dx, dy);
}

double cost_hata_constant(double fc_mhz, double h_ap_m, double h_ue_m) {
  if (fc_mhz <= 0.0 || h_ap_m <= 0.0 || h_ue_m <= 0.0) {
    throw std::domain_error("cost_hata_constant: inputs must be positive");
  }
  const double lf = std::log10(fc_mhz);
  return 46.3 + 33.9 * lf - 13.82 * std::log10(h_ap_m) -
         (1.1 * lf - 0.7) * h_ue_m + 1.56 * lf - 0.8;
}

double path_loss_db(double d_km, double l_db, double d0_km, double d1_km) {
  if (d_km < 0.0) throw std::domain_error("path_loss_db: negative distance");
  if (!(0.0 < d0_km && d0_km < d1_km)) {
    throw std::domain_error("path_loss_db: breakpoints must satisfy 0 < d0 < d1");
  }
  if (d_km > d1_km) return -l_db - 35.0 * std::log10(d_km);
  const double d = d_km > d0_km ? d_km : d0_km;  // near branch clamps at d0
  return -l_db - 10.0 * std::log10(std::pow(d1_km, 1.5) * d * d);
}

Drop generate_drop(const SystemConfig& config, std::uint64_t drop_index) {
  const std::size_t m = static_cast<std::size_t>(config.aps);
  const std::size_t k = static_cast<std::size_t>(config.users);

  Drop drop;
  drop.index = drop_index;
  drop.geometry.side_m = config.area_side_m;
  drop.geometry.h_ap_m = config.h_ap_m;
  drop.geometry.h_ue_m = config.h_ue_m;
  drop.geometry.wrap_around = config.wrap_around;

  Rng geom = Rng::stream({config.seed, kStreamGeometry, drop_index});
  drop.geometry.aps.resize(m);
  for (auto& p : drop.geometry.aps) {
    p.x = geom.uniform() * config.area_side_m;
    p.y = geom.uniform() * config.area_side_m;
  }
  drop.geometry.users.resize(k);
  for (auto& p : drop.geometry.users) {
    p.x = geom.uniform() * config.area_side_m;
    p.y = geom.uniform() * config.area_side_m;
  }

  const double l_db =
      cost_hata_constant(config.carrier_mhz, config.h_ap_m, config.h_ue_m);

  Rng shadow = Rng::stream({config.seed, kStreamShadowing, drop_index});
  drop.large_scale.pl_db = Matrix<double>(m, k);
  drop.large_scale.shadow_db = Matrix<double>(m, k);
  drop.large_scale.beta = Matrix<double>(m, k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double d_km = link_distance_m(drop.geometry, i, j) / 1000.0;
      const double pl = path_loss_db(d_km, l_db, config.d0_km, config.d1_km);
      const double x = config.shadowing_std_db * shadow.normal();
      drop.large_scale.pl_db(i, j) = pl;
      drop.large_scale.shadow_db(i, j) = x;
      drop.large_scale.beta(i, j) = std::pow(10.0, (pl + x) / 10.0);
    }
  }
  return drop;
}

ofdm::cvec draw_small_scale(const SampledTaps& taps, Rng& rng) {
  ofdm::cvec gains(taps.index.size());
  for (std::size_t l = 0; l < gains.size(); ++l) {
    gains[l] = rng.cnormal(taps.variance[l]);
  }
  return gains;
}

TapChannel draw_tap_channel(const SampledTaps& taps, double beta, Rng& rng) {
  TapChannel ch{draw_small_scale(taps, rng), beta};
  const double s = std::sqrt(beta);
  for (auto& g : ch.gains) g *= s;
  return ch;
}

FrequencyChannel frequency_response(const TapChannel& ch,
                                    const SampledTaps& taps,
                                    const ofdm::DftPlan& plan) {
  if (ch.gains.size() != taps.index.size()) {
    throw std::invalid_argument("frequency_response: gain/index mismatch");
  }
  if (taps.span() > plan.size()) {
    throw std::invalid_argument("frequency_response: taps exceed FFT size");
  }
  ofdm::cvec padded(plan.size(), {0.0, 0.0});
  for (std::size_t l = 0; l < ch.gains.size(); ++l) {
    padded[taps.index[l]] += ch.gains[l];
  }
  return {plan.dft(padded), ch.beta};
}

ofdm::cvec response_at(std::span<const std::complex<double>> gains,
                       const SampledTaps& taps,
                       std::span<const int> subcarriers, std::size_t n_fft) {
  if (gains.size() != taps.index.size()) {
    throw std::invalid_argument("response_at: gain/index mismatch");
  }
  ofdm::cvec out(subcarriers.size());
  const double unit = -2.0 * std::numbers::pi / static_cast<double>(n_fft);
  for (std::size_t s = 0; s < subcarriers.size(); ++s) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t l = 0; l < gains.size(); ++l) {
      const double arg =
          unit * static_cast<double>(subcarriers[s]) *
          static_cast<double>(taps.index[l]);
      acc += gains[l] * std::complex<double>{std::cos(arg), std::sin(arg)};
    }
    out[s] = acc;
  }
  return out;
}

}  // namespace cfmimo::chan
