#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace cfmimo {

// splitmix64 step, used for seeding and stream-key derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// xoshiro256++ with an explicit Box-Muller normal generator.
//
// The standard-library distributions are implementation-defined, which would
// make stored expected values compiler-dependent; everything here is pinned.
// Independent streams are derived from a list of integer ids (master seed,
// drop index, link index, ...) so that any subset of the simulation can be
// generated concurrently with results independent of scheduling order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }

  // Derives a stream keyed by the given ids. Different key tuples give
  // statistically independent streams.
  static Rng stream(std::initializer_list<std::uint64_t> key) {
    std::uint64_t h = 0x6a09e667f3bcc909ull;
    for (std::uint64_t id : key) {
      std::uint64_t s = h ^ id;
      h = splitmix64(s);
    }
    return Rng(h);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the second variate is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

  // Circularly-symmetric complex Gaussian CN(0, variance).
  std::complex<double> cnormal(double variance) {
    const double s = std::sqrt(variance * 0.5);
    return {s * normal(), s * normal()};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cfmimo
