#pragma once

// Small statistics helpers for the test suites: moments and
// Kolmogorov-Smirnov tests with the asymptotic p-value.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

namespace teststat {

inline double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double variance(std::span<const double> v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

// Sample variance of complex samples around zero mean, E|z|^2.
inline double cvariance(std::span<const std::complex<double>> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s / static_cast<double>(v.size());
}

// Re E[a conj(b)] around zero mean.
inline double ccovariance(std::span<const std::complex<double>> a,
                          std::span<const std::complex<double>> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += (a[i] * std::conj(b[i])).real();
  }
  return s / static_cast<double>(a.size());
}

// Kolmogorov distribution tail Q(lambda) = 2 sum_k (-1)^{k-1} exp(-2 k^2 l^2).
inline double kolmogorov_q(double lambda) {
  if (lambda < 1e-10) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-12) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

// One-sample KS p-value against a CDF given as a callable.
template <typename Cdf>
double ks_test(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
  }
  const double sn = std::sqrt(n);
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

// Two-sample KS p-value.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    const double fa = static_cast<double>(i) / static_cast<double>(a.size());
    const double fb = static_cast<double>(j) / static_cast<double>(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  const double ne = static_cast<double>(a.size()) * static_cast<double>(b.size()) /
                    static_cast<double>(a.size() + b.size());
  const double sn = std::sqrt(ne);
  return kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
}

// Welch-style z statistic for a mean difference of paired samples.
inline double paired_t(std::span<const double> diff) {
  const double m = mean(diff);
  const double sd = std::sqrt(variance(diff));
  return m / (sd / std::sqrt(static_cast<double>(diff.size())));
}

}  // namespace teststat
