#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cfmimo/matrix.hpp"

namespace cfmimo::scheme {

// Per-user SINR of conjugate beamforming with K co-scheduled users on one
// subcarrier and statistical CSI at the users:
//
//   gamma_k = (sum_m sqrt(eta_mk) alpha_mk)^2 /
//             (sum_m beta_mk sum_k' eta_mk' alpha_mk' + 1/gamma_t)
//
// Multi-user benchmark; the orthogonal allocation of the simulated system
// makes K = 1 the operating point.
std::vector<double> sinr_full_ap_multiuser(const Matrix<double>& alpha,
                                           const Matrix<double>& beta,
                                           const Matrix<double>& eta,
                                           double gamma_t);

// K = 1 specialization, all M APs serving:
//   gamma = (sum_m sqrt(eta_m) alpha_m)^2 / (sum_m beta_m eta_m alpha_m + 1/gamma_t)
double sinr_full_ap(std::span<const double> alpha, std::span<const double> beta,
                    std::span<const double> eta, double gamma_t);

// Same expression restricted to the selected AP set; statistical CSI.
double sinr_oas(std::span<const double> alpha, std::span<const double> beta,
                std::span<const double> eta, double gamma_t);

// Coherent detection with downlink pilots: the numerator uses realized
// estimates, the denominator only statistics:
//
//   gamma = (sum_m sqrt(eta_m) |g_hat_m|^2)^2 /
//           (sum_m eta_m (beta_m - alpha_m) alpha_m + 1/gamma_t)
double sinr_oas_dp(std::span<const std::complex<double>> g_hat,
                   std::span<const double> alpha, std::span<const double> beta,
                   std::span<const double> eta, double gamma_t);

// Spectral efficiency lower bound log2(1 + gamma) in bit/s/Hz.
double se(double gamma);

}  // namespace cfmimo::scheme
