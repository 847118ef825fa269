#include "cfmimo/schemes.hpp"

#include <cmath>
#include <stdexcept>

namespace cfmimo::scheme {

namespace {

void check_gamma_t(double gamma_t) {
  if (!(gamma_t > 0.0)) {
    throw std::domain_error("sinr: transmit SNR gamma_t must be positive");
  }
}

}  // namespace

std::vector<double> sinr_full_ap_multiuser(const Matrix<double>& alpha,
                                           const Matrix<double>& beta,
                                           const Matrix<double>& eta,
                                           double gamma_t) {
  if (!alpha.same_shape(beta) || !alpha.same_shape(eta)) {
    throw std::invalid_argument("sinr_full_ap_multiuser: shape mismatch");
  }
  check_gamma_t(gamma_t);
  const std::size_t m = alpha.rows();
  const std::size_t k = alpha.cols();

  // sum_k' eta_mk' alpha_mk' per AP, shared by every user's denominator
  std::vector<double> load(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) load[i] += eta(i, j) * alpha(i, j);
  }

  std::vector<double> out(k);
  for (std::size_t j = 0; j < k; ++j) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      num += std::sqrt(eta(i, j)) * alpha(i, j);
      den += beta(i, j) * load[i];
    }
    out[j] = num * num / (den + 1.0 / gamma_t);
  }
  return out;
}

double sinr_full_ap(std::span<const double> alpha, std::span<const double> beta,
                    std::span<const double> eta, double gamma_t) {
  if (alpha.size() != beta.size() || alpha.size() != eta.size()) {
    throw std::invalid_argument("sinr_full_ap: length mismatch");
  }
  if (alpha.empty()) throw std::domain_error("sinr_full_ap: no APs");
  check_gamma_t(gamma_t);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    num += std::sqrt(eta[i]) * alpha[i];
    den += beta[i] * (eta[i] * alpha[i]);  // grouping matches the K=1 benchmark
  }
  return num * num / (den + 1.0 / gamma_t);
}

double sinr_oas(std::span<const double> alpha, std::span<const double> beta,
                std::span<const double> eta, double gamma_t) {
  if (alpha.empty()) throw std::domain_error("sinr_oas: empty AP selection");
  return sinr_full_ap(alpha, beta, eta, gamma_t);
}

double sinr_oas_dp(std::span<const std::complex<double>> g_hat,
                   std::span<const double> alpha, std::span<const double> beta,
                   std::span<const double> eta, double gamma_t) {
  if (g_hat.empty()) throw std::domain_error("sinr_oas_dp: empty AP selection");
  if (g_hat.size() != alpha.size() || alpha.size() != beta.size() ||
      alpha.size() != eta.size()) {
    throw std::invalid_argument("sinr_oas_dp: length mismatch");
  }
  check_gamma_t(gamma_t);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    num += std::sqrt(eta[i]) * std::norm(g_hat[i]);
    den += eta[i] * (beta[i] - alpha[i]) * alpha[i];
  }
  return num * num / (den + 1.0 / gamma_t);
}

double se(double gamma) {
  if (gamma < 0.0) throw std::domain_error("se: negative SINR");
  return std::log2(1.0 + gamma);
}

}  // namespace cfmimo::scheme
