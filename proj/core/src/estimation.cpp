#include "cfmimo/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfmimo::est {

double mmse_alpha(double beta, double p_u, double sigma2) {
  if (beta < 0.0 || p_u <= 0.0 || sigma2 < 0.0) {
    throw std::domain_error("mmse_alpha: beta, sigma2 >= 0 and p_u > 0 required");
  }
  if (beta == 0.0) return 0.0;
  if (sigma2 == 0.0) return beta;
  // the quotient can land one ulp above beta; the invariant is alpha <= beta
  return std::min(beta, p_u * beta * beta / (p_u * beta + sigma2));
}

Split split_estimate(std::complex<double> g, double alpha, double beta,
                     Rng& rng) {
  if (alpha < 0.0 || beta < 0.0 || alpha > beta) {
    throw std::domain_error("split_estimate: need 0 <= alpha <= beta");
  }
  if (beta == 0.0) return {{0.0, 0.0}, {0.0, 0.0}};
  if (alpha == beta) return {g, {0.0, 0.0}};
  const std::complex<double> w = rng.cnormal(1.0);
  const std::complex<double> g_hat =
      (alpha / beta) * g + std::sqrt(alpha * (beta - alpha) / beta) * w;
  return {g_hat, g - g_hat};
}

}  // namespace cfmimo::est
