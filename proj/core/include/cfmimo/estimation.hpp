#pragma once

#include <complex>

#include "cfmimo/rng.hpp"

namespace cfmimo::est {

// MMSE estimate variance alpha = P_u * beta^2 / (P_u * beta + sigma2).
// Equals beta when sigma2 = 0 and 0 when beta = 0.
double mmse_alpha(double beta, double p_u, double sigma2);

struct Split {
  std::complex<double> estimate;  // g_hat ~ CN(0, alpha)
  std::complex<double> error;     // xi ~ CN(0, beta - alpha)
};

// Splits a channel realization g ~ CN(0, beta) into an MMSE estimate and an
// uncorrelated error with estimate + error == g exactly. Conditional-Gaussian
// construction: g_hat = (alpha/beta) g + sqrt(alpha (beta - alpha) / beta) w,
// w ~ CN(0, 1). Degenerate cases: beta = 0 -> (0, 0); alpha = beta -> (g, 0).
Split split_estimate(std::complex<double> g, double alpha, double beta,
                     Rng& rng);

}  // namespace cfmimo::est
