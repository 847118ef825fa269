#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "cfmimo/rng.hpp"
#include "cfmimo/schemes.hpp"

using namespace cfmimo;
using namespace cfmimo::scheme;

namespace {

struct RandomLinks {
  std::vector<double> alpha, beta, eta;
};

RandomLinks random_links(std::size_t m, Rng& rng) {
  RandomLinks l;
  l.alpha.resize(m);
  l.beta.resize(m);
  l.eta.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    l.beta[i] = std::pow(10.0, -12.0 + 4.0 * rng.uniform());
    l.alpha[i] = l.beta[i] * rng.uniform();
    l.eta[i] = 1.0 / l.alpha[i] * rng.uniform();
  }
  return l;
}

}  // namespace

TEST_CASE("multi-user SINR, hand-evaluated 2x2 case") {
  // rational inputs with exact square roots; gamma evaluated by independent
  // fraction arithmetic beforehand
  Matrix<double> alpha(2, 2), beta(2, 2), eta(2, 2);
  alpha(0, 0) = 1.0 / 2; alpha(0, 1) = 1.0 / 4;
  alpha(1, 0) = 1.0 / 3; alpha(1, 1) = 1.0 / 5;
  beta(0, 0) = 1.0;      beta(0, 1) = 1.0 / 2;
  beta(1, 0) = 2.0 / 3;  beta(1, 1) = 2.0 / 5;
  eta(0, 0) = 1.0 / 4;   eta(0, 1) = 1.0 / 9;
  eta(1, 0) = 1.0 / 16;  eta(1, 1) = 1.0 / 25;
  const auto gamma = sinr_full_ap_multiuser(alpha, beta, eta, 10.0);
  REQUIRE(gamma.size() == 2);
  CHECK(gamma[0] == doctest::Approx(125.0 / 306.0).epsilon(1e-14));
  CHECK(gamma[1] == doctest::Approx(1369.0 / 16913.0).epsilon(1e-14));
}

TEST_CASE("multi-user SINR vanishes without estimated channels") {
  Matrix<double> alpha(3, 2, 0.0), beta(3, 2, 1e-9), eta(3, 2, 1.0);
  for (double g : sinr_full_ap_multiuser(alpha, beta, eta, 10.0)) CHECK(g == 0.0);
}

TEST_CASE("single-user SINR, hand-evaluated cases") {
  SUBCASE("alpha=beta=eta=1, gamma_t=10 gives 1/1.1") {
    const std::vector<double> one{1.0};
    CHECK(sinr_full_ap(one, one, one, 10.0) ==
          doctest::Approx(1.0 / 1.1).epsilon(1e-14));
  }
  SUBCASE("noise-free limit with perfect CSI and one AP is 1") {
    const std::vector<double> a{0.42}, b{0.42}, e{1.0 / 0.42};
    CHECK(sinr_full_ap(a, b, e, 1e18) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("scaling: beta,alpha doubled and eta halved") {
    Rng rng = Rng::stream({301, 0});
    auto l = random_links(6, rng);
    const double gamma_t = 7.7;
    const double base = sinr_full_ap(l.alpha, l.beta, l.eta, gamma_t);
    // numerator doubles, hardening term doubles:
    // gamma' = 2 A / (2 S + 1/gamma_t), derived by hand from the formula
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
      num += std::sqrt(l.eta[i]) * l.alpha[i];
      den += l.beta[i] * (l.eta[i] * l.alpha[i]);
    }
    const double expect = 2.0 * num * num / (2.0 * den + 1.0 / gamma_t);
    auto a2 = l.alpha, b2 = l.beta, e2 = l.eta;
    for (auto& v : a2) v *= 2.0;
    for (auto& v : b2) v *= 2.0;
    for (auto& v : e2) v *= 0.5;
    CHECK(sinr_full_ap(a2, b2, e2, gamma_t) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK(base > 0.0);
  }
}

TEST_CASE("OAS SINR, hand-evaluated 2-AP case") {
  const std::vector<double> a{0.5, 1.0 / 3.0}, b{1.0, 2.0 / 3.0},
      e{0.25, 1.0 / 9.0};
  CHECK(sinr_oas(a, b, e, 5.0) == doctest::Approx(845.0 / 2266.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)sinr_oas({}, {}, {}, 5.0), std::domain_error);
}

TEST_CASE("OAS single-AP reduction") {
  const std::vector<double> a{3e-10}, b{5e-10}, e{1.0 / 3e-10};
  const double gamma_t = 1e11;
  const double expect =
      (e[0] * a[0] * a[0]) / (e[0] * b[0] * a[0] + 1.0 / gamma_t);
  CHECK(sinr_oas(a, b, e, gamma_t) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("degeneracy chain: Eq.(14) at K=1, Eq.(15) and Eq.(17) at M_s=M") {
  Rng rng = Rng::stream({302, 0});
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * 12);
    const auto l = random_links(m, rng);
    const double gamma_t = std::pow(10.0, 6.0 * rng.uniform());
    Matrix<double> am(m, 1), bm(m, 1), em(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
      am(i, 0) = l.alpha[i];
      bm(i, 0) = l.beta[i];
      em(i, 0) = l.eta[i];
    }
    const double g14 = sinr_full_ap_multiuser(am, bm, em, gamma_t)[0];
    const double g15 = sinr_full_ap(l.alpha, l.beta, l.eta, gamma_t);
    const double g17 = sinr_oas(l.alpha, l.beta, l.eta, gamma_t);
    worst = std::max(worst, std::abs(g14 - g15) / g15);
    CHECK(g17 == g15);  // same code path, bitwise
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("multi-user interference strictly lowers the SINR") {
  Rng rng = Rng::stream({303, 0});
  const std::size_t m = 8;
  Matrix<double> alpha(m, 2), beta(m, 2), eta(m, 2), eta_solo(m, 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < 2; ++k) {
      beta(i, k) = std::pow(10.0, -11.0 + 3.0 * rng.uniform());
      alpha(i, k) = beta(i, k) * (0.2 + 0.8 * rng.uniform());
      eta(i, k) = rng.uniform() / alpha(i, k);
      eta_solo(i, k) = k == 0 ? eta(i, k) : 0.0;  // user 1's power off
    }
  }
  const double with_interference =
      sinr_full_ap_multiuser(alpha, beta, eta, 1e10)[0];
  const double alone = sinr_full_ap_multiuser(alpha, beta, eta_solo, 1e10)[0];
  CHECK(with_interference < alone);
}

TEST_CASE("coherent-detection SINR") {
  using cxd = std::complex<double>;
  SUBCASE("all-zero realizations give zero") {
    const std::vector<cxd> g(3, cxd{0.0, 0.0});
    const std::vector<double> a(3, 1e-10), b(3, 2e-10), e(3, 1e9);
    CHECK(sinr_oas_dp(g, a, b, e, 1e10) == 0.0);
  }
  SUBCASE("perfect estimation leaves only noise in the denominator") {
    const std::vector<cxd> g{{1e-5, 2e-5}, {-3e-5, 1e-5}};
    const std::vector<double> a{1e-10, 2e-10}, b{1e-10, 2e-10}, e{2.0, 3.0};
    const double gamma_t = 5e9;
    double num = 0.0;
    for (std::size_t i = 0; i < 2; ++i) num += std::sqrt(e[i]) * std::norm(g[i]);
    CHECK(sinr_oas_dp(g, a, b, e, gamma_t) ==
          doctest::Approx(gamma_t * num * num).epsilon(1e-12));
  }
  SUBCASE("fourth moment of the numerator: E|g|^4 = 2 alpha^2") {
    Rng rng = Rng::stream({304, 0});
    const double alpha = 3.3e-10;
    double acc = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const double p = std::norm(rng.cnormal(alpha));
      acc += p * p;  // numerator of Eq. (19) with M_s = 1, eta = 1
    }
    CHECK(acc / n == doctest::Approx(2.0 * alpha * alpha).epsilon(0.03));
  }
  SUBCASE("empty selection is rejected") {
    CHECK_THROWS_AS((void)sinr_oas_dp({}, {}, {}, {}, 1.0), std::domain_error);
  }
}

TEST_CASE("statistical and coherent expressions are consistent") {
  // Eq. (17) equals Eq. (19) with |g_hat|^2 replaced by its mean alpha and
  // the denominator augmented by sum(eta alpha^2).
  Rng rng = Rng::stream({305, 0});
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * 9);
    const auto l = random_links(m, rng);
    const double gamma_t = std::pow(10.0, 8.0 * rng.uniform());
    std::vector<std::complex<double>> hardened(m);
    double extra = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      hardened[i] = {std::sqrt(l.alpha[i]), 0.0};  // |g_hat|^2 = alpha
      extra += l.eta[i] * l.alpha[i] * l.alpha[i];
    }
    const double dp = sinr_oas_dp(hardened, l.alpha, l.beta, l.eta, gamma_t);
    // move the augmentation into the statistical denominator by hand
    double num = 0.0, den19 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      num += std::sqrt(l.eta[i]) * l.alpha[i];
      den19 += l.eta[i] * (l.beta[i] - l.alpha[i]) * l.alpha[i];
    }
    const double lhs = num * num / (den19 + extra + 1.0 / gamma_t);
    const double rhs = sinr_oas(l.alpha, l.beta, l.eta, gamma_t);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    CHECK(dp == doctest::Approx(num * num / (den19 + 1.0 / gamma_t)).epsilon(1e-12));
  }
}

TEST_CASE("SINR is strictly increasing in the transmit SNR") {
  Rng rng = Rng::stream({306, 0});
  for (int trial = 0; trial < 100; ++trial) {
    const auto l = random_links(5, rng);
    const double gamma_t = std::pow(10.0, 6.0 * rng.uniform());
    CHECK(sinr_full_ap(l.alpha, l.beta, l.eta, gamma_t * 1.3) >
          sinr_full_ap(l.alpha, l.beta, l.eta, gamma_t));
    CHECK(sinr_oas(l.alpha, l.beta, l.eta, gamma_t * 12.8) >
          sinr_oas(l.alpha, l.beta, l.eta, gamma_t));
  }
}

TEST_CASE("spectral efficiency mapping") {
  CHECK(se(0.0) == 0.0);
  CHECK(se(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(se(3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS((void)se(-0.1), std::domain_error);
}
