#include "doctest.h"

#include <cmath>

#include "oll/exponents.hpp"

using namespace oll;

TEST_CASE("derived exponents for n=2, p=1.5, gamma=0.6, alpha=0.3") {
  const ExponentConfig c = derive_exponents(2, 1.5, 0.6, 0.3);
  CHECK(c.chi1 == 1);
  CHECK(c.chi2 == 0);
  CHECK(c.gamma1 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c.gamma2 == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(c.beta == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(c.sigma == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(c.p_tilde == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.upsilon == doctest::Approx(2.0).epsilon(1e-14));  // max(1, 1/(p-1))
}

TEST_CASE("derived exponents for n=3, p=1.3, gamma=0.4, alpha=0") {
  const ExponentConfig c = derive_exponents(3, 1.3, 0.4, 0.0);
  CHECK(c.chi1 == 0);
  CHECK(c.chi2 == 1);
  CHECK(c.gamma1 == 0.0);
  // second branch of the admissible range: n(p-1)/(n-1)
  CHECK(c.gamma2 == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(c.beta == 1.0);
  CHECK(c.sigma == 0.0);
  CHECK(c.p_tilde == doctest::Approx(9.0 / 17.0).epsilon(1e-14));
}

TEST_CASE("p above the singular cap is rejected") {
  CHECK_THROWS_AS(derive_exponents(2, 2.0, 0.5, 0.0), RangeError);
  CHECK_THROWS_AS(derive_exponents(2, 1.0, 0.5, 0.0), RangeError);
  CHECK_NOTHROW(derive_exponents(2, 1.5, 0.6, 0.0));  // p exactly at 2 - 1/n
}

TEST_CASE("open-interval endpoints for gamma are rejected") {
  const ExponentConfig c = derive_exponents(2, 1.5, 0.6, 0.0);
  CHECK_THROWS_AS(derive_exponents(2, 1.5, c.gamma1, 0.0), RangeError);
  CHECK_THROWS_AS(derive_exponents(2, 1.5, c.gamma2, 0.0), RangeError);
  CHECK_THROWS_AS(derive_exponents(2, 1.5, 0.9, 0.0), RangeError);
}

TEST_CASE("alpha = 0 forces beta = 1 and sigma = 0") {
  for (double p : {1.2, 1.4, 1.5}) {
    const double g2 = std::min(2.0 * p / 4.0, 2.0 * (p - 1.0));
    const double g1 = p > ExponentConfig::chi_threshold(2) ? 2.0 - p : 0.0;
    const ExponentConfig c = derive_exponents(2, p, 0.5 * (g1 + g2), 0.0);
    CHECK(c.beta == 1.0);
    CHECK(c.sigma == 0.0);
  }
}

TEST_CASE("beta out of [0, n) is rejected") {
  CHECK_THROWS_AS(derive_exponents(2, 1.5, 0.6, 1.95), RangeError);
}

TEST_CASE("ordering chains across the (n, p) sweep") {
  for (int n = 2; n <= 5; ++n) {
    const double thr = ExponentConfig::chi_threshold(n);
    const double cap = ExponentConfig::p_cap(n);
    for (int i = 1; i <= 40; ++i) {
      const double p = 1.0 + (cap - 1.0) * i / 41.0;
      const double g_low = n * (p - 1.0) / (n - 1.0);
      const double g_mid = n * p / (3.0 * n - 2.0);
      if (p <= thr) {
        // 0 = gamma1 < gamma2 = n(p-1)/(n-1) <= np/(3n-2) <= 2-p
        CHECK(g_low > 0.0);
        CHECK(g_low <= g_mid * (1.0 + 1e-12));
        CHECK(g_mid <= (2.0 - p) * (1.0 + 1e-12));
        CHECK(2.0 - p < 1.0 + 1e-12);
      } else {
        // 0 < gamma1 = 2-p < np/(3n-2) = gamma2 < n(p-1)/(n-1) <= 1
        CHECK(2.0 - p > 0.0);
        CHECK(2.0 - p < g_mid * (1.0 + 1e-12));
        CHECK(g_mid < g_low * (1.0 + 1e-12));
        CHECK(g_low <= 1.0 + 1e-12);
      }
      const double gamma = p <= thr ? 0.5 * g_low : 0.5 * ((2.0 - p) + g_mid);
      const ExponentConfig c = derive_exponents(n, p, gamma, 0.0);
      CHECK(c.gamma1 < c.gamma2);
    }
  }
}

TEST_CASE("scaling identity holds to machine precision") {
  for (double alpha : {0.0, 0.1, 0.3}) {
    const ExponentConfig c = derive_exponents(2, 1.45, 0.6, alpha);
    CHECK(std::fabs(c.scaling_identity_lhs() - c.n) <= 1e-12 * c.n);
  }
}

TEST_CASE("key-value round trip") {
  const ExponentConfig c = derive_exponents(2, 1.5, 0.6, 0.3, 2.5, 0.7, 0.07, 11.0, 0.2);
  const ExponentConfig d = ExponentConfig::from_kv_text(c.to_kv_text());
  CHECK(d.n == c.n);
  CHECK(d.p == c.p);
  CHECK(d.gamma == c.gamma);
  CHECK(d.alpha == c.alpha);
  CHECK(d.upsilon == c.upsilon);
  CHECK(d.r0 == c.r0);
  CHECK(d.delta == c.delta);
  CHECK(d.a == c.a);
  CHECK(d.epsilon == c.epsilon);
  CHECK(d.beta == c.beta);
}

TEST_CASE("default dilation factor clears the covering floor") {
  const ExponentConfig c = derive_exponents(2, 1.5, 0.6, 0.3);
  CHECK(c.a > std::pow(3.0, c.n - c.alpha));
}
