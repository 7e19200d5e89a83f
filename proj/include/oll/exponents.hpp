#pragma once

#include <optional>
#include <string>

#include "oll/errors.hpp"

namespace oll {

// Scalar parameters of the estimates, validated on construction. The growth
// exponent lives in the singular window 1 < p <= 2 - 1/n; the integrability
// exponent gamma must sit strictly inside (gamma1, gamma2).
struct ExponentConfig {
  int n = 2;
  double p = 1.5;
  double gamma = 0.6;
  double alpha = 0.0;

  // derived
  int chi1 = 0, chi2 = 1;
  double gamma1 = 0.0, gamma2 = 0.0;
  double beta = 1.0, sigma = 0.0;
  double p_tilde = 0.0;

  // structural / sweep parameters
  double upsilon = 1.0;
  double r0 = 1.0;
  double delta = 0.05;
  double a = 0.0;
  double epsilon = 0.1;

  static double p_cap(int n) { return 2.0 - 1.0 / n; }
  static double chi_threshold(int n) { return (3.0 * n - 2.0) / (2.0 * n - 1.0); }

  // Left side of the scaling identity [n - (beta-1)*gamma/(p-1)] * n/(n-alpha).
  double scaling_identity_lhs() const;

  std::string to_kv_text() const;
  static ExponentConfig from_kv_text(const std::string& text);
};

// Populates every derived exponent and checks all range relations.
// Throws RangeError on any violated relation.
ExponentConfig derive_exponents(int n, double p, double gamma, double alpha,
                                std::optional<double> upsilon = std::nullopt,
                                double r0 = 1.0, double delta = 0.05,
                                std::optional<double> a = std::nullopt,
                                double epsilon = 0.1);

}  // namespace oll
