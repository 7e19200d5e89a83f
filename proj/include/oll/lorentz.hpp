#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "oll/exponents.hpp"
#include "oll/field.hpp"

namespace oll {

// Distribution function h^n * #{interior cells in region with |f| > lambda}.
double distribution_function(const ScalarField& f, double lambda,
                             const Region* region = nullptr);

// Lorentz quasi-norm. For s < infinity the lambda integral is evaluated in
// closed form between consecutive distinct |f| values (the distribution
// function is piecewise constant on a grid, making the norm exact up to
// rounding). The prefactor under the root is q; some texts put s there
// instead, which rescales the finite-s norms by (s/q)^{1/s}.
// For s = infinity: sup over levels of lambda * d(lambda)^{1/q}.
double lorentz_norm(const ScalarField& f, double q,
                    double s = std::numeric_limits<double>::infinity(),
                    const Region* region = nullptr);

struct BandSets {
  std::vector<std::uint8_t> e_kh;  // h < |u-v| < k+h
  std::vector<std::uint8_t> f_h;   // |u-v| > h
  std::size_t e_count = 0;
  std::size_t f_count = 0;
};

BandSets band_sets(const ScalarField& u, const ScalarField& v, double k, double h);

// The five sets of the level-set decay inequality at one threshold.
// v1 = {malpha > a*lambda}; v2 = {msigma_pow > lambda/eps^gamma} when chi2=1,
// empty otherwise; v3 = {mbeta_pow > eps^2*lambda}; w = {malpha > lambda};
// v = v1 \ (v2 u v3). Measures are h^n times the interior mask cardinality.
struct LevelSetFamily {
  double lambda = 0.0;
  double a = 0.0;
  double epsilon = 0.0;
  std::vector<std::uint8_t> v1, v2, v3, v, w;
  double m_v1 = 0.0, m_v2 = 0.0, m_v3 = 0.0, m_v = 0.0, m_w = 0.0;
};

LevelSetFamily level_set_family(const ScalarField& malpha, const ScalarField& msigma_pow,
                                const ScalarField& mbeta_pow, const ExponentConfig& cfg,
                                double lambda);

}  // namespace oll
