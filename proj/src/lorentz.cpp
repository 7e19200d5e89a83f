#include "oll/lorentz.hpp"

#include <algorithm>
#include <cmath>

namespace oll {

namespace {

std::vector<double> member_abs_values(const ScalarField& f, const Region* region) {
  const GridDomain& g = f.grid();
  std::vector<double> vals;
  vals.reserve(g.interior_count());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const bool member = region ? region->contains(i) : g.cell_kind(i) == CellKind::Interior;
    if (member) vals.push_back(std::fabs(f[i]));
  }
  return vals;
}

}  // namespace

double distribution_function(const ScalarField& f, double lambda, const Region* region) {
  const GridDomain& g = f.grid();
  std::size_t count = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const bool member = region ? region->contains(i) : g.cell_kind(i) == CellKind::Interior;
    if (member && std::fabs(f[i]) > lambda) ++count;
  }
  return static_cast<double>(count) * g.cell_volume();
}

double lorentz_norm(const ScalarField& f, double q, double s, const Region* region) {
  if (!(q > 0.0)) throw RangeError("lorentz_norm: q must be positive");
  if (!(s > 0.0)) throw RangeError("lorentz_norm: s must be positive");
  std::vector<double> vals = member_abs_values(f, region);
  std::sort(vals.begin(), vals.end());
  const std::size_t total = vals.size();
  const double hn = f.grid().cell_volume();

  if (std::isinf(s)) {
    // On each constancy interval lambda*d(lambda)^{1/q} increases in lambda,
    // so the supremum is attained just below each distinct value.
    double best = 0.0;
    std::size_t i = 0;
    while (i < total) {
      const double v = vals[i];
      std::size_t j = i;
      while (j < total && vals[j] == v) ++j;
      if (v > 0.0) {
        const double meas = static_cast<double>(total - i) * hn;  // d(lambda) for lambda < v
        best = std::max(best, v * std::pow(meas, 1.0 / q));
      }
      i = j;
    }
    return best;
  }

  // Segment [prev, v): d = hn * (# cells with value >= v);
  // contribution (v^s - prev^s)/s * d^{s/q}.
  double acc = 0.0;
  double prev = 0.0;
  std::size_t i = 0;
  while (i < total) {
    const double v = vals[i];
    std::size_t j = i;
    while (j < total && vals[j] == v) ++j;
    if (v > 0.0) {
      const double meas = static_cast<double>(total - i) * hn;
      acc += (std::pow(v, s) - std::pow(prev, s)) * std::pow(meas, s / q);
      prev = v;
    }
    i = j;
  }
  return std::pow(q / s * acc, 1.0 / s);
}

BandSets band_sets(const ScalarField& u, const ScalarField& v, double k, double h) {
  require_same_domain(u, v, "band_sets");
  if (!(k > 0.0) || !(h > 0.0)) throw RangeError("band_sets: k and h must be positive");
  const GridDomain& g = u.grid();
  BandSets out;
  out.e_kh.assign(u.size(), 0);
  out.f_h.assign(u.size(), 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (g.cell_kind(i) != CellKind::Interior) continue;
    const double d = std::fabs(u[i] - v[i]);
    if (d > h) {
      out.f_h[i] = 1;
      ++out.f_count;
      if (d < k + h) {
        out.e_kh[i] = 1;
        ++out.e_count;
      }
    }
  }
  return out;
}

LevelSetFamily level_set_family(const ScalarField& malpha, const ScalarField& msigma_pow,
                                const ScalarField& mbeta_pow, const ExponentConfig& cfg,
                                double lambda) {
  require_same_domain(malpha, msigma_pow, "level_set_family");
  require_same_domain(malpha, mbeta_pow, "level_set_family");
  if (!(lambda > 0.0)) throw RangeError("level_set_family: lambda must be positive");
  const GridDomain& g = malpha.grid();
  const double hn = g.cell_volume();
  LevelSetFamily out;
  out.lambda = lambda;
  out.a = cfg.a;
  out.epsilon = cfg.epsilon;
  const std::size_t nc = malpha.size();
  out.v1.assign(nc, 0);
  out.v2.assign(nc, 0);
  out.v3.assign(nc, 0);
  out.v.assign(nc, 0);
  out.w.assign(nc, 0);
  const double t2 = lambda / std::pow(cfg.epsilon, cfg.gamma);
  const double t3 = cfg.epsilon * cfg.epsilon * lambda;
  std::size_t c1 = 0, c2 = 0, c3 = 0, cv = 0, cw = 0;
  for (std::size_t i = 0; i < nc; ++i) {
    if (g.cell_kind(i) != CellKind::Interior) continue;
    const bool in1 = malpha[i] > cfg.a * lambda;
    const bool in2 = cfg.chi2 == 1 && msigma_pow[i] > t2;
    const bool in3 = mbeta_pow[i] > t3;
    const bool inw = malpha[i] > lambda;
    if (in1) { out.v1[i] = 1; ++c1; }
    if (in2) { out.v2[i] = 1; ++c2; }
    if (in3) { out.v3[i] = 1; ++c3; }
    if (inw) { out.w[i] = 1; ++cw; }
    if (in1 && !in2 && !in3) { out.v[i] = 1; ++cv; }
  }
  out.m_v1 = c1 * hn;
  out.m_v2 = c2 * hn;
  out.m_v3 = c3 * hn;
  out.m_v = cv * hn;
  out.m_w = cw * hn;
  return out;
}

}  // namespace oll
