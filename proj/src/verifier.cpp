#include "oll/verifier.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "oll/calculus.hpp"

namespace oll {

namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, v);
  return buf;
}

// k-grid of the hypothesis measurements: {2^-6, ..., 2^3} times the scale.
std::vector<double> dyadic_grid(double scale) {
  std::vector<double> out;
  for (int e = -6; e <= 3; ++e) out.push_back(std::ldexp(scale, e));
  return out;
}

ScalarField diff_field(const ScalarField& a, const ScalarField& b) {
  ScalarField d(a.domain_ptr());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[i] - b[i];
  return d;
}

VectorField diff_vec(const VectorField& a, const VectorField& b) {
  VectorField d(a.domain_ptr());
  for (std::size_t i = 0; i < a.cells(); ++i)
    for (int c = 0; c < a.comps(); ++c) d.comp(i, c) = a.comp(i, c) - b.comp(i, c);
  return d;
}

double region_max_abs(const ScalarField& f, const Region& region) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (region.mask[i]) m = std::max(m, std::fabs(f[i]));
  return m;
}

}  // namespace

void VerificationReport::add_sample(const std::string& label, double lhs, double rhs) {
  VerificationSample s;
  s.label = label;
  s.lhs = lhs;
  s.rhs = rhs;
  if (rhs > 0.0) {
    s.ratio = lhs / rhs;
  } else if (lhs <= 0.0) {
    s.ratio = 0.0;  // 0/0 counts as satisfied
  } else {
    s.ratio = std::numeric_limits<double>::infinity();
    s.flagged = true;
  }
  samples.push_back(std::move(s));
}

void VerificationReport::finalize() {
  min_constant = 0.0;
  std::size_t nflag = 0;
  for (const auto& s : samples) {
    if (s.flagged) {
      ++nflag;
      continue;
    }
    min_constant = std::max(min_constant, s.ratio);
  }
  if (nflag > 0)
    notes += " " + std::to_string(nflag) + " sample(s) with positive lhs over zero rhs excluded.";
  passed = std::isfinite(min_constant);
  if (!std::isnan(stability_ratio))
    passed = passed && stability_ratio >= 1.0 - stability_band &&
             stability_ratio <= 1.0 + stability_band;
}

void VerificationReport::set_stability(double coarse_min_constant) {
  if (coarse_min_constant > 0.0) {
    stability_ratio = min_constant / coarse_min_constant;
  } else {
    stability_ratio = min_constant == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  finalize();
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw RangeError("fit_loglog_slope: need >= 2 points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  return num / den;
}

VerificationReport check_tech2(const VectorField& v1, const VectorField& v2, double eps, double s,
                               double gamma, const Region& region, double p) {
  if (!(p > 1.0 && p < 2.0)) throw RangeError("check_tech2: p outside (1, 2)");
  if (!(s > 0.0) || !(gamma > 0.0 && gamma < p * s))
    throw RangeError("check_tech2: need 0 < gamma < p*s");
  if (!(eps > 0.0 && eps < 1.0)) throw RangeError("check_tech2: eps outside (0, 1)");
  VerificationReport rep;
  rep.name = "tech2";
  rep.add_param("p", p);
  rep.add_param("s", s);
  rep.add_param("gamma", gamma);
  rep.add_param("eps", eps);

  const double lhs_full = lp_integral(magnitude_field(diff_vec(v1, v2)), gamma, region);
  const double a_term = lp_integral(magnitude_field(v1), gamma, region);
  const ScalarField phi = phi_gap_field(v1, v2, p);
  const double phinorm =
      lorentz_norm(phi, s, std::numeric_limits<double>::infinity(), &region);
  const double denom =
      std::pow(region.volume(), 1.0 - gamma / (p * s)) * std::pow(phinorm, gamma / p);
  rep.add_sample("eps=" + fmt("%.6g", eps), std::max(0.0, lhs_full - eps * a_term), denom);
  rep.add_param("lhs_integral", lhs_full);
  rep.add_param("eps_term", eps * a_term);
  rep.finalize();
  return rep;
}

VerificationReport check_tech3(const ScalarField& u, const ScalarField& v, const ScalarField& f,
                               double q, double theta, const Region& region) {
  if (!(q > 0.0)) throw RangeError("check_tech3: q must be positive");
  if (theta < 0.0) throw RangeError("check_tech3: theta must be nonnegative");
  require_same_domain(u, v, "check_tech3");
  const ScalarField d = diff_field(u, v);
  const double scale = region_max_abs(d, region);
  const double fmax = region_max_abs(f, region);
  if (scale == 0.0 && fmax > 0.0)
    throw DegenerateInput("check_tech3: u == v on the region but f does not vanish");

  VerificationReport rep;
  rep.name = "tech3";
  rep.add_param("q", q);
  rep.add_param("theta", theta);

  // hypothesis constant: Pi = max_k k^{-theta} int_{|u-v| <= k} f
  double pi = 0.0;
  const double hn = u.grid().cell_volume();
  for (double k : dyadic_grid(scale > 0.0 ? scale : 1.0)) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (region.mask[i] && std::fabs(d[i]) <= k) acc += std::fabs(f[i]);
    pi = std::max(pi, std::pow(k, -theta) * acc * hn);
  }
  rep.add_param("pi", pi);

  const double lhs =
      lorentz_norm(f, q / (q + theta), std::numeric_limits<double>::infinity(), &region);
  const double uv_weak = lorentz_norm(d, q, std::numeric_limits<double>::infinity(), &region);
  const double rhs = pi * (theta == 0.0 ? 1.0 : std::pow(uv_weak, theta));
  rep.add_sample("bound", lhs, rhs);
  rep.finalize();
  return rep;
}

VerificationReport check_lemma_B1(const ScalarField& u, const ScalarField& v,
                                  const ExponentConfig& cfg, const Region& region, double kappa1,
                                  double kappa2) {
  require_same_domain(u, v, "check_lemma_B1");
  VerificationReport rep;
  rep.name = "lemma_b1";
  rep.add_param("p", cfg.p);
  rep.add_param("gamma", cfg.gamma);
  rep.add_param("p_tilde", cfg.p_tilde);
  rep.add_param("kappa1", kappa1);
  rep.add_param("kappa2", kappa2);

  const ScalarField d = diff_field(u, v);
  const VectorField gu = gradient(u);
  const VectorField gv = gradient(v);
  const ScalarField phi = phi_gap_field(gu, gv, cfg.p);
  const double scale = region_max_abs(d, region);

  // Pi = max over the (k, h) grid of (1/k) int_{E_{k,h}} Phi
  double pi = 0.0;
  const double hn = u.grid().cell_volume();
  const auto grid_vals = dyadic_grid(scale > 0.0 ? scale : 1.0);
  if (scale > 0.0) {
    for (double k : grid_vals) {
      for (double h : grid_vals) {
        double acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (!region.mask[i]) continue;
          const double ad = std::fabs(d[i]);
          if (ad > h && ad < k + h) acc += phi[i];
        }
        pi = std::max(pi, acc * hn / k);
      }
    }
  }
  rep.add_param("pi", pi);

  const double lhs1 = lorentz_norm(d, cfg.p_tilde, std::numeric_limits<double>::infinity(),
                                   &region);
  const double grad_low = lp_integral(magnitude_field(gu), 2.0 - cfg.p, region);
  const double rhs1 = std::pow(pi, 1.0 / (cfg.p - 1.0)) + pi * grad_low;
  rep.add_sample("marcinkiewicz", lhs1, rhs1);

  const double lhs2 = region_mean_pow(diff_vec(gu, gv), cfg.gamma, region);
  const double mean_g = region_mean_pow(gu, cfg.gamma, region);
  const double mean_low = region_mean_pow(gu, 2.0 - cfg.p, region);
  const double slack = kappa1 * cfg.chi1 * mean_g +
                       kappa2 * cfg.chi2 * std::pow(mean_low, cfg.gamma / (2.0 - cfg.p));
  rep.add_sample("gradient", std::max(0.0, lhs2 - slack),
                 std::pow(pi, cfg.gamma / (cfg.p - 1.0)));
  rep.finalize();
  return rep;
}

namespace {

double data_term(const ScalarField& mu_density, const ObstacleProblem& prob, const Region& ball,
                 double rho, bool clip_to_region) {
  const GridDomain& g = *prob.dom;
  const int n = g.dim();
  double mass = 0.0;
  if (clip_to_region || !ball.center) {
    for (std::size_t i = 0; i < g.cell_count(); ++i)
      if (ball.mask[i]) mass += std::fabs(mu_density[i]);
    mass *= g.cell_volume();
  } else {
    for (std::size_t i = 0; i < g.cell_count(); ++i)
      if (g.cell_kind(i) == CellKind::Interior &&
          point_distance(g.cell_center(i), *ball.center) < rho)
        mass += std::fabs(mu_density[i]);
    mass *= g.cell_volume();
  }
  const ScalarField da = div_A_of(prob.psi, prob.coeff, prob.p);
  const double div_mean = region_mean_pow(da, 1.0, ball);
  return mass / std::pow(rho, n - 1) + rho * div_mean;
}

}  // namespace

VerificationReport check_comparison_with(const ScalarField& u, const ScalarField& mu_density,
                                         const ObstacleProblem& prob, const Region& ball,
                                         const ExponentConfig& cfg, double kappa1, double kappa2,
                                         const PipelineSolve& ps) {
  if (!(kappa1 > 0.0 && kappa1 < 1.0 && kappa2 > 0.0 && kappa2 < 1.0))
    throw RangeError("check_comparison: kappa outside (0, 1)");
  ObstacleProblem pk = prob;
  pk.mu = MeasureData(prob.dom, {}, mu_density);
  const ScalarField v =
      solve_obstacle_free(u, prob.psi, ball, pk, ps.tol, ps.max_iter, ps.omega);

  VerificationReport rep;
  rep.name = "comparison";
  rep.add_param("rho", ball.radius);
  rep.add_param("kappa1", kappa1);
  rep.add_param("kappa2", kappa2);

  const VectorField gu = gradient(u);
  const VectorField gv = gradient(v);
  const double lhs = region_mean_pow(diff_vec(gu, gv), cfg.gamma, ball);
  const double mean_g = region_mean_pow(gu, cfg.gamma, ball);
  const double mean_low = region_mean_pow(gu, 2.0 - cfg.p, ball);
  const double slack = kappa1 * cfg.chi1 * mean_g +
                       kappa2 * cfg.chi2 * std::pow(mean_low, cfg.gamma / (2.0 - cfg.p));
  const double data = data_term(mu_density, prob, ball, ball.radius, false);
  rep.add_param("data_term", data);
  rep.add_sample("ball", std::max(0.0, lhs - slack),
                 std::pow(data, cfg.gamma / (cfg.p - 1.0)));
  rep.finalize();
  return rep;
}

VerificationReport check_comparison(const ObstacleProblem& prob, const Region& ball,
                                    const ExponentConfig& cfg, double kappa1, double kappa2,
                                    const PipelineSolve& ps) {
  const ScalarField mu_k = prob.mu.mollify(ps.mollify_level);
  ObstacleProblem pk = prob;
  pk.mu = MeasureData(prob.dom, {}, mu_k);
  const SolveReport rep0 = solve_obstacle(pk, ps.tol, ps.max_iter, ps.omega);
  return check_comparison_with(rep0.u, mu_k, prob, ball, cfg, kappa1, kappa2, ps);
}

VerificationReport check_comparison_frozen(const ObstacleProblem& prob, const Region& ball,
                                           const ExponentConfig& cfg, double kappa1,
                                           double kappa2, const PipelineSolve& ps) {
  if (!ball.center) throw RangeError("check_comparison_frozen: needs a ball region");
  const ScalarField mu_k = prob.mu.mollify(ps.mollify_level);
  ObstacleProblem pk = prob;
  pk.mu = MeasureData(prob.dom, {}, mu_k);
  const SolveReport full = solve_obstacle(pk, ps.tol, ps.max_iter, ps.omega);

  const DomainPtr dom = prob.dom;
  const Point& c = *ball.center;
  const double rho = ball.radius;
  const Region b_half = Region::ball(dom, c, rho / 2.0);
  const Region b_quarter = Region::ball(dom, c, rho / 4.0);

  const ScalarField v =
      solve_obstacle_free(full.u, prob.psi, ball, pk, ps.tol, ps.max_iter, ps.omega);
  const ScalarField w = solve_homogeneous(v, b_half, pk, ps.tol, ps.max_iter, ps.omega);
  const FrozenResult fz = solve_frozen(w, b_quarter, pk, ps.tol, ps.max_iter, ps.omega);

  VerificationReport rep;
  rep.name = "comparison_frozen";
  rep.add_param("rho", rho);
  rep.add_param("kappa1", kappa1);
  rep.add_param("kappa2", kappa2);
  rep.add_param("delta", cfg.delta);

  const VectorField gu = gradient(full.u);
  const double mean_g = region_mean_pow(gu, cfg.gamma, b_quarter);
  const double mean_low = region_mean_pow(gu, 2.0 - cfg.p, b_quarter);
  const double data = data_term(mu_k, prob, b_quarter, rho, false);
  rep.add_param("data_term", data);

  // gradient sup bound on the half-radius ball of the frozen solve
  const double kappa = cfg.epsilon;
  const double lhs_a = fz.grad_sup_half;
  const double slack_a =
      kappa * cfg.chi2 * std::pow(mean_low, 1.0 / (2.0 - cfg.p));
  const double rhs_a =
      std::pow(mean_g, 1.0 / cfg.gamma) + std::pow(data, 1.0 / (cfg.p - 1.0));
  rep.add_sample("grad_sup", std::max(0.0, lhs_a - slack_a), rhs_a);

  // gradient difference bound
  const VectorField gt = gradient(fz.u);
  const double lhs_b = region_mean_pow(diff_vec(gu, gt), cfg.gamma, b_quarter);
  const double slack_b =
      kappa1 * cfg.chi1 * mean_g +
      (kappa2 + cfg.delta) * cfg.chi2 * std::pow(mean_low, cfg.gamma / (2.0 - cfg.p));
  rep.add_sample("grad_diff", std::max(0.0, lhs_b - slack_b),
                 std::pow(data, cfg.gamma / (cfg.p - 1.0)));
  rep.finalize();
  return rep;
}

VerificationReport check_comparison_boundary(const ObstacleProblem& prob, const Point& xi,
                                             double rho, const ExponentConfig& cfg,
                                             double kappa1, double kappa2,
                                             const PipelineSolve& ps) {
  const ScalarField mu_k = prob.mu.mollify(ps.mollify_level);
  ObstacleProblem pk = prob;
  pk.mu = MeasureData(prob.dom, {}, mu_k);
  const SolveReport full = solve_obstacle(pk, ps.tol, ps.max_iter, ps.omega);

  const DomainPtr dom = prob.dom;
  const Region omega_r = Region::ball(dom, xi, rho);
  const Region omega_half = Region::ball(dom, xi, rho / 2.0);
  const Region omega_quarter = Region::ball(dom, xi, rho / 4.0);
  if (omega_quarter.count == 0)
    throw RangeError("check_comparison_boundary: region below mesh resolution");

  const ScalarField v =
      solve_obstacle_free(full.u, prob.psi, omega_r, pk, ps.tol, ps.max_iter, ps.omega);
  const ScalarField w = solve_homogeneous(v, omega_half, pk, ps.tol, ps.max_iter, ps.omega);
  const FrozenResult fz = solve_frozen(w, omega_quarter, pk, ps.tol, ps.max_iter, ps.omega);

  VerificationReport rep;
  rep.name = "comparison_boundary";
  rep.add_param("rho", rho);
  rep.add_param("kappa1", kappa1);
  rep.add_param("kappa2", kappa2);

  const VectorField gu = gradient(full.u);
  const VectorField gt = gradient(fz.u);
  const double mean_g = region_mean_pow(gu, cfg.gamma, omega_quarter);
  const double mean_low = region_mean_pow(gu, 2.0 - cfg.p, omega_quarter);
  const double lhs = region_mean_pow(diff_vec(gu, gt), cfg.gamma, omega_quarter);
  const double slack =
      kappa1 * cfg.chi1 * mean_g +
      (kappa2 + cfg.delta) * cfg.chi2 * std::pow(mean_low, cfg.gamma / (2.0 - cfg.p));

  // The statement mixes the full ball and the clipped region in the measure
  // term; both are reported.
  const double data_ball = data_term(mu_k, prob, omega_quarter, rho / 4.0, false);
  const double data_clip = data_term(mu_k, prob, omega_quarter, rho / 4.0, true);
  rep.add_param("data_ball", data_ball);
  rep.add_param("data_clipped", data_clip);
  rep.add_sample("ball_measure", std::max(0.0, lhs - slack),
                 std::pow(data_ball, cfg.gamma / (cfg.p - 1.0)));
  rep.add_sample("clipped_measure", std::max(0.0, lhs - slack),
                 std::pow(data_clip, cfg.gamma / (cfg.p - 1.0)));
  rep.finalize();
  return rep;
}

MaximalFields compute_maximal_fields(const ScalarField& u, const ScalarField& mu_density,
                                     const ObstacleProblem& prob, const ExponentConfig& cfg,
                                     int jobs) {
  const RadiusLadder ladder = RadiusLadder::multiples_of_h(*prob.dom);
  const VectorField gu = gradient(u);
  const ScalarField gmag = magnitude_field(gu);

  MaximalFields out;
  out.malpha = fractional_maximal(pow_abs_field(gmag, cfg.gamma), cfg.alpha, ladder, jobs);
  if (cfg.chi2 == 1) {
    const ScalarField msig =
        fractional_maximal(pow_abs_field(gmag, 2.0 - cfg.p), cfg.sigma, ladder, jobs);
    out.msigma_pow = pow_abs_field(msig, cfg.gamma / (2.0 - cfg.p));
  } else {
    out.msigma_pow = ScalarField(prob.dom);
  }
  const ScalarField mb_mu =
      fractional_maximal(pow_abs_field(mu_density, 1.0), cfg.beta, ladder, jobs);
  const ScalarField da = div_A_of(prob.psi, prob.coeff, prob.p);
  const ScalarField mb_da =
      fractional_maximal(pow_abs_field(da, 1.0), cfg.beta, ladder, jobs);
  ScalarField sum(prob.dom);
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = mb_mu[i] + mb_da[i];
  out.mbeta_pow = pow_abs_field(sum, cfg.gamma / (cfg.p - 1.0));
  return out;
}

VerificationReport check_theorem_A(const MaximalFields& fields, const ExponentConfig& cfg,
                                   const std::vector<double>& lambda_grid, double a,
                                   double eps) {
  if (lambda_grid.empty()) throw EmptyLambdaGrid("check_theorem_A: empty lambda grid");
  VerificationReport rep;
  rep.name = "theorem_a";
  rep.add_param("a", a);
  rep.add_param("eps", eps);
  rep.add_param("chi2", cfg.chi2);
  const double a_floor = std::pow(3.0, cfg.n - cfg.alpha);
  rep.add_param("a_floor", a_floor);
  if (a <= a_floor)
    rep.notes += " warning: a below the dilation floor 3^{n-alpha}; covering hypothesis"
                 " violated, check still computed.";

  ExponentConfig c = cfg;
  c.a = a;
  c.epsilon = eps;
  rep.table_header = {"lambda", "V1", "V2", "V3", "V", "W", "minC"};

  bool relations_ok = true;
  bool lhs_seen = false;
  double max_v = 0.0;
  for (double lambda : lambda_grid) {
    const LevelSetFamily fam =
        level_set_family(fields.malpha, fields.msigma_pow, fields.mbeta_pow, c, lambda);
    const double lhs = std::max(0.0, fam.m_v1 - cfg.chi2 * fam.m_v2 - fam.m_v3);
    const double rhs = eps * fam.m_w;
    if (lhs > 0.0) lhs_seen = true;
    rep.add_sample("lambda=" + fmt("%.8g", lambda), lhs, rhs);
    const double cl = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    rep.table.push_back({lambda, fam.m_v1, fam.m_v2, fam.m_v3, fam.m_v, fam.m_w, cl});
    max_v = std::max(max_v, fam.m_v);
    if (a > 1.0) {
      for (std::size_t i = 0; i < fam.v.size(); ++i) {
        if (fam.v[i] && !fam.v1[i]) relations_ok = false;
        if (fam.v1[i] && !fam.w[i]) relations_ok = false;
        if (fam.v[i] && (fam.v2[i] || fam.v3[i])) relations_ok = false;
      }
    }
  }
  if (!relations_ok) {
    rep.notes += " set relations V within V1 within W violated.";
    rep.passed = false;
  }
  if (!lhs_seen)
    rep.notes += " data level set covers the dilated set at every lambda; the"
                 " inequality holds with C = 0.";
  // desk-scale form of the small-measure lemma: sup_lambda |V| against
  // eps * |B_{r0}|
  const double nn = cfg.n;
  const double ball_vol =
      std::pow(M_PI, 0.5 * nn) / std::tgamma(0.5 * nn + 1.0) * std::pow(cfg.r0, nn);
  rep.add_param("sup_V", max_v);
  rep.add_param("eps_ball_r0", eps * ball_vol);
  if (max_v >= eps * ball_vol)
    rep.notes += " small-measure bound sup_lambda |V| < eps |B_r0| exceeded.";
  rep.finalize();
  if (!relations_ok) rep.passed = false;
  return rep;
}

VerificationReport check_theorem_A(const ObstacleProblem& prob, const ExponentConfig& cfg,
                                   const std::vector<double>& lambda_grid, double a, double eps,
                                   const PipelineSolve& ps) {
  const ScalarField mu_k = prob.mu.mollify(ps.mollify_level);
  ObstacleProblem pk = prob;
  pk.mu = MeasureData(prob.dom, {}, mu_k);
  const SolveReport full = solve_obstacle(pk, ps.tol, ps.max_iter, ps.omega);
  const MaximalFields fields = compute_maximal_fields(full.u, mu_k, prob, cfg, ps.jobs);
  return check_theorem_A(fields, cfg, lambda_grid, a, eps);
}

VerificationReport check_theorem_B(const MaximalFields& fields, const ExponentConfig& cfg,
                                   double q, double s, const std::vector<double>& eps_list) {
  if (!(q > 0.0 && q < std::numeric_limits<double>::infinity()))
    throw RangeError("check_theorem_B: q outside (0, inf)");
  if (!(s > 0.0)) throw RangeError("check_theorem_B: s outside (0, inf]");
  VerificationReport rep;
  rep.name = "theorem_b";
  rep.add_param("q", q);
  rep.add_param("s", s);
  rep.add_param("chi2", cfg.chi2);

  const double lhs = lorentz_norm(fields.malpha, q, s);
  const double data = lorentz_norm(fields.mbeta_pow, q, s);
  rep.add_param("lhs_norm", lhs);
  rep.add_param("data_norm", data);

  if (cfg.chi2 == 0) {
    rep.add_sample("ratio", lhs, data);
  } else {
    const double signorm = lorentz_norm(fields.msigma_pow, q, s);
    rep.add_param("sigma_norm", signorm);
    std::vector<double> epss = eps_list;
    if (epss.empty()) epss = {cfg.epsilon, cfg.epsilon / 2.0, cfg.epsilon / 4.0};
    rep.table_header = {"eps", "C_eps"};
    for (double e : epss) {
      const double lhs_e = std::max(0.0, lhs - e * signorm);
      rep.add_sample("eps=" + fmt("%.6g", e), lhs_e, data);
      rep.table.push_back({e, data > 0.0 ? lhs_e / data : 0.0});
    }
  }
  rep.finalize();
  return rep;
}

VerificationReport check_theorem_B(const ObstacleProblem& prob, const ExponentConfig& cfg,
                                   double q, double s, const PipelineSolve& ps,
                                   const std::vector<double>& eps_list) {
  const ScalarField mu_k = prob.mu.mollify(ps.mollify_level);
  ObstacleProblem pk = prob;
  pk.mu = MeasureData(prob.dom, {}, mu_k);
  const SolveReport full = solve_obstacle(pk, ps.tol, ps.max_iter, ps.omega);
  const MaximalFields fields = compute_maximal_fields(full.u, mu_k, prob, cfg, ps.jobs);
  return check_theorem_B(fields, cfg, q, s, eps_list);
}

VerificationReport check_theorem_B_reduction(const ScalarField& u, const ScalarField& mu_density,
                                             const ObstacleProblem& prob,
                                             const ExponentConfig& cfg, double q, double s,
                                             int jobs) {
  const RadiusLadder ladder = RadiusLadder::multiples_of_h(*prob.dom);
  VerificationReport rep;
  rep.name = "theorem_b_reduction";
  rep.add_param("q_gamma", q * cfg.gamma);
  const double sg = std::isinf(s) ? s : s * cfg.gamma;
  rep.add_param("s_gamma", sg);

  const ScalarField gmag = magnitude_field(gradient(u));
  const double lhs = lorentz_norm(gmag, q * cfg.gamma, sg);
  const ScalarField m1_mu =
      fractional_maximal(pow_abs_field(mu_density, 1.0), 1.0, ladder, jobs);
  const ScalarField da = div_A_of(prob.psi, prob.coeff, prob.p);
  const ScalarField m1_da = fractional_maximal(pow_abs_field(da, 1.0), 1.0, ladder, jobs);
  ScalarField sum(prob.dom);
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = m1_mu[i] + m1_da[i];
  const double rhs =
      lorentz_norm(pow_abs_field(sum, 1.0 / (cfg.p - 1.0)), q * cfg.gamma, sg);
  rep.add_sample("reduction", lhs, rhs);
  rep.finalize();
  return rep;
}

VerificationReport check_holder_embedding(const VectorField& u_grad, const ExponentConfig& cfg,
                                          int jobs) {
  if (cfg.gamma > 2.0 - cfg.p)
    throw RangeError("check_holder_embedding: gamma exceeds 2-p");
  const RadiusLadder ladder = RadiusLadder::multiples_of_h(u_grad.grid());
  const ScalarField gmag = magnitude_field(u_grad);
  const ScalarField lhs =
      fractional_maximal(pow_abs_field(gmag, cfg.gamma), cfg.alpha, ladder, jobs);
  const ScalarField msig =
      fractional_maximal(pow_abs_field(gmag, 2.0 - cfg.p), cfg.sigma, ladder, jobs);
  const ScalarField rhs = pow_abs_field(msig, cfg.gamma / (2.0 - cfg.p));

  VerificationReport rep;
  rep.name = "holder_embedding";
  rep.add_param("gamma", cfg.gamma);
  rep.add_param("sigma", cfg.sigma);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    if (lhs.grid().cell_kind(i) == CellKind::Exterior) continue;
    worst = std::max(worst, lhs[i] - rhs[i]);
    scale = std::max(scale, rhs[i]);
  }
  rep.add_param("max_violation", worst);
  rep.add_param("scale", scale);
  rep.add_sample("pointwise", worst > 0.0 ? worst : 0.0, 1e-12 * std::max(scale, 1.0));
  rep.finalize();
  rep.passed = worst <= 1e-12 * std::max(scale, 1.0);
  return rep;
}

double global_gradient_ratio(const ScalarField& u, double mu_total_mass, double gamma, double p) {
  const GridDomain& g = u.grid();
  const double d0 = g.diameter();
  const double lhs = std::pow(lp_integral(magnitude_field(gradient(u)), gamma) /
                                  std::pow(d0, g.dim()),
                              1.0 / gamma);
  const double rhs = std::pow(mu_total_mass / std::pow(d0, g.dim() - 1), 1.0 / (p - 1.0));
  if (rhs == 0.0) throw ZeroDenominator("global_gradient_ratio: measure vanishes");
  return lhs / rhs;
}

VerificationReport check_structure(int n, double p, int pairs, std::uint64_t seed) {
  if (!(p > 1.0 && p < 2.0)) throw RangeError("check_structure: p outside (1, 2)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> logmag(-6.0, 3.0);
  const double upsilon = std::max(1.0, 1.0 / (p - 1.0));

  auto random_eta = [&] {
    std::vector<double> v(n);
    double m = 0.0;
    do {
      m = 0.0;
      for (int d = 0; d < n; ++d) {
        v[d] = unit(rng);
        m += v[d] * v[d];
      }
    } while (m == 0.0);
    const double target = std::pow(10.0, logmag(rng));
    const double s = target / std::sqrt(m);
    for (int d = 0; d < n; ++d) v[d] *= s;
    return v;
  };

  double growth_max = 0.0;
  double mono_min = std::numeric_limits<double>::infinity();
  int violations = 0;
  for (int it = 0; it < pairs; ++it) {
    const auto e1 = random_eta();
    const auto e2 = random_eta();
    const auto a1 = eval_A(e1, 1.0, p);
    const auto a2 = eval_A(e2, 1.0, p);
    double m1 = 0.0, na1 = 0.0, inner = 0.0;
    for (int d = 0; d < n; ++d) {
      m1 += e1[d] * e1[d];
      na1 += a1[d] * a1[d];
      inner += (a1[d] - a2[d]) * (e1[d] - e2[d]);
    }
    const double growth = std::sqrt(na1) / std::pow(std::sqrt(m1), p - 1.0);
    growth_max = std::max(growth_max, growth);
    if (growth > upsilon * (1.0 + 1e-10)) ++violations;
    const double phi = phi_gap(e1, e2, p);
    if (phi > 0.0) {
      const double ratio = inner / phi;
      mono_min = std::min(mono_min, ratio);
      if (ratio < (p - 1.0) * (1.0 - 1e-10)) ++violations;
    }
  }

  VerificationReport rep;
  rep.name = "structure";
  rep.add_param("n", n);
  rep.add_param("p", p);
  rep.add_param("upsilon", upsilon);
  rep.add_param("pairs", pairs);
  rep.add_param("violations", violations);
  rep.add_param("growth_max", growth_max);
  rep.add_param("mono_min", mono_min);
  rep.add_sample("growth", growth_max, upsilon);
  rep.add_sample("monotonicity", p - 1.0, mono_min);
  rep.finalize();
  rep.passed = violations == 0;
  return rep;
}

VerificationReport check_sola(const ObstacleProblem& prob, int K, const PipelineSolve& ps,
                              double gamma) {
  const SolaSequence seq = sola_sequence(prob, K, ps.tol, gamma, std::nullopt, ps.max_iter,
                                         ps.omega);
  VerificationReport rep;
  rep.name = "sola";
  rep.add_param("K", K);
  rep.add_param("gamma", seq.gamma);
  rep.add_param("r", seq.r);
  rep.table_header = {"k", "grad_diff_lgamma", "value_diff_lr"};
  bool decreasing = true;
  for (std::size_t k = 0; k < seq.grad_diff_lgamma.size(); ++k) {
    rep.table.push_back({static_cast<double>(k + 1), seq.grad_diff_lgamma[k],
                         seq.value_diff_lr[k]});
    // nonincreasing from the second difference on
    if (k >= 2 && seq.grad_diff_lgamma[k] > seq.grad_diff_lgamma[k - 1] * (1.0 + 1e-12))
      decreasing = false;
  }
  if (!seq.grad_diff_lgamma.empty())
    rep.add_sample("last_diff", seq.grad_diff_lgamma.back(), seq.grad_diff_lgamma.front());
  rep.stability_applies = false;
  rep.finalize();
  rep.passed = decreasing;
  if (!decreasing) rep.notes += " gradient differences not monotone from k=2 on.";
  return rep;
}

RefinementStudy radial_refinement_study(const std::vector<int>& shapes, double extent, int dim,
                                        double p, double gamma, const PipelineSolve& ps,
                                        double r_in, double r_out) {
  if (shapes.size() < 2) throw RangeError("radial_refinement_study: need >= 2 resolutions");
  RefinementStudy st;
  st.shapes = shapes;
  ScalarField prev;
  for (int n_cells : shapes) {
    const double h = extent / n_cells;
    DomainPtr dom = GridDomain::box(dim, std::vector<int>(dim, n_cells), h);
    ObstacleProblem prob;
    prob.dom = dom;
    prob.coeff = CoefficientField::pure();
    prob.p = p;
    prob.mu = MeasureData::dirac(dom, Point(dim, 0.0));
    prob.psi = make_obstacle(dom, ObstacleSpec{});
    ScalarField bc(dom);
    bc.fill([&](const Point& x) {
      double r2 = 0.0;
      for (double xd : x) r2 += xd * xd;
      // only boundary cells are read; the pole cell never is
      return r2 == 0.0 ? 0.0 : radial_oracle(dim, p, x).u;
    });
    prob.boundary_values = bc;

    ObstacleProblem pk = prob;
    pk.mu = MeasureData(dom, {}, prob.mu.mollify(ps.mollify_level));

    // warm start from the previous resolution by nearest-cell sampling
    ScalarField init(dom);
    const bool warm = prev.size() > 0;
    if (warm) {
      const GridDomain& cg = prev.grid();
      init.fill_interior([&](const Point& x) {
        // clamp to the coarse array and sample the containing cell
        Index idx(dim);
        for (int d = 0; d < dim; ++d) {
          const double s = (x[d] - cg.axis_origin(d)) / cg.spacing() - 0.5;
          idx[d] = std::min(cg.shape()[d] - 1, std::max(0, static_cast<int>(std::lround(s))));
        }
        return prev[cg.linear(idx)];
      });
    }
    const SolveReport rep = solve_obstacle(pk, ps.tol, ps.max_iter, ps.omega,
                                           warm ? &init : nullptr);
    prev = rep.u;

    const VectorField gu = gradient(rep.u);
    double err = 0.0;
    const GridDomain& g = *dom;
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
      if (g.cell_kind(i) != CellKind::Interior) continue;
      const Point x = g.cell_center(i);
      double r2 = 0.0;
      for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
      const double r = std::sqrt(r2);
      if (r <= r_in || r >= r_out) continue;
      const RadialSample ex = radial_oracle(dim, p, x);
      double d2 = 0.0;
      for (int d = 0; d < dim; ++d) {
        const double t = gu.comp(i, d) - ex.grad[d];
        d2 += t * t;
      }
      err += std::pow(std::sqrt(d2), gamma) * g.cell_volume();
    }
    st.h.push_back(h);
    st.error.push_back(std::pow(err, 1.0 / gamma));
  }
  st.monotone = true;
  for (std::size_t i = 1; i < st.error.size(); ++i)
    if (st.error[i] >= st.error[i - 1]) st.monotone = false;
  // error ~ C h^order, so the log-log slope is the order itself
  st.order = fit_loglog_slope(st.h, st.error);
  return st;
}

std::vector<double> log_lambda_grid(double lambda_max, int points, double decades) {
  if (points < 1) throw EmptyLambdaGrid("log_lambda_grid: need at least one point");
  if (!(lambda_max > 0.0)) throw RangeError("log_lambda_grid: lambda_max must be positive");
  std::vector<double> out;
  out.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out.push_back(lambda_max * std::pow(10.0, -decades * (1.0 - t)));
  }
  return out;
}

}  // namespace oll
