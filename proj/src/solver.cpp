#include "oll/solver.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "oll/calculus.hpp"

namespace oll {

namespace {

constexpr std::size_t NPOS = static_cast<std::size_t>(-1);

// Shared state of one relaxation run. Unknowns are interior cells of the
// target region; every other cell holds fixed Dirichlet data. Neighbor
// tables map out-of-array reads to the zero extension.
struct RelaxContext {
  const GridDomain* g = nullptr;
  int n = 0;
  double h = 0.0, h2 = 0.0, hn = 0.0;
  double p = 1.5, eps2 = 0.0, expo = 0.0;  // expo = (p-2)/2
  std::vector<double> u;
  std::vector<double> cvals;
  const std::vector<double>* rhs = nullptr;        // may be null
  const std::vector<double>* obstacle = nullptr;   // may be null
  std::vector<std::uint8_t> unknown;
  std::vector<std::size_t> unknown_cells;
  std::vector<std::size_t> nbp, nbm;  // cell*n + d -> linear index or NPOS

  void build_tables() {
    const std::size_t total = g->cell_count();
    nbp.assign(total * n, NPOS);
    nbm.assign(total * n, NPOS);
    for (std::size_t lin = 0; lin < total; ++lin) {
      Index idx = g->multi(lin);
      for (int d = 0; d < n; ++d) {
        Index nb = idx;
        nb[d] += 1;
        if (g->in_array(nb)) nbp[lin * n + d] = g->linear(nb);
        nb[d] -= 2;
        if (g->in_array(nb)) nbm[lin * n + d] = g->linear(nb);
      }
    }
  }

  double uval(std::size_t lin) const { return lin == NPOS ? 0.0 : u[lin]; }

  double grad_sq(std::size_t lin) const {
    double s = 0.0;
    for (int d = 0; d < n; ++d) {
      const double t = (uval(nbp[lin * n + d]) - u[lin]) / h;
      s += t * t;
    }
    return s;
  }

  double weight_of(double grad2) const {
    const double s2 = grad2 + eps2;
    return s2 == 0.0 ? 0.0 : std::pow(s2, expo);
  }

  double weight(std::size_t lin) const { return cvals[lin] * weight_of(grad_sq(lin)); }

  // (-div A(grad u))_i - rhs_i with the weights taken at the current u.
  double cell_residual(std::size_t i, const std::vector<double>& w) const {
    double s = 0.0;
    for (int d = 0; d < n; ++d) {
      const std::size_t jm = nbm[i * n + d];
      const std::size_t jp = nbp[i * n + d];
      const double wm = jm == NPOS ? 0.0 : w[jm];
      s += wm * (u[i] - uval(jm)) - w[i] * (uval(jp) - u[i]);
    }
    return s / h2 - (rhs ? (*rhs)[i] : 0.0);
  }

  double energy(const std::vector<double>& grad2_buf) const {
    double e = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double s2 = grad2_buf[i] + eps2;
      e += cvals[i] * (s2 == 0.0 ? 0.0 : std::pow(s2, 0.5 * p));
    }
    e *= hn / p;
    if (rhs) {
      for (std::size_t i : unknown_cells) e -= hn * u[i] * (*rhs)[i];
    }
    return e;
  }
};

// Residual of the one-cell nonlinear problem as a function of the trial
// value t; strictly increasing in t for p > 1.
struct CellProblem {
  const RelaxContext* ctx;
  std::size_t i;
  double rhs_i;
  // cached neighbor data
  struct Side {
    std::size_t jm = NPOS;    // i - e_d
    double um = 0.0;          // u at i - e_d
    double up = 0.0;          // u at i + e_d
    double cm = 0.0;          // coefficient at i - e_d
    double fixed_sq = 0.0;    // sum over other axes of grad comps at i - e_d
  };
  std::vector<Side> sides;

  void prepare() {
    const RelaxContext& c = *ctx;
    sides.resize(c.n);
    for (int d = 0; d < c.n; ++d) {
      Side& s = sides[d];
      s.jm = c.nbm[i * c.n + d];
      s.um = c.uval(s.jm);
      s.up = c.uval(c.nbp[i * c.n + d]);
      if (s.jm != NPOS) {
        s.cm = c.cvals[s.jm];
        double acc = 0.0;
        for (int dd = 0; dd < c.n; ++dd) {
          if (dd == d) continue;
          const double t = (c.uval(c.nbp[s.jm * c.n + dd]) - c.u[s.jm]) / c.h;
          acc += t * t;
        }
        s.fixed_sq = acc;
      }
    }
    rhs_i = c.rhs ? (*c.rhs)[i] : 0.0;
  }

  double operator()(double t) const {
    const RelaxContext& c = *ctx;
    double g2i = 0.0;
    for (int d = 0; d < c.n; ++d) {
      const double gd = (sides[d].up - t) / c.h;
      g2i += gd * gd;
    }
    const double wi = c.cvals[i] * c.weight_of(g2i);
    double s = 0.0;
    for (int d = 0; d < c.n; ++d) {
      const Side& sd = sides[d];
      if (sd.jm != NPOS) {
        const double gm = (t - sd.um) / c.h;
        const double wm = sd.cm * c.weight_of(sd.fixed_sq + gm * gm);
        s += wm * (t - sd.um);
      }
      s -= wi * (sd.up - t);
    }
    return s / c.h2 - rhs_i;
  }
};

// Safeguarded root solve of the increasing cell residual: geometric bracket
// expansion, then secant steps falling back to bisection.
double solve_cell(const CellProblem& f, double t0, double length_scale) {
  double fa, fb, a = t0, b = t0;
  double f0 = f(t0);
  if (f0 == 0.0) return t0;
  double step = length_scale;
  if (f0 > 0.0) {
    fb = f0;
    for (int it = 0; it < 200; ++it) {
      a = b - step;
      fa = f(a);
      if (fa <= 0.0) break;
      b = a;
      fb = fa;
      step *= 2.0;
    }
    if (fa > 0.0) return a;  // wildly off; let the outer iteration continue
  } else {
    fa = f0;
    for (int it = 0; it < 200; ++it) {
      b = a + step;
      fb = f(b);
      if (fb >= 0.0) break;
      a = b;
      fa = fb;
      step *= 2.0;
    }
    if (fb < 0.0) return b;
  }
  for (int it = 0; it < 80; ++it) {
    const double width = b - a;
    if (width <= 1e-15 * (std::fabs(a) + std::fabs(b) + length_scale)) break;
    double t;
    if (fb != fa) {
      t = a - fa * (b - a) / (fb - fa);
      if (!(t > a && t < b)) t = 0.5 * (a + b);
    } else {
      t = 0.5 * (a + b);
    }
    // force progress if secant stalls on an endpoint
    const double guard = 1e-3 * width;
    t = std::min(std::max(t, a + guard), b - guard);
    const double ft = f(t);
    if (ft == 0.0) return t;
    if (ft > 0.0) {
      b = t;
      fb = ft;
    } else {
      a = t;
      fa = ft;
    }
  }
  return 0.5 * (a + b);
}

struct RelaxOutcome {
  int sweeps = 0;
  double residual = 0.0;
  double scale = 1.0;
  std::vector<double> energy_trace;
  bool converged = false;
};

RelaxOutcome relax(RelaxContext& ctx, double tol, int max_sweeps, double omega,
                   bool record_energy) {
  const std::size_t total = ctx.u.size();
  std::vector<double> w(total, 0.0), grad2(total, 0.0);

  // Data scale for the stopping test: density magnitude plus the flux scale
  // of the initial iterate.
  double scale = 0.0;
  if (ctx.rhs)
    for (std::size_t i : ctx.unknown_cells) scale = std::max(scale, std::fabs((*ctx.rhs)[i]));
  double g2max = 0.0;
  for (std::size_t i = 0; i < total; ++i) g2max = std::max(g2max, ctx.grad_sq(i));
  scale = std::max(scale, std::pow(g2max + ctx.eps2, 0.5 * (ctx.p - 1.0)) / ctx.h);
  if (scale == 0.0) scale = 1.0;

  RelaxOutcome out;
  out.scale = scale;
  const bool nonlinear_cells = omega == 1.0;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (!nonlinear_cells) {
      for (std::size_t i = 0; i < total; ++i) w[i] = ctx.cvals[i] * ctx.weight_of(ctx.grad_sq(i));
      for (std::size_t i : ctx.unknown_cells) {
        double denom = 0.0, num = ctx.h2 * (ctx.rhs ? (*ctx.rhs)[i] : 0.0);
        for (int d = 0; d < ctx.n; ++d) {
          const std::size_t jm = ctx.nbm[i * ctx.n + d];
          const std::size_t jp = ctx.nbp[i * ctx.n + d];
          const double wm = jm == NPOS ? 0.0 : w[jm];
          denom += wm + w[i];
          num += wm * ctx.uval(jm) + w[i] * ctx.uval(jp);
        }
        if (denom == 0.0) continue;
        double t = ctx.u[i] + omega * (num / denom - ctx.u[i]);
        if (ctx.obstacle) t = std::max(t, (*ctx.obstacle)[i]);
        ctx.u[i] = t;
      }
    } else {
      for (std::size_t i : ctx.unknown_cells) {
        CellProblem cp{&ctx, i, 0.0, {}};
        cp.prepare();
        double t = solve_cell(cp, ctx.u[i], ctx.h);
        if (ctx.obstacle) t = std::max(t, (*ctx.obstacle)[i]);
        ctx.u[i] = t;
      }
    }

    // residual + energy with the weights at the updated iterate
    for (std::size_t i = 0; i < total; ++i) {
      grad2[i] = ctx.grad_sq(i);
      w[i] = ctx.cvals[i] * ctx.weight_of(grad2[i]);
    }
    double resid = 0.0;
    for (std::size_t i : ctx.unknown_cells) {
      const double r = ctx.cell_residual(i, w);
      const bool contact = ctx.obstacle && ctx.u[i] <= (*ctx.obstacle)[i];
      resid = std::max(resid, contact ? std::max(0.0, -r) : std::fabs(r));
    }
    if (record_energy) out.energy_trace.push_back(ctx.energy(grad2));
    out.sweeps = sweep + 1;
    out.residual = resid;
    if (resid <= tol * scale) {
      out.converged = true;
      break;
    }
  }
  return out;
}

RelaxContext make_context(const DomainPtr& dom, const CoefficientField& coeff, double p,
                          double eps_reg) {
  RelaxContext ctx;
  ctx.g = dom.get();
  ctx.n = dom->dim();
  ctx.h = dom->spacing();
  ctx.h2 = ctx.h * ctx.h;
  ctx.hn = dom->cell_volume();
  ctx.p = p;
  ctx.eps2 = eps_reg * eps_reg;
  ctx.expo = 0.5 * (p - 2.0);
  ctx.u.assign(dom->cell_count(), 0.0);
  ctx.cvals.resize(dom->cell_count());
  for (std::size_t i = 0; i < dom->cell_count(); ++i) ctx.cvals[i] = coeff.at(i);
  ctx.build_tables();
  return ctx;
}

void set_unknowns(RelaxContext& ctx, const std::vector<std::uint8_t>* region_mask) {
  const GridDomain& g = *ctx.g;
  ctx.unknown.assign(g.cell_count(), 0);
  ctx.unknown_cells.clear();
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    if (g.cell_kind(i) != CellKind::Interior) continue;
    if (region_mask && !(*region_mask)[i]) continue;
    ctx.unknown[i] = 1;
    ctx.unknown_cells.push_back(i);
  }
}

}  // namespace

ScalarField make_obstacle(const DomainPtr& dom, const ObstacleSpec& spec) {
  ScalarField psi(dom);
  Point c = spec.center;
  if (c.empty()) c.assign(dom->dim(), 0.0);
  if (spec.kind != ObstacleKind::None && !(spec.width > 0.0))
    throw RangeError("make_obstacle: width must be positive");
  psi.fill([&](const Point& x) {
    switch (spec.kind) {
      case ObstacleKind::None:
        return -1e6;
      case ObstacleKind::Paraboloid: {
        const double r = point_distance(x, c);
        return spec.height * (1.0 - (r / spec.width) * (r / spec.width));
      }
      case ObstacleKind::Cone: {
        const double r = point_distance(x, c);
        return spec.height * (1.0 - r / spec.width);
      }
      case ObstacleKind::Plateau: {
        const double r = point_distance(x, c);
        return spec.height * std::min(1.0, 2.0 * (1.0 - r / spec.width));
      }
    }
    return 0.0;
  });
  return psi;
}

SolveReport solve_obstacle(const ObstacleProblem& prob, double tol, int max_iter, double omega,
                           const ScalarField* initial_guess) {
  if (!(tol > 0.0)) throw RangeError("solve_obstacle: tol must be positive");
  if (!(omega > 0.0 && omega < 2.0)) throw RangeError("solve_obstacle: omega outside (0, 2)");
  if (!prob.mu.atoms_empty())
    throw RangeError("solve_obstacle: measure must be a density (mollify first)");
  const GridDomain& g = *prob.dom;

  // Admissibility of the obstacle against the boundary data.
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    if (g.cell_kind(i) != CellKind::Boundary) continue;
    const double bc = prob.boundary_values ? (*prob.boundary_values)[i] : 0.0;
    if (prob.psi[i] > bc)
      throw InvalidObstacle("solve_obstacle: obstacle exceeds the boundary values");
  }

  RelaxContext ctx = make_context(prob.dom, prob.coeff, prob.p, prob.eps_reg);
  set_unknowns(ctx, nullptr);

  ScalarField rhs = prob.mu.density() ? *prob.mu.density() : ScalarField(prob.dom);
  ctx.rhs = &rhs.values();
  ctx.obstacle = &prob.psi.values();

  for (std::size_t i = 0; i < g.cell_count(); ++i)
    if (g.cell_kind(i) == CellKind::Boundary)
      ctx.u[i] = prob.boundary_values ? (*prob.boundary_values)[i] : 0.0;
  for (std::size_t i : ctx.unknown_cells) {
    double v = initial_guess ? (*initial_guess)[i] : 0.0;
    ctx.u[i] = std::max(v, prob.psi[i]);
  }

  RelaxOutcome rr = relax(ctx, tol, max_iter, omega, /*record_energy=*/true);
  if (!rr.converged) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "solve_obstacle: no convergence after %d sweeps (residual %.3e, target %.3e)",
                  rr.sweeps, rr.residual, tol * rr.scale);
    throw NonConvergence(buf, rr.sweeps, rr.residual);
  }

  SolveReport rep;
  rep.u = ScalarField(prob.dom);
  rep.u.values() = ctx.u;
  rep.u.zero_exterior();
  rep.iterations = rr.sweeps;
  rep.residual = rr.residual;
  rep.residual_scale = rr.scale;
  rep.energy_trace = std::move(rr.energy_trace);
  rep.contact_mask.assign(g.cell_count(), 0);
  for (std::size_t i : ctx.unknown_cells)
    if (ctx.u[i] <= prob.psi[i]) {
      rep.contact_mask[i] = 1;
      ++rep.contact_count;
    }
  return rep;
}

SolaSequence sola_sequence(const ObstacleProblem& prob, int K, double tol,
                           std::optional<double> gamma, std::optional<double> r, int max_iter,
                           double omega) {
  if (K < 2) throw RangeError("sola_sequence: need K >= 2 levels");
  const int n = prob.dom->dim();
  SolaSequence seq;
  seq.gamma = gamma.value_or(0.9 * n * (prob.p - 1.0) / (n - 1.0));
  seq.r = r.value_or(0.9 * n * (prob.p - 1.0) / (n - prob.p));

  for (int k = 1; k <= K; ++k) {
    ObstacleProblem pk = prob;
    pk.mu = MeasureData(prob.dom, {}, prob.mu.mollify(k));
    const ScalarField* warm = seq.levels.empty() ? nullptr : &seq.levels.back().u;
    seq.levels.push_back(solve_obstacle(pk, tol, max_iter, omega, warm));
  }
  for (int k = 0; k + 1 < K; ++k) {
    const VectorField ga = gradient(seq.levels[k].u);
    const VectorField gb = gradient(seq.levels[k + 1].u);
    VectorField diff(prob.dom);
    for (std::size_t i = 0; i < ga.cells(); ++i)
      for (int d = 0; d < n; ++d) diff.comp(i, d) = gb.comp(i, d) - ga.comp(i, d);
    seq.grad_diff_lgamma.push_back(
        std::pow(lp_integral(magnitude_field(diff), seq.gamma), 1.0 / seq.gamma));
    ScalarField vd(prob.dom);
    for (std::size_t i = 0; i < vd.size(); ++i)
      vd[i] = seq.levels[k + 1].u[i] - seq.levels[k].u[i];
    seq.value_diff_lr.push_back(std::pow(lp_integral(vd, seq.r), 1.0 / seq.r));
  }
  return seq;
}

double regularization_gap(const ObstacleProblem& prob, double tol, int max_iter, double omega) {
  const SolveReport a = solve_obstacle(prob, tol, max_iter, omega);
  ObstacleProblem half = prob;
  half.eps_reg = 0.5 * prob.eps_reg;
  const SolveReport b = solve_obstacle(half, tol, max_iter, omega, &a.u);
  double gap = 0.0;
  for (std::size_t i = 0; i < a.u.size(); ++i)
    gap = std::max(gap, std::fabs(a.u[i] - b.u[i]));
  return gap;
}

namespace {

ScalarField solve_auxiliary(const ScalarField& bc, const Region& region,
                            const ObstacleProblem& prob, const ScalarField* rhs_field,
                            const double* const_coeff, double tol, int max_iter, double omega,
                            const char* who) {
  RelaxContext ctx = make_context(prob.dom, prob.coeff, prob.p, prob.eps_reg);
  if (const_coeff)
    for (double& c : ctx.cvals) c = *const_coeff;
  set_unknowns(ctx, &region.mask);
  if (ctx.unknown_cells.empty()) throw RangeError(std::string(who) + ": region has no cells");
  ctx.u = bc.values();
  if (rhs_field) ctx.rhs = &rhs_field->values();
  RelaxOutcome rr = relax(ctx, tol, max_iter, omega, /*record_energy=*/false);
  if (!rr.converged) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: no convergence after %d sweeps (residual %.3e)", who,
                  rr.sweeps, rr.residual);
    throw NonConvergence(buf, rr.sweeps, rr.residual);
  }
  ScalarField out(prob.dom);
  out.values() = ctx.u;
  out.zero_exterior();
  return out;
}

}  // namespace

ScalarField solve_obstacle_free(const ScalarField& u_bc, const ScalarField& psi,
                                const Region& region, const ObstacleProblem& prob, double tol,
                                int max_iter, double omega) {
  const ScalarField rhs = [&] {
    ScalarField f = div_A_of(psi, prob.coeff, prob.p, prob.eps_reg);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = -f[i];
    return f;
  }();
  return solve_auxiliary(u_bc, region, prob, &rhs, nullptr, tol, max_iter, omega,
                         "solve_obstacle_free");
}

ScalarField solve_homogeneous(const ScalarField& v_bc, const Region& region,
                              const ObstacleProblem& prob, double tol, int max_iter,
                              double omega) {
  return solve_auxiliary(v_bc, region, prob, nullptr, nullptr, tol, max_iter, omega,
                         "solve_homogeneous");
}

FrozenResult solve_frozen(const ScalarField& w_bc, const Region& region,
                          const ObstacleProblem& prob, double tol, int max_iter, double omega) {
  double cbar = 1.0;
  if (prob.coeff.kind == CoefficientKind::ScalarModulated) {
    double s = 0.0;
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < region.mask.size(); ++i)
      if (region.mask[i]) {
        s += prob.coeff.at(i);
        ++cnt;
      }
    cbar = s / static_cast<double>(cnt);
  }
  FrozenResult out;
  out.u = solve_auxiliary(w_bc, region, prob, nullptr, &cbar, tol, max_iter, omega,
                          "solve_frozen");
  const VectorField gu = gradient(out.u);
  if (region.center) {
    const Region half = Region::ball(out.u.domain_ptr(), *region.center, 0.5 * region.radius);
    out.grad_sup_half = sup_norm(gu, half);
  } else {
    out.grad_sup_half = sup_norm(gu, region);
  }
  return out;
}

double radial_constant(int n, double p) {
  if (!(p > 1.0 && p < n)) throw RangeError("radial_oracle: need 1 < p < n");
  const double sphere_area = 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
  return (p - 1.0) / (n - p) * std::pow(sphere_area, -1.0 / (p - 1.0));
}

RadialSample radial_oracle(int n, double p, const Point& x) {
  const double C = radial_constant(n, p);
  double r2 = 0.0;
  for (double xd : x) r2 += xd * xd;
  const double r = std::sqrt(r2);
  if (r == 0.0) throw OriginSingularity("radial_oracle: evaluation at the pole");
  const double kappa = (n - p) / (p - 1.0);
  RadialSample s;
  s.u = C * std::pow(r, -kappa);
  s.grad.resize(x.size());
  const double f = -kappa * C * std::pow(r, -kappa - 2.0);
  for (std::size_t d = 0; d < x.size(); ++d) s.grad[d] = f * x[d];
  return s;
}

}  // namespace oll
