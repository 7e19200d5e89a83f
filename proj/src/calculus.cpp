#include "oll/calculus.hpp"

#include <cmath>

namespace oll {

VectorField gradient(const ScalarField& u) {
  const GridDomain& g = u.grid();
  const int n = g.dim();
  const double h = g.spacing();
  VectorField v(u.domain_ptr());
  for (std::size_t lin = 0; lin < g.cell_count(); ++lin) {
    Index idx = g.multi(lin);
    for (int d = 0; d < n; ++d) {
      Index nb = idx;
      nb[d] += 1;
      const double up = g.in_array(nb) ? u[g.linear(nb)] : 0.0;
      v.comp(lin, d) = (up - u[lin]) / h;
    }
  }
  return v;
}

ScalarField divergence(const VectorField& v) {
  const GridDomain& g = v.grid();
  const int n = g.dim();
  const double h = g.spacing();
  ScalarField out(v.domain_ptr());
  for (std::size_t lin = 0; lin < g.cell_count(); ++lin) {
    Index idx = g.multi(lin);
    double s = 0.0;
    for (int d = 0; d < n; ++d) {
      Index nb = idx;
      nb[d] -= 1;
      const double lo = g.in_array(nb) ? v.comp(g.linear(nb), d) : 0.0;
      s += (v.comp(lin, d) - lo) / h;
    }
    out[lin] = s;
  }
  out.zero_exterior();
  return out;
}

VectorField gradient_omega(const ScalarField& u) {
  const GridDomain& g = u.grid();
  const int n = g.dim();
  const double h = g.spacing();
  VectorField v(u.domain_ptr());
  for (std::size_t lin = 0; lin < g.cell_count(); ++lin) {
    if (g.cell_kind(lin) == CellKind::Exterior) continue;
    Index idx = g.multi(lin);
    for (int d = 0; d < n; ++d) {
      Index nb = idx;
      nb[d] += 1;
      if (!g.in_array(nb)) continue;
      const std::size_t nl = g.linear(nb);
      if (g.cell_kind(nl) == CellKind::Exterior) continue;
      v.comp(lin, d) = (u[nl] - u[lin]) / h;
    }
  }
  return v;
}

ScalarField divergence_omega(const VectorField& v) {
  const GridDomain& g = v.grid();
  const int n = g.dim();
  const double h = g.spacing();
  ScalarField out(v.domain_ptr());
  for (std::size_t lin = 0; lin < g.cell_count(); ++lin) {
    if (g.cell_kind(lin) == CellKind::Exterior) continue;
    Index idx = g.multi(lin);
    double s = 0.0;
    for (int d = 0; d < n; ++d) {
      s += v.comp(lin, d);
      Index nb = idx;
      nb[d] -= 1;
      if (!g.in_array(nb)) continue;
      const std::size_t nl = g.linear(nb);
      if (g.cell_kind(nl) == CellKind::Exterior) continue;
      s -= v.comp(nl, d);
    }
    out[lin] = s / h;
  }
  return out;
}

ScalarField magnitude_field(const VectorField& v) {
  ScalarField out(v.domain_ptr());
  for (std::size_t lin = 0; lin < v.cells(); ++lin)
    if (v.grid().cell_kind(lin) != CellKind::Exterior) out[lin] = v.magnitude(lin);
  return out;
}

ScalarField pow_abs_field(const ScalarField& f, double e) {
  ScalarField out(f.domain_ptr());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.grid().cell_kind(i) != CellKind::Exterior)
      out[i] = f[i] == 0.0 ? 0.0 : std::pow(std::fabs(f[i]), e);
  return out;
}

double ball_average(const ScalarField& f, const Point& center, double rho) {
  if (rho <= 0.0) throw RangeError("ball_average: radius must be positive");
  const GridDomain& g = f.grid();
  const int n = g.dim();
  const double h = g.spacing();
  // Lattice index window covering the ball (unclipped).
  std::vector<long> lo(n), hi(n);
  for (int d = 0; d < n; ++d) {
    const double o = g.axis_origin(d);
    lo[d] = static_cast<long>(std::floor((center[d] - rho - o) / h - 0.5)) - 1;
    hi[d] = static_cast<long>(std::ceil((center[d] + rho - o) / h - 0.5)) + 1;
  }
  std::vector<long> it(lo);
  double sum = 0.0;
  long count = 0;
  Point y(n);
  Index idx(n);
  while (true) {
    bool in_arr = true;
    for (int d = 0; d < n; ++d) {
      y[d] = g.axis_origin(d) + (it[d] + 0.5) * h;
      if (it[d] < 0 || it[d] >= g.shape()[d]) in_arr = false;
    }
    double s2 = 0.0;
    for (int d = 0; d < n; ++d) {
      const double t = y[d] - center[d];
      s2 += t * t;
    }
    if (std::sqrt(s2) < rho) {
      ++count;
      if (in_arr) {
        for (int d = 0; d < n; ++d) idx[d] = static_cast<int>(it[d]);
        sum += f[g.linear(idx)];
      }
    }
    int d = n - 1;
    while (d >= 0) {
      if (++it[d] <= hi[d]) break;
      it[d] = lo[d];
      --d;
    }
    if (d < 0) break;
  }
  if (count == 0) throw EmptyBall("ball_average: no cell center inside the ball");
  return sum / static_cast<double>(count);
}

double level_measure(const ScalarField& f, double lambda) {
  if (lambda < 0.0) throw RangeError("level_measure: threshold must be nonnegative");
  const GridDomain& g = f.grid();
  std::size_t count = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (g.cell_kind(i) == CellKind::Interior && std::fabs(f[i]) > lambda) ++count;
  return static_cast<double>(count) * g.cell_volume();
}

double integral(const ScalarField& f) {
  const GridDomain& g = f.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (g.cell_kind(i) == CellKind::Interior) s += f[i];
  return s * g.cell_volume();
}

double lp_integral(const ScalarField& f, double power) {
  const GridDomain& g = f.grid();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (g.cell_kind(i) == CellKind::Interior && f[i] != 0.0)
      s += std::pow(std::fabs(f[i]), power);
  return s * g.cell_volume();
}

double lp_integral(const ScalarField& f, double power, const Region& region) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (region.mask[i] && f[i] != 0.0) s += std::pow(std::fabs(f[i]), power);
  return s * f.grid().cell_volume();
}

double region_mean_pow(const ScalarField& f, double power, const Region& region) {
  if (region.count == 0) throw RangeError("region_mean_pow: empty region");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (region.mask[i] && f[i] != 0.0) s += std::pow(std::fabs(f[i]), power);
  return s / static_cast<double>(region.count);
}

double region_mean_pow(const VectorField& v, double power, const Region& region) {
  if (region.count == 0) throw RangeError("region_mean_pow: empty region");
  double s = 0.0;
  for (std::size_t i = 0; i < v.cells(); ++i) {
    if (!region.mask[i]) continue;
    const double m = v.magnitude(i);
    if (m != 0.0) s += std::pow(m, power);
  }
  return s / static_cast<double>(region.count);
}

double sup_norm(const VectorField& v, const Region& region) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.cells(); ++i)
    if (region.mask[i]) m = std::max(m, v.magnitude(i));
  return m;
}

double dot_cells(const ScalarField& a, const ScalarField& b) {
  require_same_domain(a, b, "dot_cells");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * a.grid().cell_volume();
}

double dot_faces(const VectorField& a, const VectorField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.cells(); ++i)
    for (int d = 0; d < a.comps(); ++d) s += a.comp(i, d) * b.comp(i, d);
  return s * a.grid().cell_volume();
}

}  // namespace oll
