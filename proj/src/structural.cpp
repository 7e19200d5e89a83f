#include "oll/structural.hpp"

#include <cmath>

#include "oll/parallel.hpp"

namespace oll {

CoefficientField CoefficientField::pure() { return CoefficientField{}; }

CoefficientField CoefficientField::modulated(ScalarField cf) {
  CoefficientField out;
  out.kind = CoefficientKind::ScalarModulated;
  out.c = std::move(cf);
  return out;
}

double CoefficientField::c_min() const {
  if (kind == CoefficientKind::PureP) return 1.0;
  double m = std::numeric_limits<double>::infinity();
  const GridDomain& g = c->grid();
  for (std::size_t i = 0; i < c->size(); ++i)
    if (g.cell_kind(i) != CellKind::Exterior) m = std::min(m, (*c)[i]);
  return m;
}

double CoefficientField::c_max() const {
  if (kind == CoefficientKind::PureP) return 1.0;
  double m = 0.0;
  const GridDomain& g = c->grid();
  for (std::size_t i = 0; i < c->size(); ++i)
    if (g.cell_kind(i) != CellKind::Exterior) m = std::max(m, (*c)[i]);
  return m;
}

void CoefficientField::validate(double upsilon) const {
  if (kind == CoefficientKind::PureP) return;
  const double lo = c_min(), hi = c_max();
  if (!(lo > 0.0)) throw RangeError("CoefficientField: c must be positive");
  if (hi > upsilon) throw RangeError("CoefficientField: c exceeds the ellipticity constant");
}

std::vector<double> eval_A(const std::vector<double>& eta, double c, double p) {
  double m2 = 0.0;
  for (double e : eta) m2 += e * e;
  std::vector<double> out(eta.size(), 0.0);
  if (m2 == 0.0) return out;
  const double s = c * std::pow(m2, 0.5 * (p - 2.0));
  for (std::size_t d = 0; d < eta.size(); ++d) out[d] = s * eta[d];
  return out;
}

VectorField apply_A(const VectorField& v, const CoefficientField& coeff, double p,
                    double eps_reg) {
  VectorField out(v.domain_ptr());
  const int n = v.comps();
  for (std::size_t lin = 0; lin < v.cells(); ++lin) {
    double m2 = eps_reg * eps_reg;
    for (int d = 0; d < n; ++d) {
      const double c = v.comp(lin, d);
      m2 += c * c;
    }
    if (m2 == 0.0) continue;
    const double s = coeff.at(lin) * std::pow(m2, 0.5 * (p - 2.0));
    for (int d = 0; d < n; ++d) out.comp(lin, d) = s * v.comp(lin, d);
  }
  return out;
}

ScalarField div_A_of(const ScalarField& psi, const CoefficientField& coeff, double p,
                     double eps_reg) {
  // faces across the rim carry no flux; a constant obstacle has zero
  // divergence everywhere
  return divergence_omega(apply_A(gradient_omega(psi), coeff, p, eps_reg));
}

double phi_gap(const std::vector<double>& eta1, const std::vector<double>& eta2, double p) {
  double m = 0.0, d2 = 0.0;
  for (std::size_t d = 0; d < eta1.size(); ++d) {
    m += eta1[d] * eta1[d] + eta2[d] * eta2[d];
    const double t = eta1[d] - eta2[d];
    d2 += t * t;
  }
  if (m == 0.0) return 0.0;
  return std::pow(m, 0.5 * (p - 2.0)) * d2;
}

ScalarField phi_gap_field(const VectorField& v1, const VectorField& v2, double p) {
  if (!v1.same_domain(v2)) throw DomainMismatch("phi_gap_field: fields on different grids");
  ScalarField out(v1.domain_ptr());
  const int n = v1.comps();
  for (std::size_t lin = 0; lin < v1.cells(); ++lin) {
    if (v1.grid().cell_kind(lin) == CellKind::Exterior) continue;
    double m = 0.0, d2 = 0.0;
    for (int d = 0; d < n; ++d) {
      const double a = v1.comp(lin, d), b = v2.comp(lin, d);
      m += a * a + b * b;
      const double t = a - b;
      d2 += t * t;
    }
    out[lin] = m == 0.0 ? 0.0 : std::pow(m, 0.5 * (p - 2.0)) * d2;
  }
  return out;
}

double truncate(double z, double k) { return std::max(-k, std::min(z, k)); }

double truncate_shifted(double z, double k, double h) {
  const double az = std::fabs(z);
  if (az < h) return 0.0;
  const double sg = z < 0.0 ? -1.0 : 1.0;
  if (az <= k + h) return (az - h) * sg;
  return k * sg;
}

double bmo_seminorm(const CoefficientField& coeff, double r0, const GridDomain& grid, double p) {
  (void)p;
  if (r0 <= 0.0) throw RangeError("bmo_seminorm: r0 must be positive");
  if (coeff.kind == CoefficientKind::PureP) return 0.0;
  if (coeff.kind != CoefficientKind::ScalarModulated)
    throw UnsupportedCoefficient("bmo_seminorm: no closed-form eta reduction");

  const ScalarField& c = *coeff.c;
  const double h = grid.spacing();
  const int jmax = static_cast<int>(std::floor(r0 / h + 1e-12));
  if (jmax < 1) throw RangeError("bmo_seminorm: r0 below the mesh width");

  std::vector<std::size_t> omega_cells;
  for (std::size_t i = 0; i < grid.cell_count(); ++i)
    if (grid.cell_kind(i) != CellKind::Exterior) omega_cells.push_back(i);

  std::vector<double> per_center(omega_cells.size(), 0.0);
  parallel_for(omega_cells.size(), [&](std::size_t ci) {
    const Point xc = grid.cell_center(omega_cells[ci]);
    // Distances from this center to every domain cell, reused per radius.
    std::vector<double> dist(omega_cells.size());
    for (std::size_t j = 0; j < omega_cells.size(); ++j)
      dist[j] = point_distance(grid.cell_center(omega_cells[j]), xc);
    double best = 0.0;
    for (int j = 1; j <= jmax; ++j) {
      const double rho = j * h;
      double sum = 0.0;
      std::size_t cnt = 0;
      for (std::size_t m = 0; m < omega_cells.size(); ++m)
        if (dist[m] < rho) {
          sum += c[omega_cells[m]];
          ++cnt;
        }
      if (cnt == 0) continue;
      const double mean = sum / static_cast<double>(cnt);
      double osc = 0.0;
      for (std::size_t m = 0; m < omega_cells.size(); ++m)
        if (dist[m] < rho) osc += std::fabs(c[omega_cells[m]] - mean);
      best = std::max(best, osc / static_cast<double>(cnt));
    }
    per_center[ci] = best;
  });
  double out = 0.0;
  for (double v : per_center) out = std::max(out, v);
  return out;
}

}  // namespace oll
