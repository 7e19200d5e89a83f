#pragma once

#include <optional>
#include <vector>

#include "oll/calculus.hpp"
#include "oll/field.hpp"

namespace oll {

enum class CoefficientKind { PureP, ScalarModulated };

// Spatial part of the operator A(eta, x) = c(x) |eta|^{p-2} eta. The pure
// p-Laplacian has c == 1; the scalar-modulated family keeps c bounded in
// [c_min, c_max] with 0 < c_min <= c_max <= upsilon.
struct CoefficientField {
  CoefficientKind kind = CoefficientKind::PureP;
  std::optional<ScalarField> c;

  static CoefficientField pure();
  static CoefficientField modulated(ScalarField c);

  double at(std::size_t lin) const {
    return kind == CoefficientKind::PureP ? 1.0 : (*c)[lin];
  }
  double c_min() const;
  double c_max() const;
  void validate(double upsilon) const;
};

// A applied to a single vector; the zero vector maps to zero (continuous
// extension of the singular coefficient).
std::vector<double> eval_A(const std::vector<double>& eta, double c, double p);

// A applied per cell to face-staggered values; eps_reg smooths the
// singularity: |eta|^2 -> |eta|^2 + eps_reg^2.
VectorField apply_A(const VectorField& v, const CoefficientField& coeff, double p,
                    double eps_reg = 0.0);

// div A(grad psi) as a cell field, with the same discrete operators the
// solver uses.
ScalarField div_A_of(const ScalarField& psi, const CoefficientField& coeff, double p,
                     double eps_reg = 0.0);

// Gap function (|eta1|^2 + |eta2|^2)^{(p-2)/2} |eta1 - eta2|^2; both
// arguments zero yields zero (the limit along eta1 = eta2 -> 0).
double phi_gap(const std::vector<double>& eta1, const std::vector<double>& eta2, double p);
ScalarField phi_gap_field(const VectorField& v1, const VectorField& v2, double p);

double truncate(double z, double k);

// Shifted truncation: zero inside |z| < h, then linear up to level k.
// Satisfies truncate_shifted(z,k,h) == truncate(z - truncate(z,h), k).
double truncate_shifted(double z, double k, double h);

// sup over centers and radii <= r0 of the mean oscillation of the operator,
// normalized by |eta|^{p-1}. For the scalar-modulated family the eta
// supremum collapses to the mean oscillation of c, which is what is
// computed; averages are restricted to domain cells (c has no canonical
// extension outside). Pure p-Laplacian gives exactly zero.
double bmo_seminorm(const CoefficientField& coeff, double r0, const GridDomain& grid, double p);

}  // namespace oll
