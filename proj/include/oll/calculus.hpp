#pragma once

#include "oll/field.hpp"

namespace oll {

// Discrete calculus on cell fields. Integrals and level-set measures run
// over interior cells; the boundary rim carries Dirichlet data only.

// Forward differences per cell and axis, zero extension outside the array.
VectorField gradient(const ScalarField& u);

// Backward differences of the face values; exact adjoint of gradient, so
// sum(u * divergence(v)) == -sum over faces of v * gradient(u) for any
// fields (both sides zero-extended).
ScalarField divergence(const VectorField& v);

// Variants that only difference across faces between two domain cells.
// Solutions vanish on the boundary, so the zero extension is right for
// them; fields with nonzero boundary values (obstacles, coefficients) use
// these to avoid fake jumps at the rim.
VectorField gradient_omega(const ScalarField& u);
ScalarField divergence_omega(const VectorField& v);

ScalarField magnitude_field(const VectorField& v);

// |f|^e on interior+boundary cells.
ScalarField pow_abs_field(const ScalarField& f, double e);

// Mean of f over lattice cell centers in the open ball B_rho(center). The
// denominator counts every lattice point of the ambient grid in the ball, so
// zero extension outside the domain is built in. Throws EmptyBall when no
// lattice center falls inside.
double ball_average(const ScalarField& f, const Point& center, double rho);

// h^n times the number of interior cells with |f| > lambda.
double level_measure(const ScalarField& f, double lambda);

double integral(const ScalarField& f);                       // over interior cells
double lp_integral(const ScalarField& f, double power);      // int |f|^power
double lp_integral(const ScalarField& f, double power, const Region& region);
double region_mean_pow(const ScalarField& f, double power, const Region& region);
double region_mean_pow(const VectorField& v, double power, const Region& region);
double sup_norm(const VectorField& v, const Region& region);

double dot_cells(const ScalarField& a, const ScalarField& b);  // h^n sum a*b, all cells
double dot_faces(const VectorField& a, const VectorField& b);  // h^n sum over faces

}  // namespace oll
