#pragma once

#include "oll/field.hpp"

namespace oll {

// Discretization of the radius supremum: integer multiples of h up to a cap.
// Ball averages on a lattice only change when the radius crosses a distance
// class, so multiples of h capture every change up to O(h).
struct RadiusLadder {
  double h = 0.0;
  std::vector<double> radii;  // strictly increasing, each equal to j*h

  static RadiusLadder multiples_of_h(const GridDomain& grid, double cap_factor = 3.0);
  std::size_t size() const { return radii.size(); }
};

// Fractional maximal operator: at each domain cell, max over ladder radii of
// rho^alpha times the ball average of f. The average counts every ambient
// lattice cell in the open ball (zero extension) and sums stored values in
// row-major order, so results are bit-for-bit reproducible against a direct
// enumeration. Evaluated on interior+boundary cells; exterior stays zero.
ScalarField fractional_maximal(const ScalarField& f, double alpha, const RadiusLadder& ladder,
                               int jobs = 0);

// Same with the supremum restricted to rho < R.
ScalarField fractional_maximal_cutoff(const ScalarField& f, double alpha, double R,
                                      const RadiusLadder& ladder, int jobs = 0);

// Supremum over rho >= R; pointwise max with the cutoff recovers the full
// operator.
ScalarField tail_maximal(const ScalarField& f, double alpha, double R,
                         const RadiusLadder& ladder, int jobs = 0);

// Empirical operator norm: the weak Lorentz norm of M_alpha f with exponent
// n*s/(n - alpha*s) divided by the L^s norm of f.
double weak_type_constant(const ScalarField& f, double s, double alpha);

}  // namespace oll
