#pragma once

#include <optional>
#include <vector>

#include "oll/measure.hpp"
#include "oll/structural.hpp"

namespace oll {

enum class ObstacleKind { None, Paraboloid, Cone, Plateau };

struct ObstacleSpec {
  ObstacleKind kind = ObstacleKind::None;
  Point center;
  double height = 0.0;
  double width = 1.0;
};

// Builds the obstacle field from the catalog. "none" is a deep constant
// obstacle that never binds.
ScalarField make_obstacle(const DomainPtr& dom, const ObstacleSpec& spec);

struct ObstacleProblem {
  DomainPtr dom;
  CoefficientField coeff;
  double p = 1.5;
  MeasureData mu;                // must be density-only when a solve runs
  ScalarField psi;               // obstacle; <= 0 on boundary cells
  double eps_reg = 1e-8;         // gradient smoothing |g|^2 -> |g|^2 + eps^2
  std::optional<ScalarField> boundary_values;  // default: zero on the rim
};

struct SolveReport {
  ScalarField u;
  int iterations = 0;
  double residual = 0.0;          // max complementarity residual at exit
  double residual_scale = 1.0;    // the data scale the tolerance was taken against
  std::vector<double> energy_trace;
  std::vector<std::uint8_t> contact_mask;
  std::size_t contact_count = 0;
};

// Projected relaxation for the discrete variational inequality. omega = 1
// runs cellwise nonlinear solves (safeguarded bisection on the monotone cell
// residual, then projection onto u >= psi); omega in (1,2) runs sweeps of
// projected SOR on the quadratic majorant with weights refreshed each sweep.
// Both keep the regularized energy trace nonincreasing and every iterate
// admissible. Stops when the complementarity residual drops below
// tol * scale(data); throws NonConvergence after max_iter sweeps.
SolveReport solve_obstacle(const ObstacleProblem& prob, double tol, int max_iter,
                           double omega = 1.0,
                           const ScalarField* initial_guess = nullptr);

struct SolaSequence {
  std::vector<SolveReport> levels;          // k = 1..K
  std::vector<double> grad_diff_lgamma;     // ||grad u_{k+1} - grad u_k||_{L^gamma}
  std::vector<double> value_diff_lr;        // ||u_{k+1} - u_k||_{L^r}
  double gamma = 0.0, r = 0.0;
};

// Mollify-solve loop: level k uses the bump radius diam/2^k. Warm starts
// each level from the previous one.
SolaSequence sola_sequence(const ObstacleProblem& prob, int K, double tol,
                           std::optional<double> gamma = std::nullopt,
                           std::optional<double> r = std::nullopt, int max_iter = 100000,
                           double omega = 1.0);

// Size of the smoothing error: max-abs difference between the solves at
// eps_reg and eps_reg / 2.
double regularization_gap(const ObstacleProblem& prob, double tol, int max_iter,
                          double omega = 1.0);

// Comparison problems of the cascade. Each solves on region-interior cells
// with Dirichlet values taken from the surrounding field.
ScalarField solve_obstacle_free(const ScalarField& u_bc, const ScalarField& psi,
                                const Region& region, const ObstacleProblem& prob,
                                double tol = 1e-9, int max_iter = 100000, double omega = 1.0);

ScalarField solve_homogeneous(const ScalarField& v_bc, const Region& region,
                              const ObstacleProblem& prob, double tol = 1e-9,
                              int max_iter = 100000, double omega = 1.0);

struct FrozenResult {
  ScalarField u;
  double grad_sup_half = 0.0;  // sup of |grad| over the half-radius ball
};

// Homogeneous problem with the coefficient replaced by its average over the
// region (constant in x).
FrozenResult solve_frozen(const ScalarField& w_bc, const Region& region,
                          const ObstacleProblem& prob, double tol = 1e-9,
                          int max_iter = 100000, double omega = 1.0);

struct RadialSample {
  double u = 0.0;
  std::vector<double> grad;
};

// Fundamental solution of the p-Laplacian with a unit point mass at the
// origin: u(x) = C |x|^{-(n-p)/(p-1)} with C chosen so the flux of
// |grad u|^{p-2} grad u through every sphere equals one.
RadialSample radial_oracle(int n, double p, const Point& x);
double radial_constant(int n, double p);

}  // namespace oll
